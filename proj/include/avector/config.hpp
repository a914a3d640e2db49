#ifndef AVECTOR_CONFIG_HPP
#define AVECTOR_CONFIG_HPP

#include <array>
#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "avector/dynamics2d.hpp"
#include "avector/dynamics3d.hpp"
#include "avector/estimates.hpp"
#include "avector/lagrangian.hpp"

namespace avec
{

//
// Initial data. Presets:
//   abc          (A sin z + C cos y, B sin x + A cos z, C sin y + B cos x)
//   single_mode  amplitude cos(k.x) e_axis            (2D: bz = amplitude cos(k.x), j = 0)
//   random       solenoidal random field, rms `rms`   (2D: bz with rms `rms`, j with `j_rms`)
//   snapshot     read from `path` (AVEC1, or AVEC2 in 2D)
//
struct InitialSpec
{
  std::string preset = "abc";
  double A = 1.0, B = 1.0, C = 1.0;
  std::array<int, 3> k{1, 0, 0};
  int axis = 2;
  double amplitude = 1.0;
  double decay = 3.0;
  int band = 0;
  double rms = 1.0;
  double j_rms = 0.0;
  std::string path;
};

VectorField make_initial(const InitialSpec &init, const Grid &grid, std::uint64_t seed);
ReducedState make_initial_reduced(const InitialSpec &init, const Grid &planar, std::uint64_t seed);

struct Run3dConfig
{
  SimConfig sim;
  InitialSpec initial;
  std::uint64_t seed = 1;
  std::vector<std::string> warnings;
};

struct Run2dConfig
{
  ReducedConfig sim;
  InitialSpec initial;
  std::uint64_t seed = 1;
  std::vector<std::string> warnings;
};

struct VerifyConfig
{
  std::string estimate = "comm1";  // comm1 | comm3 | comm4 | embedding | log_sobolev
  MultiplierSpec spec = MultiplierSpec::power(1.5);
  double a = 1.0;
  double s = 3.0;
  EnsembleOptions ensemble;
  std::vector<std::string> warnings;
};

struct AdvectConfig
{
  Run3dConfig run;
  // Random seed points (uniform in the box) unless seeds_path is given.
  std::size_t seeds = 100;
  std::string seeds_path;
  std::string curve_path;
  double t_end = 0.1;
  double dt = 1e-3;
  SamplingOptions sampling;
  // Freeze the initial field instead of evolving it alongside the particles.
  bool steady = false;
};

using AnyConfig = std::variant<Run3dConfig, Run2dConfig, VerifyConfig, AdvectConfig>;

// The top-level key `mode` (run3d, run2d, verify, advect; default run3d) selects the type.
// Unknown sections or keys and out-of-range values throw ConfigError.
AnyConfig parse_config_text(const std::string &text);
AnyConfig parse_config(const std::string &path);

Run3dConfig parse_run3d(const std::string &text);
Run2dConfig parse_run2d(const std::string &text);
VerifyConfig parse_verify(const std::string &text);
AdvectConfig parse_advect(const std::string &text);

struct SnapshotEntry
{
  std::string file;
  std::size_t step = 0;
  double t = 0.0;
  double int_y1 = 0.0;
};

struct RunManifest
{
  std::string command;
  std::string version;
  std::string config_path;
  std::string config_text;
  std::string multiplier;
  std::vector<double> hs_orders;
  std::uint64_t seed = 0;
  int threads = 1;
  std::string started;
  std::string finished;
  std::string status;
  std::vector<std::string> files;
  std::vector<SnapshotEntry> snapshots;
};

std::string manifest_json(const RunManifest &m);
RunManifest parse_manifest(const std::string &json_text);

std::string version_string();

}  // namespace avec

#endif  // AVECTOR_CONFIG_HPP
