#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>

#include <CLI11.hpp>

#include "avector/config.hpp"
#include "avector/dynamics2d.hpp"
#include "avector/dynamics3d.hpp"
#include "avector/estimates.hpp"
#include "avector/io.hpp"
#include "avector/kernels.hpp"
#include "avector/lagrangian.hpp"

namespace fs = std::filesystem;
using namespace avec;

namespace
{

constexpr int exit_ok = 0;
constexpr int exit_usage = 1;
constexpr int exit_blowup = 2;

struct Common
{
  std::string config;
  std::optional<std::uint64_t> seed;
  int threads = 0;
  std::string out = "out";
};

std::string now_utc()
{
  const auto t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

int resolve_threads(int flag)
{
  int n = flag;
  if (n <= 0)
  {
    if (const char *env = std::getenv("AVECTOR_THREADS"))
    {
      n = std::atoi(env);
    }
  }
  if (n > 0)
  {
    kernels::set_threads(n);
  }
  return kernels::threads();
}

std::string config_text(const Common &c)
{
  return c.config.empty() ? std::string() : read_text(c.config);
}

void add_common(CLI::App *app, Common &c)
{
  app->add_option("--config", c.config, "Config file (TOML subset)");
  app->add_option("--seed", c.seed, "Random seed (overrides the config)");
  app->add_option("--threads", c.threads, "Worker threads (fallback: AVECTOR_THREADS)");
  app->add_option("--out", c.out, "Output directory");
}

void warn(const std::string &w) { std::cerr << "warning: " << w << "\n"; }

RunManifest start_manifest(const std::string &command, const Common &c, const std::string &text,
                           std::uint64_t seed, int threads)
{
  RunManifest m;
  m.command = command;
  m.version = version_string();
  m.config_path = c.config;
  m.config_text = text;
  m.seed = seed;
  m.threads = threads;
  m.started = now_utc();
  return m;
}

void finish_manifest(RunManifest &m, const fs::path &dir, const std::string &status)
{
  m.status = status;
  m.finished = now_utc();
  write_text((dir / "manifest.json").string(), manifest_json(m));
}

std::string snapshot_name(std::size_t step)
{
  char buf[48];
  std::snprintf(buf, sizeof buf, "snapshot_%06zu.bin", step);
  return buf;
}

class FileSink3d : public RunSink
{
public:
  FileSink3d(const fs::path &dir, const SimConfig &cfg, RunManifest &manifest)
      : dir_(dir), manifest_(manifest), csv_((dir / "diagnostics.csv").string())
  {
    if (!csv_)
    {
      throw Error("cannot write " + (dir / "diagnostics.csv").string());
    }
    csv_ << csv_header(cfg.hs_orders) << "\n";
    manifest_.files.push_back("diagnostics.csv");
  }

  void record(const DiagnosticsRecord &r) override
  {
    last_ = r;
    csv_ << csv_row(r) << "\n";
    csv_.flush();
  }

  void snapshot(const SimState &s, std::size_t step) override
  {
    const std::string name = snapshot_name(step);
    write_snapshot((dir_ / name).string(), s.B);
    manifest_.files.push_back(name);
    manifest_.snapshots.push_back({name, step, s.t, last_ ? last_->int_y1 : 0.0});
  }

  void warning(const std::string &w) override { warn(w); }

private:
  fs::path dir_;
  RunManifest &manifest_;
  std::ofstream csv_;
  std::optional<DiagnosticsRecord> last_;
};

class FileSink2d : public ReducedSink
{
public:
  FileSink2d(const fs::path &dir, RunManifest &manifest)
      : dir_(dir), manifest_(manifest), csv_((dir / "diagnostics.csv").string())
  {
    if (!csv_)
    {
      throw Error("cannot write " + (dir / "diagnostics.csv").string());
    }
    csv_ << reduced_csv_header() << "\n";
    manifest_.files.push_back("diagnostics.csv");
  }

  void record(const ReducedRecord &r) override
  {
    csv_ << reduced_csv_row(r) << "\n";
    csv_.flush();
  }

  void snapshot(const ReducedState &s, std::size_t step) override
  {
    const std::string name = snapshot_name(step);
    write_reduced_snapshot((dir_ / name).string(), s);
    manifest_.files.push_back(name);
    manifest_.snapshots.push_back({name, step, s.t, 0.0});
  }

  void warning(const std::string &w) override { warn(w); }

private:
  fs::path dir_;
  RunManifest &manifest_;
  std::ofstream csv_;
};

int cmd_run3d(const Common &c)
{
  const std::string text = config_text(c);
  Run3dConfig cfg = parse_run3d(text);
  if (c.seed)
  {
    cfg.seed = *c.seed;
  }
  const int threads = resolve_threads(c.threads);
  const fs::path dir(c.out);
  fs::create_directories(dir);
  RunManifest manifest = start_manifest("run3d", c, text, cfg.seed, threads);
  manifest.multiplier = cfg.sim.multiplier.to_string();
  manifest.hs_orders = cfg.sim.hs_orders;
  const VectorField b0 = make_initial(cfg.initial, cfg.sim.grid, cfg.seed);
  int code = exit_ok;
  {
    FileSink3d sink(dir, cfg.sim, manifest);
    try
    {
      run(cfg.sim, b0, sink);
    }
    catch (const BlowupError &e)
    {
      std::cerr << e.what() << "\n";
      const std::string name = "blowup_last_valid.bin";
      write_snapshot((dir / name).string(), e.last_valid().B);
      manifest.files.push_back(name);
      code = exit_blowup;
    }    catch (...)
    {
      finish_manifest(manifest, dir, "error");
      throw;
    }
  }
  finish_manifest(manifest, dir, code == exit_ok ? "ok" : "blowup");
  return code;
}

int cmd_run2d(const Common &c)
{
  const std::string text = config_text(c);
  Run2dConfig cfg = parse_run2d(text);
  if (c.seed)
  {
    cfg.seed = *c.seed;
  }
  const int threads = resolve_threads(c.threads);
  const fs::path dir(c.out);
  fs::create_directories(dir);
  RunManifest manifest = start_manifest("run2d", c, text, cfg.seed, threads);
  manifest.multiplier = cfg.sim.multiplier.to_string();
  const ReducedState s0 = make_initial_reduced(cfg.initial, cfg.sim.grid, cfg.seed);
  int code = exit_ok;
  {
    FileSink2d sink(dir, manifest);
    try
    {
      run_reduced(cfg.sim, s0, sink);
    }
    catch (const Error &e)
    {
      if (std::string(e.what()).rfind("blow-up", 0) != 0)
      {
        finish_manifest(manifest, dir, "error");
        throw;
      }
      std::cerr << e.what() << "\n";
      code = exit_blowup;
    }
    catch (...)
    {
      finish_manifest(manifest, dir, "error");
      throw;
    }
  }
  finish_manifest(manifest, dir, code == exit_ok ? "ok" : "blowup");
  return code;
}

struct VerifyFlags
{
  std::string estimate;
  std::string spec;
  std::optional<std::size_t> samples;
  std::optional<double> a;
  std::optional<double> s;
  std::optional<double> decay;
  std::vector<std::size_t> resolutions;
  bool write_csv = false;
};

int cmd_verify(const Common &c, const VerifyFlags &f)
{
  const std::string text = config_text(c);
  VerifyConfig cfg = parse_verify(text);
  if (!f.estimate.empty())
  {
    cfg.estimate = f.estimate;
  }
  if (!f.spec.empty())
  {
    cfg.spec = MultiplierSpec::parse(f.spec);
  }
  if (f.samples)
  {
    cfg.ensemble.samples = *f.samples;
  }
  if (f.a)
  {
    cfg.a = *f.a;
  }
  if (f.s)
  {
    cfg.s = *f.s;
  }
  if (f.decay)
  {
    cfg.ensemble.decay = *f.decay;
  }
  if (!f.resolutions.empty())
  {
    cfg.ensemble.resolutions = f.resolutions;
  }
  if (c.seed)
  {
    cfg.ensemble.seed = *c.seed;
  }
  if (cfg.estimate == "embedding" && f.resolutions.empty())
  {
    cfg.ensemble.resolutions = {16};
  }
  resolve_threads(c.threads);
  for (const auto &w : cfg.warnings)
  {
    warn(w);
  }
  EstimateReport rep;
  if (cfg.estimate == "comm1")
  {
    rep = verify_comm1(cfg.spec, cfg.ensemble);
  }
  else if (cfg.estimate == "comm3")
  {
    rep = verify_comm3(cfg.a, cfg.ensemble);
  }
  else if (cfg.estimate == "comm4")
  {
    rep = verify_comm4(cfg.s, cfg.ensemble);
  }
  else if (cfg.estimate == "embedding")
  {
    rep = verify_embedding(cfg.s, cfg.ensemble);
  }
  else if (cfg.estimate == "log_sobolev")
  {
    rep = log_sobolev_ensemble(cfg.s, cfg.ensemble);
  }
  else
  {
    throw ConfigError("unknown estimate '" + cfg.estimate +
                      "' (comm1, comm3, comm4, embedding, log_sobolev)");
  }
  if (f.write_csv)
  {
    const fs::path dir(c.out);
    fs::create_directories(dir);
    write_text((dir / (cfg.estimate + ".csv")).string(), rep.csv() + rep.summary() + "\n");
  }
  std::cout << rep.csv() << rep.summary() << "\n";
  return exit_ok;
}

std::vector<Vec3> random_seeds(std::size_t n, std::uint64_t seed)
{
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, Grid::period);
  std::vector<Vec3> pts(n);
  for (auto &p : pts)
  {
    p = {u(rng), u(rng), u(rng)};
  }
  return pts;
}

class CollectSink : public RunSink
{
public:
  void record(const DiagnosticsRecord &) override {}
  void snapshot(const SimState &s, std::size_t) override { states.push_back(s); }
  void warning(const std::string &w) override { warn(w); }
  std::vector<SimState> states;
};

int cmd_advect(const Common &c)
{
  const std::string text = config_text(c);
  AdvectConfig cfg = parse_advect(text);
  if (c.seed)
  {
    cfg.run.seed = *c.seed;
  }
  const int threads = resolve_threads(c.threads);
  const fs::path dir(c.out);
  fs::create_directories(dir);
  RunManifest manifest = start_manifest("advect", c, text, cfg.run.seed, threads);
  manifest.multiplier = cfg.run.sim.multiplier.to_string();

  const VectorField b0 = make_initial(cfg.run.initial, cfg.run.sim.grid, cfg.run.seed);
  std::optional<ClosedCurve> curve;
  std::vector<Vec3> seeds;
  if (!cfg.curve_path.empty())
  {
    curve = ClosedCurve{read_points_csv(cfg.curve_path)};
    seeds = curve->samples();
  }
  else if (!cfg.seeds_path.empty())
  {
    seeds = read_points_csv(cfg.seeds_path);
  }
  else
  {
    seeds = random_seeds(cfg.seeds, cfg.run.seed);
  }

  VectorField bt = b0;
  FlowMap flow;
  if (cfg.steady)
  {
    flow = advect(FieldTrajectory::steady(cfg.run.sim.multiplier, b0, cfg.sampling), seeds,
                  cfg.t_end, cfg.dt);
  }
  else
  {
    SimConfig sim = cfg.run.sim;
    sim.dt = 0.5 * cfg.dt;
    sim.t_end = cfg.t_end;
    sim.output_every = 1;
    sim.snapshot_every = 1;
    CollectSink sink;
    try
    {
      run(sim, b0, sink);
    }
    catch (const BlowupError &e)
    {
      std::cerr << e.what() << "\n";
      finish_manifest(manifest, dir, "blowup");
      return exit_blowup;
    }
    flow = advect(FieldTrajectory::from_snapshots(sim.multiplier, sink.states, cfg.sampling),
                  seeds, cfg.t_end, cfg.dt);
    bt = sink.states.back().B;
  }
  write_text((dir / "flow.csv").string(), flow_csv(flow));
  manifest.files.push_back("flow.csv");

  char buf[256];
  std::snprintf(buf, sizeof buf, "t=%.17g seeds=%zu cauchy_residual=%.6e max_det_defect=%.6e",
                flow.t, flow.seeds.size(), cauchy_residual(flow, b0, bt, cfg.sampling),
                max_det_defect(flow));
  std::string summary = buf;
  if (curve)
  {
    const auto rep = transport_integral_curve(flow, *curve, bt, cfg.sampling);
    std::snprintf(buf, sizeof buf, " max_misalignment=%.6e checked=%zu skipped=%zu",
                  rep.max_misalignment, rep.checked, rep.skipped);
    summary += buf;
  }
  std::cout << summary << "\n";
  write_text((dir / "advect_summary.txt").string(), summary + "\n");
  manifest.files.push_back("advect_summary.txt");
  finish_manifest(manifest, dir, "ok");
  return exit_ok;
}

int cmd_diagnose(const std::string &snapshot, std::string manifest_path)
{
  const fs::path snap(snapshot);
  if (manifest_path.empty())
  {
    manifest_path = (snap.parent_path() / "manifest.json").string();
  }
  const RunManifest m = parse_manifest(read_text(manifest_path));
  const SnapshotEntry *entry = nullptr;
  for (const auto &s : m.snapshots)
  {
    if (s.file == snap.filename().string())
    {
      entry = &s;
    }
  }
  if (!entry)
  {
    throw ConfigError("snapshot '" + snap.filename().string() + "' is not listed in " +
                      manifest_path);
  }
  if (snapshot_magic(snapshot) == "AVEC2")
  {
    const Run2dConfig cfg = parse_run2d(m.config_text);
    ReducedState s = read_reduced_snapshot(snapshot);
    s.t = entry->t;
    std::cout << reduced_csv_header() << "\n"
              << reduced_csv_row(make_reduced_record(cfg.sim.multiplier, s)) << "\n";
    return exit_ok;
  }
  const Run3dConfig cfg = parse_run3d(m.config_text);
  const VectorField b = read_snapshot(snapshot);
  DiagnosticsRecord r = make_record(cfg.sim.multiplier, b, entry->t, cfg.sim.hs_orders);
  r.int_y1 = entry->int_y1;
  std::cout << csv_header(cfg.sim.hs_orders) << "\n" << csv_row(r) << "\n";
  return exit_ok;
}

}  // namespace

int main(int argc, char **argv)
{
  CLI::App app{"avector: pseudo-spectral toolkit for active vector systems on the torus"};
  app.require_subcommand(1);
  app.set_version_flag("--version", version_string());

  Common run3d_opts, run2d_opts, verify_opts, advect_opts;
  auto *run3d = app.add_subcommand("run3d", "Evolve the 3D system");
  add_common(run3d, run3d_opts);
  auto *run2d = app.add_subcommand("run2d", "Evolve the reduced (bz, j) system");
  add_common(run2d, run2d_opts);

  VerifyFlags vf;
  auto *verify = app.add_subcommand("verify", "Empirical check of the commutator and embedding inequalities");
  add_common(verify, verify_opts);
  verify->add_option("--estimate", vf.estimate, "comm1, comm3, comm4, embedding or log_sobolev");
  verify->add_option("--spec", vf.spec, "Multiplier for comm1, e.g. power:1.5");
  verify->add_option("--samples", vf.samples, "Ensemble size");
  verify->add_option("--a", vf.a, "Exponent a for comm3");
  verify->add_option("--s", vf.s, "Order s for comm4, embedding and log_sobolev");
  verify->add_option("--decay", vf.decay, "Coefficient decay exponent of the random ensemble");
  verify->add_option("--resolutions", vf.resolutions, "Grid sizes")->delimiter(',');
  verify->add_flag("--write-csv", vf.write_csv, "Also write <estimate>.csv into --out");

  auto *advect_cmd = app.add_subcommand("advect", "Particle trajectories, Cauchy formula and integral curves");
  add_common(advect_cmd, advect_opts);

  std::string snapshot, manifest;
  auto *diagnose = app.add_subcommand("diagnose", "Recompute the diagnostics record of a snapshot");
  diagnose->add_option("snapshot", snapshot, "Snapshot file")->required();
  diagnose->add_option("--manifest", manifest, "Manifest (default: manifest.json next to the snapshot)");

  try
  {
    app.parse(argc, argv);
  }
  catch (const CLI::ParseError &e)
  {
    const int code = app.exit(e);
    return code == 0 ? exit_ok : exit_usage;
  }

  try
  {
    if (*run3d)
    {
      return cmd_run3d(run3d_opts);
    }
    if (*run2d)
    {
      return cmd_run2d(run2d_opts);
    }
    if (*verify)
    {
      return cmd_verify(verify_opts, vf);
    }
    if (*advect_cmd)
    {
      return cmd_advect(advect_opts);
    }
    if (*diagnose)
    {
      return cmd_diagnose(snapshot, manifest);
    }
  }
  catch (const ConfigError &e)
  {
    std::cerr << "config error: " << e.what() << "\n";
    return exit_usage;
  }
  catch (const std::exception &e)
  {
    std::cerr << "error: " << e.what() << "\n";
    return exit_usage;
  }
  return exit_usage;
}
