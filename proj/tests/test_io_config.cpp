#include <doctest.h>

#include <algorithm>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <variant>

#include "avector/config.hpp"
#include "avector/diagnostics.hpp"
#include "avector/errors.hpp"
#include "avector/io.hpp"
#include "avector/spectral.hpp"
#include "avector/toml_lite.hpp"
#include "support.hpp"

using namespace avec;
using namespace avec::test;
namespace fs = std::filesystem;

namespace
{

fs::path scratch(const std::string &name)
{
  const fs::path dir = fs::temp_directory_path() / "avector_unit_tests";
  fs::create_directories(dir);
  return dir / name;
}

std::string bytes(const fs::path &p) { return read_text(p.string()); }

}  // namespace

TEST_CASE("vector snapshots round trip bit for bit")
{
  const Grid g(8, 10, 12);
  const VectorField b = random_vector(g, 3);
  const auto path = scratch("b.bin").string();
  write_snapshot(path, b);
  CHECK(snapshot_magic(path) == "AVEC1");
  CHECK(fs::file_size(path) == 5 + 24 + 3 * g.size() * 16);
  CHECK(read_snapshot(path) == b);
}

TEST_CASE("snapshot layout is little-endian dims followed by (re, im) pairs")
{
  const Grid g(4);
  VectorField b(g);
  b[2].set(1, 0, 0, Complex(0.5, -2.0));
  const auto path = scratch("layout.bin").string();
  write_snapshot(path, b);
  const std::string s = bytes(path);
  CHECK(s.substr(0, 5) == "AVEC1");
  CHECK(static_cast<unsigned char>(s[5]) == 4);
  CHECK(s[6] == 0);
  const std::size_t off = 5 + 24 + (2 * g.size() + g.flat(1, 0, 0)) * 16;
  double re = 0.0, im = 0.0;
  std::memcpy(&re, s.data() + off, 8);
  std::memcpy(&im, s.data() + off + 8, 8);
  CHECK(re == 0.5);
  CHECK(im == -2.0);
}

TEST_CASE("reduced snapshots round trip")
{
  const Grid g = Grid::planar(16, 8);
  RandomFieldOptions opt;
  opt.seed = 2;
  const ReducedState s{0.7, random_scalar_field(g, opt), random_scalar_field(g, {3, 1, 2.0, 0, 0.5})};
  const auto path = scratch("r.bin").string();
  write_reduced_snapshot(path, s);
  CHECK(snapshot_magic(path) == "AVEC2");
  const ReducedState back = read_reduced_snapshot(path);
  CHECK(back.t == 0.0);
  CHECK(back.bz == s.bz);
  CHECK(back.j == s.j);
  CHECK_THROWS_AS(read_snapshot(path), FormatError);
}

TEST_CASE("corrupt snapshots are rejected")
{
  const Grid g(4);
  const auto good = scratch("good.bin");
  write_snapshot(good.string(), random_vector(g, 1));
  const std::string s = bytes(good);

  const auto bad_magic = scratch("bad_magic.bin");
  write_text(bad_magic.string(), "XXXX1" + s.substr(5));
  CHECK_THROWS_AS(read_snapshot(bad_magic.string()), FormatError);
  CHECK_THROWS_AS(snapshot_magic(bad_magic.string()), FormatError);

  const auto truncated = scratch("truncated.bin");
  write_text(truncated.string(), s.substr(0, s.size() - 7));
  CHECK_THROWS_AS(read_snapshot(truncated.string()), FormatError);

  const auto trailing = scratch("trailing.bin");
  write_text(trailing.string(), s + "x");
  CHECK_THROWS_AS(read_snapshot(trailing.string()), FormatError);

  const auto tiny = scratch("tiny.bin");
  write_text(tiny.string(), "AV");
  CHECK_THROWS_AS(snapshot_magic(tiny.string()), FormatError);
  CHECK_THROWS_AS(read_snapshot(scratch("missing.bin").string()), Error);
}

TEST_CASE("point files")
{
  const auto path = scratch("pts.csv").string();
  const std::vector<Vec3> pts{{0.0, 1.0, 2.0}, {0.25, -1.5, 3.0}, {1.0 / 3.0, 2.0, 4.0}};
  write_points_csv(path, pts);
  CHECK(read_points_csv(path) == pts);
  write_text(path, "s,x,y,z\n0,1,2,3\n0.5,1,2,3\n0.25,1,2,3\n");
  CHECK_THROWS_AS(read_points_csv(path), FormatError);
  write_text(path, "a,b,c\n0,1,2,3\n");
  CHECK_THROWS_AS(read_points_csv(path), FormatError);
  write_text(path, "s,x,y,z\n0,1,2\n");
  CHECK_THROWS_AS(read_points_csv(path), FormatError);
}

TEST_CASE("flow CSV has one row per seed")
{
  const FlowMap f = identity_map({{1.0, 2.0, 3.0}, {4.0, 5.0, 6.0}});
  const std::string csv = flow_csv(f);
  CHECK(csv.rfind("seed,ax,ay,az,x,y,z,F11,F12,F13,F21,F22,F23,F31,F32,F33,det\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 3);
}

TEST_CASE("TOML subset")
{
  const auto t = toml::parse(R"(# comment
mode = "run3d"   # trailing
seed = 42
[grid]
dims = [16, 16,
        8]
[multiplier]
kind = "power"
a = 1.5e0
flag = true
inline = { x = 1, y = "two" }
)");
  CHECK(t.at("mode").str == "run3d");
  CHECK(t.at("seed").integer == 42);
  const auto &grid = *t.at("grid").table;
  CHECK(grid.at("dims").array->size() == 3);
  const auto &m = *t.at("multiplier").table;
  CHECK(m.at("a").as_number() == 1.5);
  CHECK(m.at("flag").boolean);
  CHECK(m.at("inline").table->at("y").str == "two");
  CHECK_THROWS_AS(toml::parse("a = \"open\n"), FormatError);
  CHECK_THROWS_AS(toml::parse("a = 1\na = 2\n"), FormatError);
  CHECK_THROWS_AS(toml::parse("[s]\n[s]\n"), FormatError);
  CHECK_THROWS_AS(toml::parse("a = 1 2\n"), FormatError);
  try
  {
    toml::parse("x = 1\ny = [1,\n2,\nz]\n");
    FAIL("expected FormatError");
  }
  catch (const FormatError &e)
  {
    CHECK(std::string(e.what()).find("line 4") != std::string::npos);
  }
}

TEST_CASE("minimal 3D config takes the documented defaults")
{
  const Run3dConfig c = parse_run3d("");
  CHECK(c.sim.grid == Grid(32));
  CHECK(c.sim.multiplier == MultiplierSpec::power(2.0));
  CHECK(c.sim.dt == 1e-3);
  CHECK(c.sim.t_end == 0.0);
  CHECK_FALSE(c.sim.dissipation.has_value());
  CHECK(c.initial.preset == "abc");
  CHECK(c.seed == 1);
  CHECK(c.warnings.empty());
  CHECK(std::holds_alternative<Run3dConfig>(parse_config_text("[grid]\nn = 16\n")));
}

TEST_CASE("3D config fields")
{
  const Run3dConfig c = parse_run3d(R"(
seed = 9
[grid]
dims = [16, 8, 12]
[multiplier]
kind = "power_log"
a = 1.5
alpha1 = 2
[time]
dt = 0.002
t_end = 0.1
[dissipation]
nu = 0.1
b = 1.5
[output]
every = 5
snapshot_every = 10
hs = [2.5]
[initial]
preset = "random"
decay = 4
rms = 0.5
)");
  CHECK(c.seed == 9);
  CHECK(c.sim.grid == Grid(16, 8, 12));
  CHECK(c.sim.multiplier == MultiplierSpec::power_log(1.5, 2.0));
  CHECK(c.sim.dt == 0.002);
  REQUIRE(c.sim.dissipation.has_value());
  CHECK(c.sim.dissipation->b == 1.5);
  CHECK(c.sim.output_every == 5);
  CHECK(c.sim.snapshot_every == 10);
  CHECK(c.sim.hs_orders == std::vector<double>{2.5});
  CHECK(c.initial.preset == "random");
  const VectorField b = make_initial(c.initial, c.sim.grid, c.seed);
  CHECK(rms(b) == doctest::Approx(0.5));
  CHECK(divergence_defect(b) < 1e-14);
}

TEST_CASE("config errors")
{
  try
  {
    parse_run3d("[grid]\nn = 16\nsize = 3\n[bogus]\nx = 1\n");
    FAIL("expected ConfigError");
  }
  catch (const ConfigError &e)
  {
    const std::string msg = e.what();
    CHECK(msg.find("grid.size") != std::string::npos);
    CHECK(msg.find("bogus") != std::string::npos);
  }
  CHECK_THROWS_AS(parse_run3d("[dissipation]\nnu = 0.1\nb = 0\n"), ConfigError);
  CHECK_THROWS_AS(parse_run3d("[time]\ndt = -1\n"), ConfigError);
  CHECK_THROWS_AS(parse_run3d("[grid]\nn = 15\n"), ConfigError);
  CHECK_THROWS_AS(parse_run3d("[grid]\nn = \"big\"\n"), ConfigError);
  CHECK_THROWS_AS(parse_run3d("[multiplier]\nkind = \"cubic\"\n"), ConfigError);
  CHECK_THROWS_AS(parse_run3d("[initial]\npreset = \"snapshot\"\n"), ConfigError);
  CHECK_THROWS_AS(parse_run3d("mode = \n"), ConfigError);
  CHECK_THROWS_AS(parse_config_text("mode = \"sing\"\n"), ConfigError);
  CHECK_THROWS_AS(parse_run2d("[initial]\npreset = \"abc\"\n"), ConfigError);
}

TEST_CASE("well-posedness regime warning")
{
  const Run3dConfig c = parse_run3d("[multiplier]\na = 0.5\n[dissipation]\nnu = 0.1\nb = 0.3\n");
  REQUIRE(c.warnings.size() == 1);
  CHECK(c.warnings[0].find("1 - a < b") != std::string::npos);
  CHECK(parse_run3d("[multiplier]\na = 0.5\n[dissipation]\nnu = 0.1\nb = 1\n").warnings.empty());
}

TEST_CASE("2D, verify and advect configs")
{
  const auto any2 = parse_config_text("mode = \"run2d\"\n[grid]\ndims = [32, 16]\n[initial]\npreset = \"single_mode\"\nk = [1, 2]\n");
  REQUIRE(std::holds_alternative<Run2dConfig>(any2));
  const auto &c2 = std::get<Run2dConfig>(any2);
  CHECK(c2.sim.grid == Grid::planar(32, 16));
  const ReducedState s = make_initial_reduced(c2.initial, c2.sim.grid, c2.seed);
  CHECK(std::abs(s.bz.at(1, 2, 0) - Complex(0.5)) < 1e-15);
  CHECK(max_coeff(s.j) == 0.0);

  const VerifyConfig v = parse_verify("[verify]\nestimate = \"comm3\"\na = 0.5\nsamples = 10\nresolutions = [8]\n");
  CHECK(v.estimate == "comm3");
  CHECK(v.a == 0.5);
  CHECK(v.ensemble.samples == 10);
  CHECK(v.ensemble.resolutions == std::vector<std::size_t>{8});
  CHECK_THROWS_AS(parse_verify("[verify]\nestimate = \"comm9\"\n"), ConfigError);
  CHECK(parse_verify("[verify]\nspec = \"power:1\"\n").spec == MultiplierSpec::power(1.0));

  const AdvectConfig a = parse_advect("[advect]\nseeds = 5\ninterpolation = \"tricubic\"\nrefine = 2\nsteady = true\n");
  CHECK(a.seeds == 5);
  CHECK(a.sampling.kind == Interpolation::tricubic);
  CHECK(a.sampling.refine == 2);
  CHECK(a.steady);
  CHECK_THROWS_AS(parse_advect("[advect]\ninterpolation = \"spline\"\n"), ConfigError);
}

TEST_CASE("snapshot preset loads the file")
{
  const Grid g(8);
  const VectorField b = random_solenoidal(g, 5);
  const auto path = scratch("init.bin").string();
  write_snapshot(path, b);
  const Run3dConfig c = parse_run3d("[grid]\nn = 8\n[initial]\npreset = \"snapshot\"\npath = \"" + path + "\"\n");
  CHECK(make_initial(c.initial, c.sim.grid, c.seed) == b);
  const Run3dConfig wrong = parse_run3d("[grid]\nn = 16\n[initial]\npreset = \"snapshot\"\npath = \"" + path + "\"\n");
  CHECK_THROWS_AS(make_initial(wrong.initial, wrong.sim.grid, wrong.seed), Error);
}

TEST_CASE("manifest round trip")
{
  RunManifest m;
  m.command = "run3d";
  m.version = version_string();
  m.config_path = "a.toml";
  m.config_text = "[grid]\nn = 8\n";
  m.multiplier = "power:1.5";
  m.hs_orders = {2.5, 3.0};
  m.seed = 18446744073709551615ull;
  m.threads = 4;
  m.started = "2026-01-01T00:00:00Z";
  m.finished = "2026-01-01T00:00:01Z";
  m.status = "ok";
  m.files = {"diagnostics.csv", "snapshot_000000.bin"};
  m.snapshots = {{"snapshot_000000.bin", 0, 0.0, 0.0}, {"snapshot_000010.bin", 10, 0.1, 1.2345678901234567}};
  const RunManifest back = parse_manifest(manifest_json(m));
  CHECK(back.seed == m.seed);
  CHECK(back.config_text == m.config_text);
  CHECK(back.hs_orders == m.hs_orders);
  CHECK(back.files == m.files);
  REQUIRE(back.snapshots.size() == 2);
  CHECK(back.snapshots[1].int_y1 == m.snapshots[1].int_y1);
  CHECK(back.snapshots[1].t == 0.1);
  CHECK(back.snapshots[1].step == 10);
  CHECK(manifest_json(back) == manifest_json(m));
  CHECK_THROWS_AS(parse_manifest("{not json"), FormatError);
}

TEST_CASE("run2d defaults to random data")
{
  const Run2dConfig c = parse_run2d("");
  CHECK(c.initial.preset == "random");
  CHECK(c.sim.grid == Grid::planar(64, 64));
}
