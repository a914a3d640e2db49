#include <doctest.h>

#include "avector/diagnostics.hpp"
#include "avector/dynamics3d.hpp"
#include "avector/errors.hpp"
#include "avector/presets.hpp"
#include "avector/spectral.hpp"
#include "support.hpp"

using namespace avec;
using namespace avec::test;

namespace
{

struct Collect : RunSink
{
  void record(const DiagnosticsRecord &r) override { records.push_back(r); }
  void snapshot(const SimState &s, std::size_t step) override
  {
    snapshots.push_back(s);
    steps.push_back(step);
  }
  void warning(const std::string &w) override { warnings.push_back(w); }
  std::vector<DiagnosticsRecord> records;
  std::vector<SimState> snapshots;
  std::vector<std::size_t> steps;
  std::vector<std::string> warnings;
};

SimConfig config(std::size_t n, double a)
{
  SimConfig c;
  c.grid = Grid(n);
  c.multiplier = MultiplierSpec::power(a);
  c.dt = 1e-3;
  return c;
}

}  // namespace

TEST_CASE("steady states have zero right-hand side")
{
  const Grid g(16);
  for (double a : {1.0, 1.5, 2.0})
  {
    const auto spec = MultiplierSpec::power(a);
    CHECK(max_coeff(rhs_inviscid(spec, VectorField(g))) == 0.0);
    CHECK(max_coeff(rhs_inviscid(spec, abc_field(g))) < 1e-14);
    CHECK(max_coeff(rhs_inviscid(spec, single_mode(g, 1, 0, 0, 2))) < 1e-14);
    CHECK(max_coeff(rhs_stretch_form(spec, abc_field(g, 0.3, -1.0, 2.0))) < 1e-14);
    CHECK(max_coeff(rhs_stretch_form(spec, single_mode(g, 1, 0, 0, 2))) < 1e-14);
  }
}

TEST_CASE("conservative and stretching forms agree")
{
  const Grid g(16);
  for (std::uint64_t s = 1; s <= 3; ++s)
  {
    const VectorField b = random_solenoidal(g, s);
    for (double a : {1.0, 2.0})
    {
      const auto spec = MultiplierSpec::power(a);
      CHECK(max_coeff_diff(rhs_inviscid(spec, b), rhs_stretch_form(spec, b)) < 1e-10);
    }
  }
}

TEST_CASE("right-hand side stays solenoidal and Hermitian")
{
  const Grid g(16);
  const VectorField b = random_solenoidal(g, 4);
  const VectorField r = rhs_inviscid(MultiplierSpec::power(1.5), b);
  CHECK(divergence_defect(r) < 1e-12);
  CHECK(r.hermitian_defect() < 1e-15);
  CHECK(is_band_limited(r));
}

TEST_CASE("model rejects fields with a mean")
{
  const Grid g(8);
  VectorField b(g);
  b[0][0] = 1.0;
  CHECK_THROWS_AS(rhs_inviscid(MultiplierSpec::power(1.0), b), DomainError);
}

TEST_CASE("RK4 keeps steady states and zero")
{
  SimConfig c = config(16, 1.5);
  const SimState s0{0.0, abc_field(c.grid)};
  const SimState s1 = step_rk4(c, s0);
  CHECK(s1.t == doctest::Approx(1e-3));
  CHECK(max_coeff_diff(s1.B, s0.B) < 1e-12);
  const SimState z = step_rk4(c, SimState{0.0, VectorField(c.grid)});
  CHECK(max_coeff(z.B) == 0.0);
}

TEST_CASE("RK4 local error converges at fifth order")
{
  SimConfig c = config(16, 1.5);
  RandomFieldOptions opt;
  opt.seed = 3;
  opt.decay = 2.0;
  opt.rms = 2.0;
  const SimState s0{0.0, random_solenoidal_field(c.grid, opt)};
  const Stepper stepper(c);
  auto reference = [&](double h) {
    SimState s = s0;
    for (int i = 0; i < 16; ++i)
    {
      s = stepper.step(s, h / 16.0);
    }
    return s.B;
  };
  const double h = 0.02;
  const double e1 = max_coeff_diff(stepper.step(s0, h).B, reference(h));
  const double e2 = max_coeff_diff(stepper.step(s0, h / 2.0).B, reference(h / 2.0));
  REQUIRE(e2 > 1e-14);
  const double ratio = e1 / e2;
  CHECK(ratio > 24.0);
  CHECK(ratio < 40.0);
}

TEST_CASE("dissipative stepper")
{
  SimConfig c = config(16, 1.0);
  c.dissipation = Dissipation{0.3, 1.7};
  SimState s{0.0, single_mode(c.grid, 1, 0, 0, 2)};
  const VectorField b0 = s.B;
  for (int i = 0; i < 50; ++i)
  {
    s = step_dissipative(c, s);
  }
  CHECK(max_coeff_diff(s.B, std::exp(-0.3 * s.t) * b0) < 1e-13);

  SimConfig inviscid = config(16, 1.5);
  SimConfig zero_nu = inviscid;
  zero_nu.dissipation = Dissipation{0.0, 2.0};
  const SimState r0{0.0, random_solenoidal(inviscid.grid, 5)};
  CHECK(max_coeff_diff(step_dissipative(zero_nu, r0).B, step_rk4(inviscid, r0).B) <= 1e-13);
  CHECK_THROWS_AS(step_dissipative(inviscid, r0), ConfigError);
}

TEST_CASE("reconstruct_u")
{
  const Grid g(16);
  CHECK(max_coeff_diff(reconstruct_u(abc_field(g)), abc_field(g)) < 1e-15);
  const VectorField expect(ScalarField(g),
                           from_function(g, [](double x, double, double) { return std::sin(x); }),
                           ScalarField(g));
  CHECK(max_coeff_diff(reconstruct_u(single_mode(g, 1, 0, 0, 2)), expect) < 1e-15);
  CHECK(max_coeff(reconstruct_u(VectorField(g))) == 0.0);
  const VectorField b = random_solenoidal(g, 2);
  CHECK(max_coeff_diff(curl(reconstruct_u(b)), b) < 1e-14);
}

TEST_CASE("q_residual")
{
  const Grid g(16);
  const auto spec = MultiplierSpec::power(1.5);
  const VectorField abc = abc_field(g);
  CHECK(q_residual(spec, abc, rhs_inviscid(spec, abc)) < 1e-12);
  const VectorField sm = single_mode(g, 1, 0, 0, 2);
  CHECK(q_residual(spec, sm, rhs_inviscid(spec, sm)) < 1e-10);
  CHECK(q_residual(spec, VectorField(g), VectorField(g)) == 0.0);
  const VectorField b = random_solenoidal(g, 8);
  CHECK(q_residual(spec, b, rhs_inviscid(spec, b)) < 1e-10);
  // A wrong time derivative is detected.
  CHECK(q_residual(spec, b, 2.0 * rhs_inviscid(spec, b)) > 1e-3);
}

TEST_CASE("config validation")
{
  SimConfig c = config(16, 1.5);
  CHECK(validate(c).empty());
  c.dt = 0.0;
  CHECK_THROWS_AS(validate(c), ConfigError);
  c = config(16, 1.5);
  c.dissipation = Dissipation{0.1, 0.0};
  CHECK_THROWS_AS(validate(c), ConfigError);
  c = config(16, 0.5);
  c.dissipation = Dissipation{0.1, 0.3};
  const auto w = validate(c);
  REQUIRE(w.size() == 1);
  CHECK(w[0].find("1 - a < b") != std::string::npos);
  c.dissipation = Dissipation{0.1, 0.6};
  CHECK(validate(c).empty());
  c = config(16, 1.5);
  c.output_every = 2;
  c.snapshot_every = 3;
  CHECK_THROWS_AS(validate(c), ConfigError);
}

TEST_CASE("run emits records, snapshots and lands on t_end")
{
  SimConfig c = config(16, 1.5);
  Collect sink;
  const VectorField b0 = abc_field(c.grid);
  const SimState s0 = run(c, b0, sink);
  CHECK(s0.t == 0.0);
  CHECK(s0.B == b0);
  CHECK(sink.records.size() == 1);

  c.t_end = 0.0105;
  c.output_every = 2;
  c.snapshot_every = 4;
  Collect sink2;
  const SimState s1 = run(c, b0, sink2);
  CHECK(s1.t == doctest::Approx(0.0105).epsilon(1e-15));
  CHECK(sink2.records.front().t == 0.0);
  CHECK(sink2.records.back().t == doctest::Approx(0.0105).epsilon(1e-15));
  CHECK(sink2.steps == std::vector<std::size_t>{0, 4, 8, 11});
  CHECK(max_coeff_diff(s1.B, b0) < 1e-10);
}

TEST_CASE("steady run over 100 steps")
{
  SimConfig c = config(16, 2.0);
  c.t_end = 0.1;
  c.output_every = 10;
  Collect sink;
  const VectorField b0 = abc_field(c.grid);
  const SimState s = run(c, b0, sink);
  CHECK(max_coeff_diff(s.B, b0) <= 1e-10);
  CHECK(sink.records.back().int_y1 == doctest::Approx(0.1 * y1_norm(b0)).epsilon(1e-14));
}

TEST_CASE("short inviscid run conserves energy and helicity")
{
  SimConfig c = config(16, 1.5);
  c.t_end = 0.05;
  c.output_every = 50;
  RandomFieldOptions opt;
  opt.seed = 12;
  opt.rms = 0.5;
  const VectorField b0 = random_solenoidal_field(c.grid, opt);
  Collect sink;
  const SimState s = run(c, b0, sink);
  const double e0 = energy(c.multiplier, b0), e1 = energy(c.multiplier, s.B);
  const double h0 = helicity(b0), h1 = helicity(s.B);
  CHECK(std::abs(e1 - e0) / e0 < 1e-8);
  CHECK(std::abs(h1 - h0) / (1.0 + std::abs(h0)) < 1e-8);
  CHECK(max_coeff_diff(s.B, b0) > 1e-6);
}

TEST_CASE("Y1 ceiling raises BlowupError with the last valid state")
{
  SimConfig c = config(16, 1.5);
  c.t_end = 0.01;
  const VectorField b0 = abc_field(c.grid);
  c.y1_ceiling = 0.5 * y1_norm(b0);
  Collect sink;
  try
  {
    run(c, b0, sink);
    FAIL("expected BlowupError");
  }
  catch (const BlowupError &e)
  {
    CHECK(e.last_valid().t == 0.0);
    CHECK(std::string(e.what()).find("blow-up") != std::string::npos);
  }
  CHECK(sink.records.size() == 1);
}
