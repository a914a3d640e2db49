#include <doctest.h>

#include <numbers>
#include <random>

#include "avector/dynamics3d.hpp"
#include "avector/errors.hpp"
#include "avector/lagrangian.hpp"
#include "avector/presets.hpp"
#include "support.hpp"

using namespace avec;
using namespace avec::test;

namespace
{

std::vector<Vec3> uniform_seeds(std::size_t n, std::uint64_t seed)
{
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, two_pi);
  std::vector<Vec3> out(n);
  for (auto &p : out)
  {
    p = {u(rng), u(rng), u(rng)};
  }
  return out;
}

double dist(const Vec3 &a, const Vec3 &b)
{
  return std::hypot(a[0] - b[0], a[1] - b[1], a[2] - b[2]);
}

SamplingOptions exact() { return {Interpolation::exact, 1}; }

// Straight curve x(s) = origin + s * winding, s = i / m, i = 0..m.
ClosedCurve line(const Vec3 &origin, const Vec3 &winding, std::size_t m)
{
  ClosedCurve c;
  for (std::size_t i = 0; i <= m; ++i)
  {
    const double s = static_cast<double>(i) / static_cast<double>(m);
    c.points.push_back({origin[0] + s * winding[0], origin[1] + s * winding[1], origin[2] + s * winding[2]});
  }
  return c;
}

}  // namespace

TEST_CASE("interpolation names")
{
  CHECK(parse_interpolation("trilinear") == Interpolation::trilinear);
  CHECK(parse_interpolation("tricubic") == Interpolation::tricubic);
  CHECK(parse_interpolation("exact") == Interpolation::exact);
  CHECK(to_string(Interpolation::tricubic) == "tricubic");
  CHECK_THROWS_AS(parse_interpolation("quintic"), ConfigError);
}

TEST_CASE("sampler accuracy by interpolation kind")
{
  const Grid g(16);
  const VectorField f = random_vector(g, 3);
  const auto pts = uniform_seeds(40, 2);
  auto worst = [&](const SamplingOptions &o) {
    const FieldSampler s(f, true, o);
    double e = 0.0;
    for (const auto &p : pts)
    {
      const Vec3 v = s.value(p);
      for (int d = 0; d < 3; ++d)
      {
        e = std::max(e, std::abs(v[d] - evaluate(f[d], p[0], p[1], p[2])));
      }
    }
    return e;
  };
  const double ex = worst(exact());
  const double cubic = worst({Interpolation::tricubic, 1});
  const double cubic2 = worst({Interpolation::tricubic, 2});
  const double lin = worst({Interpolation::trilinear, 1});
  CHECK(ex < 1e-13);
  CHECK(cubic < lin);
  CHECK(cubic2 < cubic / 8.0);

  const FieldSampler s(f, true, exact());
  const Vec3 p{1.0, 2.0, 3.0};
  const Mat3 j = s.gradient(p);
  const double h = 1e-5;
  for (int i = 0; i < 3; ++i)
  {
    for (int d = 0; d < 3; ++d)
    {
      Vec3 a = p, b = p;
      a[d] += h;
      b[d] -= h;
      const double fd = (s.value(a)[i] - s.value(b)[i]) / (2.0 * h);
      CHECK(j[3 * i + d] == doctest::Approx(fd).epsilon(1e-6));
    }
  }
  const FieldSampler no_grad(f, false, exact());
  CHECK_THROWS_AS(no_grad.gradient(p), Error);
}

TEST_CASE("zero time and zero field give the identity map")
{
  const Grid g(16);
  const auto seeds = uniform_seeds(10, 1);
  const VectorField abc = abc_field(g);
  const auto traj = FieldTrajectory::steady(MultiplierSpec::power(1.5), abc);
  const FlowMap id = advect(traj, seeds, 0.0, 1e-3);
  CHECK(id.positions == seeds);
  for (const auto &m : id.grads)
  {
    CHECK(m == Mat3{1, 0, 0, 0, 1, 0, 0, 0, 1});
  }
  CHECK(cauchy_residual(id, abc, abc) == 0.0);

  const auto still = advect(FieldTrajectory::steady(MultiplierSpec::power(1.5), VectorField(g)), seeds, 0.1, 1e-2);
  for (std::size_t i = 0; i < seeds.size(); ++i)
  {
    CHECK(dist(still.positions[i], seeds[i]) == 0.0);
  }
  CHECK(max_det_defect(still) == 0.0);
}

TEST_CASE("one-mode flow has a closed form")
{
  // B = (0, 0, cos x), V = (0, -sin x, 0): X = (x, y - t sin x, z), ∇X lower-triangular.
  const Grid g(16);
  const VectorField b = single_mode(g, 1, 0, 0, 2);
  const auto seeds = uniform_seeds(20, 5);
  const double t = 0.5;
  const FlowMap flow = advect(FieldTrajectory::steady(MultiplierSpec::power(1.0), b, exact()), seeds, t, 1e-2);
  for (std::size_t i = 0; i < seeds.size(); ++i)
  {
    const Vec3 &a = seeds[i];
    CHECK(dist(flow.positions[i], {a[0], a[1] - t * std::sin(a[0]), a[2]}) < 1e-12);
    const Mat3 &m = flow.grads[i];
    CHECK(m[1] == 0.0);
    CHECK(m[2] == 0.0);
    CHECK(m[5] == 0.0);
    CHECK(m[3] == doctest::Approx(-t * std::cos(a[0])).epsilon(1e-12));
  }
  CHECK(cauchy_residual(flow, b, b, exact()) <= 1e-6);
  CHECK(max_det_defect(flow) < 1e-13);
}

TEST_CASE("steady ABC trajectories match an independent fine-step integration")
{
  const Grid g(16);
  const VectorField b = abc_field(g);
  const auto seeds = uniform_seeds(8, 3);
  const double t = 0.2;
  const FlowMap flow = advect(FieldTrajectory::steady(MultiplierSpec::power(1.5), b, exact()), seeds, t, 1e-3);
  // V = -B for |k| = 1.
  auto v = [](const Vec3 &x) {
    return Vec3{-(std::sin(x[2]) + std::cos(x[1])), -(std::sin(x[0]) + std::cos(x[2])),
                -(std::sin(x[1]) + std::cos(x[0]))};
  };
  for (std::size_t i = 0; i < seeds.size(); ++i)
  {
    Vec3 x = seeds[i];
    const int n = 4000;
    const double h = t / n;
    for (int s = 0; s < n; ++s)
    {
      auto add = [](const Vec3 &a, const Vec3 &k, double c) { return Vec3{a[0] + c * k[0], a[1] + c * k[1], a[2] + c * k[2]}; };
      const Vec3 k1 = v(x), k2 = v(add(x, k1, h / 2)), k3 = v(add(x, k2, h / 2)), k4 = v(add(x, k3, h));
      for (int d = 0; d < 3; ++d)
      {
        x[d] += h / 6.0 * (k1[d] + 2.0 * k2[d] + 2.0 * k3[d] + k4[d]);
      }
    }
    CHECK(dist(flow.positions[i], x) <= 1e-6);
  }
  CHECK(max_det_defect(flow) <= 1e-5);
}

TEST_CASE("seeds shifted by a period move in lockstep")
{
  const Grid g(16);
  const VectorField b = random_solenoidal(g, 4);
  const auto seeds = uniform_seeds(5, 9);
  std::vector<Vec3> shifted;
  for (const auto &s : seeds)
  {
    shifted.push_back({s[0] + two_pi, s[1], s[2] - two_pi});
  }
  const auto traj = FieldTrajectory::steady(MultiplierSpec::power(1.5), b, {Interpolation::trilinear, 1});
  const FlowMap a = advect(traj, seeds, 0.1, 1e-2);
  const FlowMap c = advect(traj, shifted, 0.1, 1e-2);
  for (std::size_t i = 0; i < seeds.size(); ++i)
  {
    CHECK(c.positions[i][0] - a.positions[i][0] == doctest::Approx(two_pi).epsilon(1e-13));
    CHECK(c.positions[i][1] - a.positions[i][1] == doctest::Approx(0.0).epsilon(1e-13));
    CHECK(c.positions[i][2] - a.positions[i][2] == doctest::Approx(-two_pi).epsilon(1e-13));
  }
}

TEST_CASE("snapshot trajectories need every stage time")
{
  SimConfig c;
  c.grid = Grid(16);
  c.multiplier = MultiplierSpec::power(1.5);
  c.dt = 5e-3;
  RandomFieldOptions opt;
  opt.seed = 2;
  opt.rms = 0.5;
  Stepper stepper(c);
  std::vector<SimState> states{SimState{0.0, random_solenoidal_field(c.grid, opt)}};
  for (int i = 0; i < 8; ++i)
  {
    states.push_back(stepper.step(states.back()));
  }
  const auto traj = FieldTrajectory::from_snapshots(c.multiplier, states, exact());
  CHECK_FALSE(traj.is_steady());
  CHECK_NOTHROW(traj.velocity_at(0.01));
  CHECK_THROWS_AS(traj.velocity_at(0.0075), DomainError);
  const auto seeds = uniform_seeds(4, 1);
  CHECK_NOTHROW(advect(traj, seeds, 0.04, 1e-2));
  CHECK_THROWS_AS(advect(traj, seeds, 0.04, 5e-3), DomainError);
  CHECK_THROWS_AS(advect(traj, seeds, 0.035, 1e-2), ConfigError);
  std::swap(states[1], states[2]);
  CHECK_THROWS_AS(FieldTrajectory::from_snapshots(c.multiplier, states), DomainError);
}

TEST_CASE("Cauchy formula along an evolving run")
{
  // The truncated dynamics satisfy the Cauchy formula only while the spectrum stays
  // inside the dealiasing band, so the data occupy |k| <= 3 on a 32^3 grid.
  SimConfig c;
  c.grid = Grid(32);
  c.multiplier = MultiplierSpec::power(1.5);
  c.dt = 1e-3;
  RandomFieldOptions opt;
  opt.seed = 6;
  opt.decay = 3.0;
  opt.band = 3;
  opt.rms = 0.5;
  const Stepper stepper(c);
  std::vector<SimState> states{SimState{0.0, random_solenoidal_field(c.grid, opt)}};
  for (int i = 0; i < 40; ++i)
  {
    states.push_back(stepper.step(states.back()));
  }
  const auto traj = FieldTrajectory::from_snapshots(c.multiplier, states, exact());
  const auto seeds = uniform_seeds(10, 8);
  const FlowMap flow = advect(traj, seeds, 0.04, 2e-3);
  const double res = cauchy_residual(flow, states.front().B, states.back().B, exact());
  CHECK(res < 1e-8);
  CHECK(max_det_defect(flow) < 1e-10);
}

TEST_CASE("closed curves")
{
  const ClosedCurve c = line({0.3, 0.2, 0.0}, {0.0, 0.0, two_pi}, 16);
  const Vec3 w = c.winding();
  CHECK(w[2] == doctest::Approx(two_pi));
  CHECK(c.samples().size() == 16);
  ClosedCurve open = c;
  open.points.back()[1] += 0.1;
  CHECK_THROWS_AS(open.winding(), DomainError);
  CHECK_THROWS_AS(line({0, 0, 0}, {0, 0, two_pi}, 3).winding(), DomainError);
  CHECK(det3(Mat3{2, 0, 0, 1, 3, 0, 4, 5, 6}) == 36.0);
}

TEST_CASE("vertical field lines stay vertical under the one-mode flow")
{
  const Grid g(16);
  const VectorField b = single_mode(g, 1, 0, 0, 2);
  const ClosedCurve curve = line({0.3, 1.0, 0.0}, {0.0, 0.0, two_pi}, 32);
  const auto at0 = curve_alignment(curve.samples(), curve.winding(), b, exact());
  CHECK(at0.max_misalignment < 1e-12);
  CHECK(at0.checked == 32);
  const auto traj = FieldTrajectory::steady(MultiplierSpec::power(1.0), b, exact());
  const FlowMap flow = advect(traj, curve.samples(), 0.5, 1e-2);
  const auto rep = transport_integral_curve(flow, curve, b, exact());
  CHECK(rep.max_misalignment <= 1e-6);
  CHECK_THROWS_AS(transport_integral_curve(advect(traj, uniform_seeds(32, 1), 0.5, 1e-2), curve, b, exact()),
                  DomainError);
}

TEST_CASE("ABC field line stays an integral curve")
{
  // With B = C = 0 the ABC field is (sin z, cos z, 0); at z = π/4 its lines are diagonals
  // closing after a (2π, 2π, 0) translation.
  const Grid g(16);
  const VectorField b = abc_field(g, 1.0, 0.0, 0.0);
  const ClosedCurve curve = line({0.0, 0.5, std::numbers::pi / 4.0}, {two_pi, two_pi, 0.0}, 64);
  CHECK(curve_alignment(curve.samples(), curve.winding(), b, exact()).max_misalignment < 1e-10);
  std::vector<double> mis;
  for (std::size_t refine : {1, 2})
  {
    const SamplingOptions o{Interpolation::tricubic, refine};
    const auto traj = FieldTrajectory::steady(MultiplierSpec::power(1.5), b, o);
    const FlowMap flow = advect(traj, curve.samples(), 0.2, 1e-2 / static_cast<double>(refine));
    mis.push_back(transport_integral_curve(flow, curve, b, o).max_misalignment);
  }
  CHECK(mis[0] < 1e-10);
  CHECK(mis[1] < 1e-10);
}

TEST_CASE("steady ABC Cauchy residual converges under refinement")
{
  const Grid g(16);
  const VectorField b = abc_field(g);
  const auto seeds = uniform_seeds(20, 7);
  std::vector<double> res;
  for (std::size_t refine : {1, 2})
  {
    const SamplingOptions o{Interpolation::trilinear, refine};
    const auto traj = FieldTrajectory::steady(MultiplierSpec::power(1.5), b, o);
    const FlowMap flow = advect(traj, seeds, 0.1, 1e-2 / static_cast<double>(refine));
    res.push_back(cauchy_residual(flow, b, b, o));
  }
  CHECK(res[1] < res[0] / 3.0);
}
