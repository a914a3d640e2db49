#include "avector/dynamics2d.hpp"

#include <cmath>
#include <cstdio>

#include "avector/fft.hpp"
#include "avector/kernels.hpp"
#include "avector/spectral.hpp"

namespace avec
{

namespace kp = kernels::parallel;

namespace
{

void require_planar(const Grid &g)
{
  if (!g.is_planar())
  {
    throw StructuralError("reduced system needs a planar grid, got " + g.describe());
  }
}

void require_mean_zero(const ScalarField &f, const char *what)
{
  if (!f.is_mean_zero())
  {
    throw DomainError(std::string(what) + " must have zero mean");
  }
}

}  // namespace

ReducedModel::ReducedModel(const MultiplierSpec &spec, const Grid &planar_grid, bool dealias)
    : spec_(spec), grid_(planar_grid), dealias_(dealias), gamma_(symbol_table(spec, planar_grid))
{
  require_planar(grid_);
  const auto tables = ModeTables::for_grid(grid_);
  gamma_lap_.resize(gamma_.size());
  for (std::size_t i = 0; i < gamma_.size(); ++i)
  {
    gamma_lap_[i] = -tables->kmag[i] * tables->kmag[i] * gamma_[i];
  }
}

ScalarField ReducedModel::perp_dot_grad(const ScalarField &a, const ScalarField &b) const
{
  // ∇⊥a.∇b = -∂y a ∂x b + ∂x a ∂y b
  const auto ax = to_physical(derivative(a, 0));
  const auto ay = to_physical(derivative(a, 1));
  const auto bx = to_physical(derivative(b, 0));
  const auto by = to_physical(derivative(b, 1));
  PhysicalField t1(grid_), t2(grid_);
  kp::multiply(ay.values, bx.values, t1.values);
  kp::multiply(ax.values, by.values, t2.values);
  for (std::size_t i = 0; i < t1.values.size(); ++i)
  {
    t2.values[i] -= t1.values[i];
  }
  auto out = to_spectral(t2);
  // A Jacobian has zero mean; drop the round-off left in the zero mode.
  out[0] = Complex{};
  return dealias_ ? dealias(out) : out;
}

std::pair<ScalarField, ScalarField> ReducedModel::rhs(const ScalarField &bz,
                                                      const ScalarField &j) const
{
  require_same_grid(bz.grid(), grid_, "rhs_reduced");
  require_same_grid(j.grid(), grid_, "rhs_reduced");
  require_mean_zero(bz, "bz");
  require_mean_zero(j, "j");
  const ScalarField psi = apply_modes(gamma_, bz);
  ScalarField dbz = perp_dot_grad(psi, bz);
  dbz += perp_dot_grad(j, apply_modes(gamma_lap_, j));
  dbz *= -1.0;
  ScalarField dj = perp_dot_grad(psi, j);
  dj *= -1.0;
  return {std::move(dbz), std::move(dj)};
}

ScalarField ReducedModel::rhs_gsqg(const ScalarField &theta) const
{
  require_same_grid(theta.grid(), grid_, "rhs_gsqg");
  require_mean_zero(theta, "theta");
  ScalarField out = perp_dot_grad(apply_modes(gamma_, theta), theta);
  out *= -1.0;
  return out;
}

std::pair<ScalarField, ScalarField> rhs_reduced(const MultiplierSpec &spec,
                                                const ReducedState &state)
{
  return ReducedModel(spec, state.bz.grid()).rhs(state.bz, state.j);
}

ScalarField rhs_gsqg(const MultiplierSpec &spec, const ScalarField &theta)
{
  return ReducedModel(spec, theta.grid()).rhs_gsqg(theta);
}

VectorField embed_to_3d(const ReducedState &state, std::size_t nz)
{
  const Grid &g2 = state.bz.grid();
  require_planar(g2);
  require_same_grid(g2, state.j.grid(), "embed_to_3d");
  const Grid g3(g2.dim(0), g2.dim(1), nz);
  const ScalarField jx = derivative(state.j, 0);
  const ScalarField jy = derivative(state.j, 1);
  VectorField b(g3);
  for (std::size_t i = 0; i < g2.dim(0); ++i)
  {
    for (std::size_t j = 0; j < g2.dim(1); ++j)
    {
      const std::size_t src = g2.flat(i, j, 0);
      const std::size_t dst = g3.flat(i, j, 0);
      b[0][dst] = -jy[src];
      b[1][dst] = jx[src];
      b[2][dst] = state.bz[src];
    }
  }
  return b;
}

ReducedState restrict_to_2d(const VectorField &b)
{
  const Grid &g3 = b.grid();
  const Grid g2 = Grid::planar(g3.dim(0), g3.dim(1));
  const auto tables = ModeTables::for_grid(g2);
  ReducedState s{0.0, ScalarField(g2), ScalarField(g2)};
  for (std::size_t i = 0; i < g2.dim(0); ++i)
  {
    for (std::size_t j = 0; j < g2.dim(1); ++j)
    {
      const std::size_t src = g3.flat(i, j, 0);
      const std::size_t dst = g2.flat(i, j, 0);
      s.bz[dst] = b[2][src];
      const double kx = tables->k[0][dst], ky = tables->k[1][dst];
      const double k2 = kx * kx + ky * ky;
      if (k2 == 0.0)
      {
        continue;
      }
      // kx By - ky Bx = i |k|^2 j
      const Complex num = kx * b[1][src] - ky * b[0][src];
      s.j[dst] = Complex(num.imag(), -num.real()) / k2;
    }
  }
  return s;
}

std::vector<std::string> validate(const ReducedConfig &cfg)
{
  require_planar(cfg.grid);
  if (!(cfg.dt > 0.0))
  {
    throw ConfigError("time.dt must be positive");
  }
  if (!(cfg.t_end >= 0.0))
  {
    throw ConfigError("time.t_end must be non-negative");
  }
  if (cfg.output_every < 1)
  {
    throw ConfigError("output.every must be >= 1");
  }
  return cfg.multiplier.warnings();
}

ReducedStepper::ReducedStepper(const ReducedConfig &cfg)
    : cfg_(cfg), model_(cfg.multiplier, cfg.grid, cfg.dealias)
{
}

ReducedState ReducedStepper::step(const ReducedState &s) const { return step(s, cfg_.dt); }

ReducedState ReducedStepper::step(const ReducedState &s, double dt) const
{
  auto stage = [&](const ScalarField &base, const ScalarField &k, double h) {
    ScalarField out = base;
    out.axpy(h, k);
    return out;
  };
  const auto [b1, j1] = model_.rhs(s.bz, s.j);
  const auto [b2, j2] = model_.rhs(stage(s.bz, b1, 0.5 * dt), stage(s.j, j1, 0.5 * dt));
  const auto [b3, j3] = model_.rhs(stage(s.bz, b2, 0.5 * dt), stage(s.j, j2, 0.5 * dt));
  const auto [b4, j4] = model_.rhs(stage(s.bz, b3, dt), stage(s.j, j3, dt));

  auto combine = [&](const ScalarField &base, const ScalarField &k1, const ScalarField &k2,
                     const ScalarField &k3, const ScalarField &k4) {
    ScalarField acc = k1;
    acc.axpy(2.0, k2);
    acc.axpy(2.0, k3);
    acc += k4;
    ScalarField out = base;
    out.axpy(dt / 6.0, acc);
    return out;
  };
  ReducedState next{s.t + dt, combine(s.bz, b1, b2, b3, b4), combine(s.j, j1, j2, j3, j4)};
  for (const auto *f : {&next.bz, &next.j})
  {
    for (const auto &c : f->coeffs())
    {
      if (!std::isfinite(c.real()) || !std::isfinite(c.imag()))
      {
        throw Error("blow-up detected: non-finite coefficients in reduced run at t = " +
                    std::to_string(next.t));
      }
    }
  }
  return next;
}

ReducedRecord make_reduced_record(const MultiplierSpec &spec, const ReducedState &s)
{
  ReducedRecord r;
  r.t = s.t;
  const VectorField b = embed_to_3d(s, 4);
  r.E = energy(spec, b);
  r.l2_bz = l2_norm(s.bz);
  r.l2_j = l2_norm(s.j);
  r.y1 = y1_norm(b);
  r.maxV = max_velocity(spec, b);
  r.max_j = max_coeff(s.j);
  return r;
}

std::string reduced_csv_header() { return "t,E,L2_bz,L2_j,Y1,maxV,max_j"; }

std::string reduced_csv_row(const ReducedRecord &r)
{
  char buf[512];
  std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g", r.t, r.E, r.l2_bz,
                r.l2_j, r.y1, r.maxV, r.max_j);
  return buf;
}

ReducedState run_reduced(const ReducedConfig &cfg, const ReducedState &initial, ReducedSink &sink)
{
  for (const auto &w : validate(cfg))
  {
    sink.warning(w);
  }
  const ReducedStepper stepper(cfg);
  ReducedState state = initial;
  state.t = 0.0;
  long nsteps = static_cast<long>(std::llround(cfg.t_end / cfg.dt));
  if (std::abs(static_cast<double>(nsteps) * cfg.dt - cfg.t_end) > 1e-12 * std::max(1.0, cfg.t_end))
  {
    nsteps = static_cast<long>(std::ceil(cfg.t_end / cfg.dt));
  }
  sink.record(make_reduced_record(cfg.multiplier, state));
  if (cfg.snapshot_every > 0)
  {
    sink.snapshot(state, 0);
  }
  for (long n = 1; n <= nsteps; ++n)
  {
    const double target = n == nsteps ? cfg.t_end : static_cast<double>(n) * cfg.dt;
    state = stepper.step(state, target - state.t);
    state.t = target;
    if (n % cfg.output_every == 0 || n == nsteps)
    {
      sink.record(make_reduced_record(cfg.multiplier, state));
    }
    if (cfg.snapshot_every > 0 && (n % cfg.snapshot_every == 0 || n == nsteps))
    {
      sink.snapshot(state, static_cast<std::size_t>(n));
    }
  }
  return state;
}

}  // namespace avec
