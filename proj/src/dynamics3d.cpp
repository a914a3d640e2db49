#include "avector/dynamics3d.hpp"

#include <cmath>
#include <sstream>

#include "avector/spectral.hpp"

namespace avec
{

std::vector<std::string> validate(const SimConfig &cfg)
{
  std::vector<std::string> warnings = cfg.multiplier.warnings();
  if (!(cfg.dt > 0.0) || !std::isfinite(cfg.dt))
  {
    throw ConfigError("time.dt must be positive");
  }
  if (!(cfg.t_end >= 0.0) || !std::isfinite(cfg.t_end))
  {
    throw ConfigError("time.t_end must be non-negative");
  }
  if (cfg.output_every < 1)
  {
    throw ConfigError("output.every must be >= 1");
  }
  if (cfg.snapshot_every < 0)
  {
    throw ConfigError("output.snapshot_every must be >= 0");
  }
  if (cfg.snapshot_every > 0 && cfg.snapshot_every % cfg.output_every != 0)
  {
    throw ConfigError("output.snapshot_every must be a multiple of output.every so that every "
                      "snapshot has a diagnostics record");
  }
  if (cfg.dissipation)
  {
    const auto &d = *cfg.dissipation;
    if (!(d.nu >= 0.0))
    {
      throw ConfigError("dissipation.nu must be >= 0");
    }
    if (!(d.b > 0.0))
    {
      throw ConfigError("dissipation.b must be positive");
    }
    if (cfg.multiplier.kind() == MultiplierSpec::Kind::power)
    {
      const double a = cfg.multiplier.a();
      if (a >= 0.0 && a < 1.0 && !(1.0 - a < d.b))
      {
        std::ostringstream os;
        os << "dissipation b = " << d.b << " with a = " << a
           << " is outside the well-posed regime 0 <= a < 1, 1 - a < b";
        warnings.push_back(os.str());
      }
    }
  }
  for (double s : cfg.hs_orders)
  {
    if (!(s >= -2.0))
    {
      throw ConfigError("output.hs orders must be >= -2");
    }
  }
  return warnings;
}

ActiveVectorModel::ActiveVectorModel(const MultiplierSpec &spec, const Grid &grid, bool dealias)
    : spec_(spec), grid_(grid), dealias_(dealias), gamma_(symbol_table(spec, grid))
{
}

void ActiveVectorModel::check(const VectorField &b) const
{
  require_same_grid(b.grid(), grid_, "ActiveVectorModel");
  if (!b.is_mean_zero())
  {
    throw DomainError("B must have zero mean");
  }
}

VectorField ActiveVectorModel::apply_gamma(const VectorField &b) const
{
  return apply_modes(gamma_, b);
}

VectorField ActiveVectorModel::G(const VectorField &b) const { return curl(apply_gamma(b)); }

VectorField ActiveVectorModel::V(const VectorField &b) const
{
  VectorField v = G(b);
  v *= -1.0;
  return v;
}

VectorField ActiveVectorModel::rhs_inviscid(const VectorField &b) const
{
  check(b);
  VectorField out = curl(cross_product(G(b), b, dealias_));
  out *= -1.0;
  return out;
}

VectorField ActiveVectorModel::rhs_stretch_form(const VectorField &b) const
{
  check(b);
  const VectorField v = V(b);
  VectorField out = advective_derivative(b, v, dealias_);
  out -= advective_derivative(v, b, dealias_);
  return out;
}

VectorField rhs_inviscid(const MultiplierSpec &spec, const VectorField &b)
{
  return ActiveVectorModel(spec, b.grid()).rhs_inviscid(b);
}

VectorField rhs_stretch_form(const MultiplierSpec &spec, const VectorField &b)
{
  return ActiveVectorModel(spec, b.grid()).rhs_stretch_form(b);
}

Stepper::Stepper(const SimConfig &cfg)
    : cfg_(cfg), model_(cfg.multiplier, cfg.grid, cfg.dealias)
{
  if (cfg.dissipation && cfg.dissipation->nu != 0.0)
  {
    const double nu = cfg.dissipation->nu;
    const double b = cfg.dissipation->b;
    decay_rate_ = radial_table(cfg.grid, [nu, b](double k) { return nu * std::pow(k, b); });
  }
}

namespace
{

bool all_finite(const VectorField &f)
{
  for (int d = 0; d < 3; ++d)
  {
    for (const auto &c : f[d].coeffs())
    {
      if (!std::isfinite(c.real()) || !std::isfinite(c.imag()))
      {
        return false;
      }
    }
  }
  return true;
}

}  // namespace

SimState Stepper::step(const SimState &s) const { return step(s, cfg_.dt); }

SimState Stepper::step(const SimState &s, double dt) const
{
  // Integrating factors for half and full steps; identity when inviscid.
  std::vector<double> half, full;
  const bool damped = !decay_rate_.empty();
  if (damped)
  {
    half.resize(decay_rate_.size());
    full.resize(decay_rate_.size());
    for (std::size_t i = 0; i < decay_rate_.size(); ++i)
    {
      half[i] = std::exp(-decay_rate_[i] * 0.5 * dt);
      full[i] = std::exp(-decay_rate_[i] * dt);
    }
  }
  auto E_half = [&](VectorField f) { return damped ? apply_modes(half, f) : f; };
  auto E_full = [&](VectorField f) { return damped ? apply_modes(full, f) : f; };

  const VectorField &b = s.B;
  const VectorField k1 = model_.rhs_inviscid(b);

  VectorField stage = b;
  stage.axpy(0.5 * dt, k1);
  const VectorField k2 = model_.rhs_inviscid(E_half(stage));

  stage = E_half(b);
  stage.axpy(0.5 * dt, k2);
  const VectorField k3 = model_.rhs_inviscid(stage);

  stage = E_full(b);
  stage.axpy(dt, E_half(k3));
  const VectorField k4 = model_.rhs_inviscid(stage);

  VectorField acc = E_full(k1);
  acc.axpy(2.0, E_half(k2));
  acc.axpy(2.0, E_half(k3));
  acc += k4;

  SimState next{s.t + dt, E_full(b)};
  next.B.axpy(dt / 6.0, acc);
  if (cfg_.project_every_step)
  {
    next.B = leray_project(next.B);
  }
  if (!all_finite(next.B))
  {
    throw BlowupError("non-finite coefficients at t = " + std::to_string(next.t), s);
  }
  return next;
}

SimState step_rk4(const SimConfig &cfg, const SimState &state)
{
  SimConfig inviscid = cfg;
  inviscid.dissipation.reset();
  return Stepper(inviscid).step(state);
}

SimState step_dissipative(const SimConfig &cfg, const SimState &state)
{
  if (!cfg.dissipation)
  {
    throw ConfigError("step_dissipative needs a [dissipation] section");
  }
  return Stepper(cfg).step(state);
}

VectorField reconstruct_u(const VectorField &b)
{
  if (!b.is_mean_zero())
  {
    throw DomainError("reconstruct_u needs a mean-zero field B");
  }
  const auto w = radial_table(b.grid(), [](double k) { return 1.0 / (k * k); });
  return apply_modes(w, curl(b));
}

double q_residual(const MultiplierSpec &spec, const VectorField &b, const VectorField &dbdt)
{
  const VectorField u = reconstruct_u(b);
  const VectorField dudt = reconstruct_u(dbdt);
  VectorField lap_gamma_u = apply_gamma(spec, u);
  for (int d = 0; d < 3; ++d)
  {
    lap_gamma_u[d] = laplacian(lap_gamma_u[d]);
  }
  VectorField s = dudt + cross_product(curl(u), lap_gamma_u);
  // ΔQ = -∇.S  =>  Q_k = i k.S_k / |k|^2, and S + ∇Q removes the gradient part of S.
  const auto inv_k2 = radial_table(b.grid(), [](double k) { return 1.0 / (k * k); });
  const ScalarField q = apply_modes(inv_k2, divergence(s));
  s += gradient(q);
  return max_norm(s);
}

SimState run(const SimConfig &cfg, const VectorField &b0, RunSink &sink)
{
  for (const auto &w : validate(cfg))
  {
    sink.warning(w);
  }
  require_same_grid(b0.grid(), cfg.grid, "run");
  if (!b0.is_mean_zero())
  {
    throw DomainError("initial field must have zero mean");
  }
  const Stepper stepper(cfg);
  SimState state{0.0, b0};

  long nsteps = static_cast<long>(std::llround(cfg.t_end / cfg.dt));
  if (std::abs(static_cast<double>(nsteps) * cfg.dt - cfg.t_end) > 1e-12 * std::max(1.0, cfg.t_end))
  {
    nsteps = static_cast<long>(std::ceil(cfg.t_end / cfg.dt));
  }

  DiagnosticsRecord last = make_record(cfg.multiplier, state.B, state.t, cfg.hs_orders);
  sink.record(last);
  if (cfg.snapshot_every > 0)
  {
    sink.snapshot(state, 0);
  }
  {
    const double dx = Grid::period / static_cast<double>(cfg.grid.dims()[0]);
    if (last.maxV > 0.0 && cfg.dt > dx / last.maxV)
    {
      std::ostringstream os;
      os << "dt = " << cfg.dt << " exceeds the advective estimate dx/max|V| = " << dx / last.maxV;
      sink.warning(os.str());
    }
  }

  for (long n = 1; n <= nsteps; ++n)
  {
    const double target = n == nsteps ? cfg.t_end : static_cast<double>(n) * cfg.dt;
    SimState next = stepper.step(state, target - state.t);
    next.t = target;
    const bool output = n % cfg.output_every == 0 || n == nsteps;
    const double y1 = y1_norm(next.B);
    if (y1 > cfg.y1_ceiling)
    {
      if (last.t != state.t)
      {
        last = make_record(cfg.multiplier, state.B, state.t, cfg.hs_orders, &last);
        sink.record(last);
      }
      throw BlowupError("Y1 norm " + std::to_string(y1) + " exceeds ceiling at t = " +
                            std::to_string(next.t),
                        state);
    }
    state = std::move(next);
    if (output)
    {
      last = make_record(cfg.multiplier, state.B, state.t, cfg.hs_orders, &last);
      sink.record(last);
    }
    if (cfg.snapshot_every > 0 && (n % cfg.snapshot_every == 0 || n == nsteps))
    {
      sink.snapshot(state, static_cast<std::size_t>(n));
    }
  }
  return state;
}

}  // namespace avec
