#ifndef AVECTOR_DYNAMICS3D_HPP
#define AVECTOR_DYNAMICS3D_HPP

#include <cstddef>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "avector/diagnostics.hpp"
#include "avector/errors.hpp"
#include "avector/field.hpp"
#include "avector/multipliers.hpp"

namespace avec
{

// Linear damping -ν Λ^b B added to the right-hand side (b = 2 is the viscous case).
struct Dissipation
{
  double nu = 0.0;
  double b = 2.0;
};

struct SimConfig
{
  Grid grid{32};
  MultiplierSpec multiplier = MultiplierSpec::power(2.0);
  std::optional<Dissipation> dissipation;
  double dt = 1e-3;
  double t_end = 0.0;
  int output_every = 1;
  bool dealias = true;
  bool project_every_step = true;
  // Snapshot cadence in steps; 0 disables snapshots.
  int snapshot_every = 0;
  // Stop with BlowupError once ‖B‖_{Y^1} exceeds this.
  double y1_ceiling = std::numeric_limits<double>::infinity();
  std::vector<double> hs_orders{2.5, 3.0};
};

// Throws ConfigError on invalid values; returns human-readable warnings.
std::vector<std::string> validate(const SimConfig &cfg);

struct SimState
{
  double t = 0.0;
  VectorField B;
};

class BlowupError : public Error
{
public:
  BlowupError(const std::string &reason, SimState last_valid)
      : Error("blow-up detected: " + reason), last_valid_(std::move(last_valid))
  {
  }
  const SimState &last_valid() const { return last_valid_; }

private:
  SimState last_valid_;
};

//
// The active vector system  ∂t B + ∇x((∇xΓ[B]) x B) = 0  on one grid, with the symbol
// table precomputed. Products are pseudo-spectral and dealiased unless disabled.
//
class ActiveVectorModel
{
public:
  ActiveVectorModel(const MultiplierSpec &spec, const Grid &grid, bool dealias = true);

  const MultiplierSpec &spec() const { return spec_; }
  const Grid &grid() const { return grid_; }
  const std::vector<double> &gamma() const { return gamma_; }

  VectorField apply_gamma(const VectorField &b) const;
  // G = ∇ x Γ[B]
  VectorField G(const VectorField &b) const;
  // V = -G
  VectorField V(const VectorField &b) const;

  // -∇ x (G x B)
  VectorField rhs_inviscid(const VectorField &b) const;
  // -(V.∇)B + (B.∇)V
  VectorField rhs_stretch_form(const VectorField &b) const;

private:
  void check(const VectorField &b) const;

  MultiplierSpec spec_;
  Grid grid_;
  bool dealias_;
  std::vector<double> gamma_;
};

VectorField rhs_inviscid(const MultiplierSpec &spec, const VectorField &b);
VectorField rhs_stretch_form(const MultiplierSpec &spec, const VectorField &b);

//
// Fixed-step integrator. Without dissipation this is classical RK4. With dissipation the
// linear term is integrated exactly by the factors exp(-ν|k|^b τ) (Lawson / integrating
// factor RK4); with ν = 0 the factors are exactly 1 and the arithmetic matches RK4 bit for
// bit.
//
class Stepper
{
public:
  explicit Stepper(const SimConfig &cfg);

  const ActiveVectorModel &model() const { return model_; }
  const SimConfig &config() const { return cfg_; }

  SimState step(const SimState &s) const;
  // Step with an explicit (possibly negative) time increment.
  SimState step(const SimState &s, double dt) const;

private:
  SimConfig cfg_;
  ActiveVectorModel model_;
  std::vector<double> decay_rate_;  // ν|k|^b per mode, empty when inviscid
};

SimState step_rk4(const SimConfig &cfg, const SimState &state);
SimState step_dissipative(const SimConfig &cfg, const SimState &state);

// u with ∇ x u = B, ∇.u = 0, u_0 = 0.
VectorField reconstruct_u(const VectorField &b);

// Max-norm of ∂t u + (∇xu) x ΔΓu + ∇Q with Q solving ΔQ = -∇.(∂t u + (∇xu) x ΔΓu).
double q_residual(const MultiplierSpec &spec, const VectorField &b, const VectorField &dbdt);

// Receives everything a run emits.
class RunSink
{
public:
  virtual ~RunSink() = default;
  virtual void record(const DiagnosticsRecord &r) = 0;
  virtual void snapshot(const SimState &, std::size_t /*step*/) {}
  virtual void warning(const std::string &) {}
};

// Steps until t_end (the last step is shortened to land on t_end). Emits a record at t = 0,
// every output_every steps and at the end. Throws BlowupError after flushing the record
// of the last valid state.
SimState run(const SimConfig &cfg, const VectorField &b0, RunSink &sink);

}  // namespace avec

#endif  // AVECTOR_DYNAMICS3D_HPP
