#ifndef AVECTOR_DYNAMICS2D_HPP
#define AVECTOR_DYNAMICS2D_HPP

#include <string>
#include <utility>
#include <vector>

#include "avector/dynamics3d.hpp"

namespace avec
{

//
// z-independent solutions B = (-∂y j, ∂x j, bz) reduce the 3D system to
//
//   ∂t bz + ∇⊥Γbz.∇bz + ∇⊥j.∇ΓΔj = 0
//   ∂t j  + ∇⊥Γbz.∇j             = 0,        ∇⊥ = (-∂y, ∂x),
//
// which for j = 0 is the generalized SQG equation. Fields live on a planar grid.
//
struct ReducedState
{
  double t = 0.0;
  ScalarField bz;
  ScalarField j;
};

class ReducedModel
{
public:
  ReducedModel(const MultiplierSpec &spec, const Grid &planar_grid, bool dealias = true);

  const Grid &grid() const { return grid_; }
  const MultiplierSpec &spec() const { return spec_; }

  std::pair<ScalarField, ScalarField> rhs(const ScalarField &bz, const ScalarField &j) const;
  ScalarField rhs_gsqg(const ScalarField &theta) const;

private:
  // ∇⊥a . ∇b as a pseudo-spectral product
  ScalarField perp_dot_grad(const ScalarField &a, const ScalarField &b) const;

  MultiplierSpec spec_;
  Grid grid_;
  bool dealias_;
  std::vector<double> gamma_;
  std::vector<double> gamma_lap_;  // -|k|^2 γ(|k|)
};

std::pair<ScalarField, ScalarField> rhs_reduced(const MultiplierSpec &spec,
                                                const ReducedState &state);
ScalarField rhs_gsqg(const MultiplierSpec &spec, const ScalarField &theta);

// z-independent 3D field on an N1 x N2 x nz grid.
VectorField embed_to_3d(const ReducedState &state, std::size_t nz);
// Inverse of embed_to_3d for z-independent fields (kz = 0 plane); t is left at 0.
ReducedState restrict_to_2d(const VectorField &b);

struct ReducedConfig
{
  Grid grid = Grid::planar(64, 64);
  MultiplierSpec multiplier = MultiplierSpec::power(2.0);
  double dt = 1e-3;
  double t_end = 0.0;
  int output_every = 1;
  bool dealias = true;
  int snapshot_every = 0;
};

std::vector<std::string> validate(const ReducedConfig &cfg);

// Classical RK4 on (bz, j).
class ReducedStepper
{
public:
  explicit ReducedStepper(const ReducedConfig &cfg);
  ReducedState step(const ReducedState &s) const;
  ReducedState step(const ReducedState &s, double dt) const;
  const ReducedModel &model() const { return model_; }

private:
  ReducedConfig cfg_;
  ReducedModel model_;
};

struct ReducedRecord
{
  double t = 0.0;
  double E = 0.0;  // energy of the embedded 3D field on [0, 2π)^3
  double l2_bz = 0.0;
  double l2_j = 0.0;
  double y1 = 0.0;
  double maxV = 0.0;
  double max_j = 0.0;  // max |j_k| over coefficients
};

ReducedRecord make_reduced_record(const MultiplierSpec &spec, const ReducedState &s);
std::string reduced_csv_header();
std::string reduced_csv_row(const ReducedRecord &r);

class ReducedSink
{
public:
  virtual ~ReducedSink() = default;
  virtual void record(const ReducedRecord &r) = 0;
  virtual void snapshot(const ReducedState &, std::size_t /*step*/) {}
  virtual void warning(const std::string &) {}
};

ReducedState run_reduced(const ReducedConfig &cfg, const ReducedState &initial, ReducedSink &sink);

}  // namespace avec

#endif  // AVECTOR_DYNAMICS2D_HPP
