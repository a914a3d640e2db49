#ifndef AVECTOR_SPECTRAL_HPP
#define AVECTOR_SPECTRAL_HPP

#include <functional>
#include <memory>
#include <vector>

#include "avector/field.hpp"
#include "avector/kernels.hpp"

namespace avec
{

// Per-grid lookup tables shared by all spectral operators.
struct ModeTables
{
  explicit ModeTables(const Grid &g);

  static std::shared_ptr<const ModeTables> for_grid(const Grid &g);

  kernels::ConstReal3 k_spans() const { return {k[0], k[1], k[2]}; }

  Grid grid;
  // Wavenumbers for odd multipliers (zero on Nyquist planes).
  std::array<std::vector<double>, 3> k;
  // |k| including Nyquist components.
  std::vector<double> kmag;
  // 1 inside the 2/3-rule band, 0 outside.
  std::vector<double> dealias_mask;
  std::vector<double> ones;
};

// Table of f(|k|) over the lattice with the zero mode set to 0.
std::vector<double> radial_table(const Grid &g, const std::function<double(double)> &f);

ScalarField apply_modes(std::span<const double> weights, const ScalarField &f);
VectorField apply_modes(std::span<const double> weights, const VectorField &f);

ScalarField derivative(const ScalarField &f, int axis);
VectorField gradient(const ScalarField &f);
ScalarField divergence(const VectorField &f);
VectorField curl(const VectorField &f);
ScalarField laplacian(const ScalarField &f);

// Λ^s = (-Δ)^{s/2} with Λ^s c_0 := 0. For s < 0 the field must have zero mean.
ScalarField lambda_power(const ScalarField &f, double s);
VectorField lambda_power(const VectorField &f, double s);

VectorField leray_project(const VectorField &f);

// Zero every coefficient with some |k_i| > N_i / 3.
ScalarField dealias(const ScalarField &f);
VectorField dealias(const VectorField &f);
bool is_band_limited(const ScalarField &f);
bool is_band_limited(const VectorField &f);

// Pseudo-spectral products: formed on the grid, transformed back, optionally dealiased.
ScalarField product(const ScalarField &a, const ScalarField &b, bool dealiased = true);
VectorField cross_product(const VectorField &a, const VectorField &b, bool dealiased = true);
// (u . ∇) w
VectorField advective_derivative(const VectorField &u, const VectorField &w,
                                 bool dealiased = true);

// max_k |k . F(k)| / |F(k)| over modes with F(k) != 0.
double divergence_defect(const VectorField &f);

// Max over grid points of |f| (vector: Euclidean magnitude).
double max_norm(const ScalarField &f);
double max_norm(const VectorField &f);

// Max-norm of  ∇x(BxF) - [(∇.F + F.∇)B - (∇.B + B.∇)F]  using dealiased products.
double check_curl_times_identity(const VectorField &b, const VectorField &f);

}  // namespace avec

#endif  // AVECTOR_SPECTRAL_HPP
