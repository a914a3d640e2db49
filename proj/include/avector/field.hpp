#ifndef AVECTOR_FIELD_HPP
#define AVECTOR_FIELD_HPP

#include <array>
#include <complex>
#include <span>
#include <vector>

#include "avector/grid.hpp"

namespace avec
{

using Complex = std::complex<double>;

//
// Fourier coefficients c_k of a real scalar field f(x) = sum_k c_k exp(i k.x) on the full
// wavenumber lattice of a grid. Coefficients are the true series coefficients, so Parseval
// reads  int |f|^2 dx = (2π)^3 sum_k |c_k|^2.
//
class ScalarField
{
public:
  explicit ScalarField(const Grid &grid) : grid_(grid), coeffs_(grid.size()) {}
  ScalarField(const Grid &grid, std::vector<Complex> coeffs);

  const Grid &grid() const { return grid_; }
  std::span<const Complex> coeffs() const { return coeffs_; }
  std::span<Complex> coeffs() { return coeffs_; }
  std::size_t size() const { return coeffs_.size(); }

  Complex operator[](std::size_t idx) const { return coeffs_[idx]; }
  Complex &operator[](std::size_t idx) { return coeffs_[idx]; }

  // Coefficient of a signed wavevector (indices taken modulo the grid).
  Complex at(int k1, int k2, int k3) const;
  void set(int k1, int k2, int k3, Complex value);

  // Sets c_k and c_{-k} = conj(c_k) together.
  void set_hermitian(int k1, int k2, int k3, Complex value);

  Complex mean() const { return coeffs_[0]; }
  // Zero mean up to transform round-off relative to the largest coefficient.
  bool is_mean_zero() const;

  // Largest |c_k - conj(c_{-k})|.
  double hermitian_defect() const;
  // Replace c_k by (c_k + conj(c_{-k})) / 2; Nyquist-only partners become real.
  void symmetrize();

  ScalarField &operator+=(const ScalarField &other);
  ScalarField &operator-=(const ScalarField &other);
  ScalarField &operator*=(double s);
  // this += s * other
  ScalarField &axpy(double s, const ScalarField &other);

  friend ScalarField operator+(ScalarField a, const ScalarField &b) { return a += b; }
  friend ScalarField operator-(ScalarField a, const ScalarField &b) { return a -= b; }
  friend ScalarField operator*(double s, ScalarField a) { return a *= s; }

  friend bool operator==(const ScalarField &, const ScalarField &) = default;

private:
  Grid grid_;
  std::vector<Complex> coeffs_;
};

// Three scalar fields on one grid.
class VectorField
{
public:
  explicit VectorField(const Grid &grid) : c_{ScalarField(grid), ScalarField(grid), ScalarField(grid)}
  {
  }
  VectorField(ScalarField x, ScalarField y, ScalarField z);

  const Grid &grid() const { return c_[0].grid(); }
  const ScalarField &operator[](int d) const { return c_[d]; }
  ScalarField &operator[](int d) { return c_[d]; }

  VectorField &operator+=(const VectorField &other);
  VectorField &operator-=(const VectorField &other);
  VectorField &operator*=(double s);
  VectorField &axpy(double s, const VectorField &other);

  friend VectorField operator+(VectorField a, const VectorField &b) { return a += b; }
  friend VectorField operator-(VectorField a, const VectorField &b) { return a -= b; }
  friend VectorField operator*(double s, VectorField a) { return a *= s; }

  friend bool operator==(const VectorField &, const VectorField &) = default;

  double hermitian_defect() const;
  void symmetrize();
  bool is_mean_zero() const;

private:
  std::array<ScalarField, 3> c_;
};

// Real samples on the grid points x = (2π i / N1, 2π j / N2, 2π l / N3).
struct PhysicalField
{
  explicit PhysicalField(const Grid &g) : grid(g), values(g.size()) {}
  PhysicalField(const Grid &g, std::vector<double> v);

  Grid grid;
  std::vector<double> values;
};

using PhysicalVector = std::array<PhysicalField, 3>;

void require_same_grid(const Grid &a, const Grid &b, const char *what);

// Largest coefficient modulus.
double max_coeff(const ScalarField &f);
double max_coeff(const VectorField &f);

// Largest coefficient modulus of the difference, normalised by nothing.
double max_coeff_diff(const ScalarField &a, const ScalarField &b);
double max_coeff_diff(const VectorField &a, const VectorField &b);

}  // namespace avec

#endif  // AVECTOR_FIELD_HPP
