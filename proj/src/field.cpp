#include "avector/field.hpp"

#include <algorithm>
#include <cmath>

#include "avector/errors.hpp"

namespace avec
{

void require_same_grid(const Grid &a, const Grid &b, const char *what)
{
  if (!(a == b))
  {
    throw StructuralError(std::string(what) + ": grid mismatch (" + a.describe() + " vs " +
                          b.describe() + ")");
  }
}

ScalarField::ScalarField(const Grid &grid, std::vector<Complex> coeffs)
    : grid_(grid), coeffs_(std::move(coeffs))
{
  if (coeffs_.size() != grid_.size())
  {
    throw StructuralError("coefficient count does not match grid " + grid_.describe());
  }
}

Complex ScalarField::at(int k1, int k2, int k3) const
{
  return coeffs_[grid_.flat(grid_.index_of(0, k1), grid_.index_of(1, k2), grid_.index_of(2, k3))];
}

void ScalarField::set(int k1, int k2, int k3, Complex value)
{
  coeffs_[grid_.flat(grid_.index_of(0, k1), grid_.index_of(1, k2), grid_.index_of(2, k3))] = value;
}

void ScalarField::set_hermitian(int k1, int k2, int k3, Complex value)
{
  set(k1, k2, k3, value);
  set(-k1, -k2, -k3, std::conj(value));
}

double ScalarField::hermitian_defect() const
{
  double worst = 0.0;
  for (std::size_t idx = 0; idx < coeffs_.size(); ++idx)
  {
    worst = std::max(worst, std::abs(coeffs_[idx] - std::conj(coeffs_[grid_.mirror(idx)])));
  }
  return worst;
}

void ScalarField::symmetrize()
{
  std::vector<Complex> out(coeffs_.size());
  for (std::size_t idx = 0; idx < coeffs_.size(); ++idx)
  {
    out[idx] = 0.5 * (coeffs_[idx] + std::conj(coeffs_[grid_.mirror(idx)]));
  }
  coeffs_ = std::move(out);
}

ScalarField &ScalarField::operator+=(const ScalarField &other)
{
  require_same_grid(grid_, other.grid_, "ScalarField +=");
  for (std::size_t i = 0; i < coeffs_.size(); ++i)
  {
    coeffs_[i] += other.coeffs_[i];
  }
  return *this;
}

ScalarField &ScalarField::operator-=(const ScalarField &other)
{
  require_same_grid(grid_, other.grid_, "ScalarField -=");
  for (std::size_t i = 0; i < coeffs_.size(); ++i)
  {
    coeffs_[i] -= other.coeffs_[i];
  }
  return *this;
}

ScalarField &ScalarField::operator*=(double s)
{
  for (auto &c : coeffs_)
  {
    c *= s;
  }
  return *this;
}

ScalarField &ScalarField::axpy(double s, const ScalarField &other)
{
  require_same_grid(grid_, other.grid_, "ScalarField axpy");
  for (std::size_t i = 0; i < coeffs_.size(); ++i)
  {
    coeffs_[i] += s * other.coeffs_[i];
  }
  return *this;
}

VectorField::VectorField(ScalarField x, ScalarField y, ScalarField z)
    : c_{std::move(x), std::move(y), std::move(z)}
{
  require_same_grid(c_[0].grid(), c_[1].grid(), "VectorField components");
  require_same_grid(c_[0].grid(), c_[2].grid(), "VectorField components");
}

VectorField &VectorField::operator+=(const VectorField &other)
{
  for (int d = 0; d < 3; ++d)
  {
    c_[d] += other.c_[d];
  }
  return *this;
}

VectorField &VectorField::operator-=(const VectorField &other)
{
  for (int d = 0; d < 3; ++d)
  {
    c_[d] -= other.c_[d];
  }
  return *this;
}

VectorField &VectorField::operator*=(double s)
{
  for (auto &c : c_)
  {
    c *= s;
  }
  return *this;
}

VectorField &VectorField::axpy(double s, const VectorField &other)
{
  for (int d = 0; d < 3; ++d)
  {
    c_[d].axpy(s, other.c_[d]);
  }
  return *this;
}

double VectorField::hermitian_defect() const
{
  return std::max({c_[0].hermitian_defect(), c_[1].hermitian_defect(), c_[2].hermitian_defect()});
}

void VectorField::symmetrize()
{
  for (auto &c : c_)
  {
    c.symmetrize();
  }
}

bool ScalarField::is_mean_zero() const
{
  double peak = 1.0;
  for (const Complex &c : coeffs_)
  {
    peak = std::max(peak, std::abs(c));
  }
  return std::abs(coeffs_[0]) <= 1e-14 * peak;
}

bool VectorField::is_mean_zero() const
{
  return c_[0].is_mean_zero() && c_[1].is_mean_zero() && c_[2].is_mean_zero();
}

PhysicalField::PhysicalField(const Grid &g, std::vector<double> v) : grid(g), values(std::move(v))
{
  if (values.size() != grid.size())
  {
    throw StructuralError("sample count does not match grid " + grid.describe());
  }
}

double max_coeff(const ScalarField &f)
{
  double worst = 0.0;
  for (const auto &c : f.coeffs())
  {
    worst = std::max(worst, std::abs(c));
  }
  return worst;
}

double max_coeff(const VectorField &f)
{
  return std::max({max_coeff(f[0]), max_coeff(f[1]), max_coeff(f[2])});
}

double max_coeff_diff(const ScalarField &a, const ScalarField &b)
{
  require_same_grid(a.grid(), b.grid(), "max_coeff_diff");
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i)
  {
    worst = std::max(worst, std::abs(a[i] - b[i]));
  }
  return worst;
}

double max_coeff_diff(const VectorField &a, const VectorField &b)
{
  return std::max({max_coeff_diff(a[0], b[0]), max_coeff_diff(a[1], b[1]),
                   max_coeff_diff(a[2], b[2])});
}

}  // namespace avec
