#include "avector/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>

#include "avector/errors.hpp"
#include "avector/fft.hpp"

namespace avec
{

namespace kp = kernels::parallel;

ModeTables::ModeTables(const Grid &g)
    : grid(g), kmag(g.size()), dealias_mask(g.size()), ones(g.size(), 1.0)
{
  for (auto &kk : k)
  {
    kk.resize(g.size());
  }
  for (std::size_t idx = 0; idx < g.size(); ++idx)
  {
    const auto [i, j, l] = g.unflat(idx);
    const std::size_t ijk[3] = {i, j, l};
    double k2 = 0.0;
    for (int a = 0; a < 3; ++a)
    {
      k[a][idx] = g.derivative_wavenumber(a, ijk[a]);
      const double full = g.wavenumber(a, ijk[a]);
      k2 += full * full;
    }
    kmag[idx] = std::sqrt(k2);
    dealias_mask[idx] = g.in_dealias_band(idx) ? 1.0 : 0.0;
  }
}

std::shared_ptr<const ModeTables> ModeTables::for_grid(const Grid &g)
{
  static std::mutex m;
  std::lock_guard lock(m);
  static std::map<Grid::Dims, std::shared_ptr<const ModeTables>> cache;
  auto it = cache.find(g.dims());
  if (it != cache.end())
  {
    return it->second;
  }
  auto t = std::make_shared<const ModeTables>(g);
  cache.emplace(g.dims(), t);
  return t;
}

std::vector<double> radial_table(const Grid &g, const std::function<double(double)> &f)
{
  const auto tables = ModeTables::for_grid(g);
  std::vector<double> w(g.size());
  w[0] = 0.0;
  for (std::size_t idx = 1; idx < g.size(); ++idx)
  {
    w[idx] = f(tables->kmag[idx]);
  }
  return w;
}

ScalarField apply_modes(std::span<const double> weights, const ScalarField &f)
{
  ScalarField out(f.grid());
  kp::scale_modes(weights, f.coeffs(), out.coeffs());
  return out;
}

VectorField apply_modes(std::span<const double> weights, const VectorField &f)
{
  return VectorField(apply_modes(weights, f[0]), apply_modes(weights, f[1]),
                     apply_modes(weights, f[2]));
}

ScalarField derivative(const ScalarField &f, int axis)
{
  const auto tables = ModeTables::for_grid(f.grid());
  ScalarField out(f.grid());
  kp::scale_modes_imag(tables->k[axis], f.coeffs(), out.coeffs());
  return out;
}

VectorField gradient(const ScalarField &f)
{
  return VectorField(derivative(f, 0), derivative(f, 1), derivative(f, 2));
}

ScalarField divergence(const VectorField &f)
{
  const auto tables = ModeTables::for_grid(f.grid());
  ScalarField out(f.grid());
  kp::divergence_modes(tables->k_spans(), {f[0].coeffs(), f[1].coeffs(), f[2].coeffs()},
                       out.coeffs());
  return out;
}

VectorField curl(const VectorField &f)
{
  const auto tables = ModeTables::for_grid(f.grid());
  VectorField out(f.grid());
  kp::curl_modes(tables->k_spans(), {f[0].coeffs(), f[1].coeffs(), f[2].coeffs()},
                 {out[0].coeffs(), out[1].coeffs(), out[2].coeffs()});
  return out;
}

ScalarField laplacian(const ScalarField &f)
{
  const auto tables = ModeTables::for_grid(f.grid());
  std::vector<double> w(f.size());
  for (std::size_t i = 0; i < w.size(); ++i)
  {
    w[i] = -tables->kmag[i] * tables->kmag[i];
  }
  return apply_modes(w, f);
}

ScalarField lambda_power(const ScalarField &f, double s)
{
  if (s < 0.0 && std::abs(f.mean()) > 1e-14 * std::max(1.0, max_coeff(f)))
  {
    throw DomainError("lambda_power with s = " + std::to_string(s) +
                      " needs a mean-zero field (the zero mode has no negative power)");
  }
  const auto w = radial_table(f.grid(), [s](double r) { return std::pow(r, s); });
  return apply_modes(w, f);
}

VectorField lambda_power(const VectorField &f, double s)
{
  return VectorField(lambda_power(f[0], s), lambda_power(f[1], s), lambda_power(f[2], s));
}

VectorField leray_project(const VectorField &f)
{
  const auto tables = ModeTables::for_grid(f.grid());
  VectorField out(f.grid());
  kp::leray_modes(tables->k_spans(), {f[0].coeffs(), f[1].coeffs(), f[2].coeffs()},
                  {out[0].coeffs(), out[1].coeffs(), out[2].coeffs()});
  return out;
}

ScalarField dealias(const ScalarField &f)
{
  return apply_modes(ModeTables::for_grid(f.grid())->dealias_mask, f);
}

VectorField dealias(const VectorField &f)
{
  return VectorField(dealias(f[0]), dealias(f[1]), dealias(f[2]));
}

bool is_band_limited(const ScalarField &f)
{
  const auto tables = ModeTables::for_grid(f.grid());
  for (std::size_t i = 0; i < f.size(); ++i)
  {
    if (tables->dealias_mask[i] == 0.0 && f[i] != Complex{})
    {
      return false;
    }
  }
  return true;
}

bool is_band_limited(const VectorField &f)
{
  return is_band_limited(f[0]) && is_band_limited(f[1]) && is_band_limited(f[2]);
}

namespace
{

kernels::ConstReal3 spans(const PhysicalVector &v)
{
  return {v[0].values, v[1].values, v[2].values};
}

}  // namespace

ScalarField product(const ScalarField &a, const ScalarField &b, bool dealiased)
{
  require_same_grid(a.grid(), b.grid(), "product");
  const auto pa = to_physical(a);
  const auto pb = to_physical(b);
  PhysicalField out(a.grid());
  kp::multiply(pa.values, pb.values, out.values);
  auto spec = to_spectral(out);
  return dealiased ? dealias(spec) : spec;
}

VectorField cross_product(const VectorField &a, const VectorField &b, bool dealiased)
{
  require_same_grid(a.grid(), b.grid(), "cross_product");
  const auto pa = to_physical(a);
  const auto pb = to_physical(b);
  PhysicalVector out{PhysicalField(a.grid()), PhysicalField(a.grid()), PhysicalField(a.grid())};
  kp::cross(spans(pa), spans(pb), {out[0].values, out[1].values, out[2].values});
  auto spec = to_spectral(out);
  return dealiased ? dealias(spec) : spec;
}

VectorField advective_derivative(const VectorField &u, const VectorField &w, bool dealiased)
{
  require_same_grid(u.grid(), w.grid(), "advective_derivative");
  const auto pu = to_physical(u);
  VectorField out(u.grid());
  PhysicalField tmp(u.grid());
  for (int d = 0; d < 3; ++d)
  {
    const auto grad = to_physical(gradient(w[d]));
    kp::dot(spans(pu), spans(grad), tmp.values);
    out[d] = to_spectral(tmp);
  }
  return dealiased ? dealias(out) : out;
}

double divergence_defect(const VectorField &f)
{
  const auto tables = ModeTables::for_grid(f.grid());
  double worst = 0.0;
  for (std::size_t i = 0; i < f[0].size(); ++i)
  {
    const double mag = std::sqrt(std::norm(f[0][i]) + std::norm(f[1][i]) + std::norm(f[2][i]));
    if (mag == 0.0)
    {
      continue;
    }
    const Complex kf = tables->k[0][i] * f[0][i] + tables->k[1][i] * f[1][i] +
                       tables->k[2][i] * f[2][i];
    worst = std::max(worst, std::abs(kf) / mag);
  }
  return worst;
}

double max_norm(const ScalarField &f) { return kp::max_abs(to_physical(f).values); }

double max_norm(const VectorField &f)
{
  const auto p = to_physical(f);
  PhysicalField mag2(f.grid());
  kp::dot(spans(p), spans(p), mag2.values);
  return std::sqrt(kp::max_abs(mag2.values));
}

double check_curl_times_identity(const VectorField &b, const VectorField &f)
{
  require_same_grid(b.grid(), f.grid(), "check_curl_times_identity");
  const VectorField lhs = curl(cross_product(b, f));

  const ScalarField div_f = divergence(f);
  const ScalarField div_b = divergence(b);
  VectorField rhs = advective_derivative(f, b);
  rhs -= advective_derivative(b, f);
  for (int d = 0; d < 3; ++d)
  {
    rhs[d] += product(div_f, b[d]);
    rhs[d] -= product(div_b, f[d]);
  }
  return max_norm(lhs - rhs);
}

}  // namespace avec
