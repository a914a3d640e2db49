#include "avector/presets.hpp"

#include <cmath>
#include <random>

#include "avector/errors.hpp"
#include "avector/spectral.hpp"

namespace avec
{

VectorField abc_field(const Grid &grid, double A, double B, double C)
{
  // sin t = (e^{it} - e^{-it}) / 2i, so the +k coefficient is -i/2; cos has 1/2.
  const Complex sin_c(0.0, -0.5);
  const Complex cos_c(0.5, 0.0);
  VectorField f(grid);
  f[0].set_hermitian(0, 0, 1, A * sin_c);
  f[0].set_hermitian(0, 1, 0, C * cos_c);
  f[1].set_hermitian(1, 0, 0, B * sin_c);
  f[1].set_hermitian(0, 0, 1, A * cos_c);
  f[2].set_hermitian(0, 1, 0, C * sin_c);
  f[2].set_hermitian(1, 0, 0, B * cos_c);
  return f;
}

VectorField single_mode(const Grid &grid, int k1, int k2, int k3, int axis, double amplitude)
{
  if (axis < 0 || axis > 2)
  {
    throw DomainError("single_mode: axis must be 0, 1 or 2");
  }
  const int k[3] = {k1, k2, k3};
  if (k[axis] != 0)
  {
    throw DomainError("single_mode: the field direction must be orthogonal to k");
  }
  if (k1 == 0 && k2 == 0 && k3 == 0)
  {
    throw DomainError("single_mode: k = 0 would give a nonzero mean");
  }
  for (int a = 0; a < 3; ++a)
  {
    if (2 * std::abs(k[a]) >= static_cast<int>(grid.dim(a)))
    {
      throw DomainError("single_mode: wavevector not resolved by " + grid.describe());
    }
  }
  VectorField f(grid);
  f[axis].set_hermitian(k1, k2, k3, Complex(0.5 * amplitude, 0.0));
  return f;
}

std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b)
{
  std::uint64_t z = a + 0x9e3779b97f4a7c15ULL * (b + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

namespace
{

int effective_band(const Grid &grid, int band)
{
  int limit = 1 << 30;
  for (int a = 0; a < 3; ++a)
  {
    if (grid.dim(a) == 1)
    {
      continue;
    }
    limit = std::min(limit, static_cast<int>(grid.dim(a)) / 2 - 1);
  }
  if (band <= 0)
  {
    int b = limit;
    for (int a = 0; a < 3; ++a)
    {
      if (grid.dim(a) > 1)
      {
        b = std::min(b, static_cast<int>(grid.dim(a)) / 3);
      }
    }
    return b;
  }
  if (band > limit)
  {
    throw DomainError("random field band " + std::to_string(band) + " is not resolved by " +
                      grid.describe());
  }
  return band;
}

// Canonical representative of the pair {k, -k}: first nonzero component positive.
bool canonical(const std::array<int, 3> &k)
{
  for (int v : k)
  {
    if (v != 0)
    {
      return v > 0;
    }
  }
  return false;
}

ScalarField raw_component(const Grid &grid, const RandomFieldOptions &opt, int component)
{
  const int band = effective_band(grid, opt.band);
  const std::uint64_t base = mix_seed(mix_seed(opt.seed, opt.member), component);
  ScalarField f(grid);
  for (std::size_t idx = 0; idx < grid.size(); ++idx)
  {
    const auto k = grid.wavevector(idx);
    if (!canonical(k) || std::abs(k[0]) > band || std::abs(k[1]) > band || std::abs(k[2]) > band)
    {
      continue;
    }
    std::uint64_t h = base;
    for (int v : k)
    {
      h = mix_seed(h, static_cast<std::uint64_t>(static_cast<std::int64_t>(v)));
    }
    std::mt19937_64 rng(h);
    std::normal_distribution<double> normal;
    const double re = normal(rng);
    const double im = normal(rng);
    const double kk = std::sqrt(double(k[0] * k[0] + k[1] * k[1] + k[2] * k[2]));
    f.set_hermitian(k[0], k[1], k[2], Complex(re, im) * std::pow(kk, -opt.decay));
  }
  return f;
}

}  // namespace

double rms(const ScalarField &f)
{
  double s = 0.0;
  for (const auto &c : f.coeffs())
  {
    s += std::norm(c);
  }
  return std::sqrt(s);
}

double rms(const VectorField &f)
{
  return std::sqrt(rms(f[0]) * rms(f[0]) + rms(f[1]) * rms(f[1]) + rms(f[2]) * rms(f[2]));
}

ScalarField random_scalar_field(const Grid &grid, const RandomFieldOptions &opt)
{
  ScalarField f = raw_component(grid, opt, 0);
  if (opt.rms > 0.0)
  {
    f *= opt.rms / rms(f);
  }
  return f;
}

VectorField random_vector_field(const Grid &grid, const RandomFieldOptions &opt)
{
  VectorField f(raw_component(grid, opt, 0), raw_component(grid, opt, 1),
                raw_component(grid, opt, 2));
  if (opt.rms > 0.0)
  {
    f *= opt.rms / rms(f);
  }
  return f;
}

VectorField random_solenoidal_field(const Grid &grid, const RandomFieldOptions &opt)
{
  RandomFieldOptions raw = opt;
  raw.rms = 0.0;
  VectorField f = leray_project(random_vector_field(grid, raw));
  if (opt.rms > 0.0)
  {
    f *= opt.rms / rms(f);
  }
  return f;
}

}  // namespace avec
