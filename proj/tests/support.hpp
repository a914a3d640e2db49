#ifndef AVECTOR_TESTS_SUPPORT_HPP
#define AVECTOR_TESTS_SUPPORT_HPP

#include <cmath>
#include <functional>

#include "avector/fft.hpp"
#include "avector/field.hpp"
#include "avector/presets.hpp"

namespace avec::test
{

inline constexpr double two_pi = Grid::period;
inline const double vol = two_pi * two_pi * two_pi;

// Field from its grid samples, f(x, y, z).
inline ScalarField from_function(const Grid &g, const std::function<double(double, double, double)> &f)
{
  PhysicalField p(g);
  for (std::size_t i = 0; i < g.dim(0); ++i)
  {
    for (std::size_t j = 0; j < g.dim(1); ++j)
    {
      for (std::size_t l = 0; l < g.dim(2); ++l)
      {
        p.values[g.flat(i, j, l)] = f(i * g.spacing(0), j * g.spacing(1), l * g.spacing(2));
      }
    }
  }
  return to_spectral(p);
}

// Direct Fourier sum at an arbitrary point.
inline double evaluate(const ScalarField &f, double x, double y, double z)
{
  const Grid &g = f.grid();
  double acc = 0.0;
  for (std::size_t idx = 0; idx < g.size(); ++idx)
  {
    if (f[idx] == Complex{})
    {
      continue;
    }
    const auto k = g.wavevector(idx);
    const double ph = k[0] * x + k[1] * y + k[2] * z;
    acc += (f[idx] * Complex(std::cos(ph), std::sin(ph))).real();
  }
  return acc;
}

inline ScalarField random_scalar(const Grid &g, std::uint64_t seed, double decay = 2.0)
{
  RandomFieldOptions opt;
  opt.seed = seed;
  opt.decay = decay;
  opt.rms = 1.0;
  return random_scalar_field(g, opt);
}

inline VectorField random_solenoidal(const Grid &g, std::uint64_t seed, double decay = 2.0)
{
  RandomFieldOptions opt;
  opt.seed = seed;
  opt.decay = decay;
  opt.rms = 1.0;
  return random_solenoidal_field(g, opt);
}

inline VectorField random_vector(const Grid &g, std::uint64_t seed, double decay = 2.0)
{
  RandomFieldOptions opt;
  opt.seed = seed;
  opt.decay = decay;
  opt.rms = 1.0;
  return random_vector_field(g, opt);
}

}  // namespace avec::test

#endif  // AVECTOR_TESTS_SUPPORT_HPP
