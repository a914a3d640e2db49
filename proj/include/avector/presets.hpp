#ifndef AVECTOR_PRESETS_HPP
#define AVECTOR_PRESETS_HPP

#include <cstdint>

#include "avector/field.hpp"

namespace avec
{

// (A sin z + C cos y, B sin x + A cos z, C sin y + B cos x); a curl eigenfield with
// eigenvalue 1.
VectorField abc_field(const Grid &grid, double A = 1.0, double B = 1.0, double C = 1.0);

// amplitude * cos(k.x) along one coordinate axis. The axis must be orthogonal to k so the
// field is divergence-free.
VectorField single_mode(const Grid &grid, int k1, int k2, int k3, int axis, double amplitude = 1.0);

//
// Random Fourier data. The coefficient of mode k is amplitude-free complex Gaussian noise
// times |k|^{-decay}, drawn from a generator seeded by (seed, member, component, k) alone, so
// a field on a finer grid extends the coarse one mode for mode. Modes outside the box
// |k_i| <= band are zero; band = 0 selects the 2/3-rule band of the grid. The result is
// Hermitian and mean-zero, then scaled so that its root-mean-square value equals rms
// (rms <= 0 leaves the raw coefficients).
//
struct RandomFieldOptions
{
  std::uint64_t seed = 1;
  std::uint64_t member = 0;
  double decay = 3.0;
  int band = 0;
  double rms = 0.0;
};

ScalarField random_scalar_field(const Grid &grid, const RandomFieldOptions &opt);
// Leray-projected before scaling.
VectorField random_solenoidal_field(const Grid &grid, const RandomFieldOptions &opt);
// Three independent scalar components, not projected.
VectorField random_vector_field(const Grid &grid, const RandomFieldOptions &opt);

// Root-mean-square value sqrt(sum |c_k|^2).
double rms(const ScalarField &f);
double rms(const VectorField &f);

// splitmix64 finaliser, used to derive independent seeds.
std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b);

}  // namespace avec

#endif  // AVECTOR_PRESETS_HPP
