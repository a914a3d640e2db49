#ifndef AVECTOR_ESTIMATES_HPP
#define AVECTOR_ESTIMATES_HPP

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "avector/field.hpp"
#include "avector/multipliers.hpp"

namespace avec
{

//
// Commutator bilinear forms
//
//   C(b, g)^(ξ) = pre(|ξ|) Σ_η (m(|ξ|) - m(|η|)) b^(ξ-η) iη g^(η)
//
// evaluated exactly on the lattice. Inputs live on a grid of at most 16 points per axis
// and must be band-limited to |k_i| <= K = N/3; the output is supported on |ξ_i| <= 2K and
// is returned on the cubic grid of size 4K + 2, where it is alias-free.
//
struct CommutatorSymbol
{
  std::function<double(double)> pre;
  std::function<double(double)> m;
};

// Λ^{p}[Γ^{1/2}, b]∇g:  pre = |ξ|^p, m = γ^{1/2}.
CommutatorSymbol comm1_symbol(const MultiplierSpec &spec, double half_power = 0.5);
// Λ^{a/2}[Λ^{-a/2}, b]∇g.
CommutatorSymbol comm3_symbol(double a);
// [Λ^s, f.∇]g.
CommutatorSymbol comm4_symbol(double s);

inline constexpr std::size_t exact_convolution_cap = 16;

// Scalar b: the three components correspond to the three directions of ∇g.
VectorField commutator_field(const CommutatorSymbol &sym, const ScalarField &b,
                             const ScalarField &g);
VectorField commutator_field(const MultiplierSpec &spec, const ScalarField &b,
                             const ScalarField &g, double half_power = 0.5);
// Vector f contracted with ∇g.
ScalarField commutator_field(const CommutatorSymbol &sym, const VectorField &f,
                             const ScalarField &g);

// Same forms through pseudo-spectral products on the output grid (independent path).
VectorField commutator_field_fft(const CommutatorSymbol &sym, const ScalarField &b,
                                 const ScalarField &g);
ScalarField commutator_field_fft(const CommutatorSymbol &sym, const VectorField &f,
                                 const ScalarField &g);

// Serial reference of the exact convolution, for testing the parallel kernel.
VectorField commutator_field_serial(const CommutatorSymbol &sym, const ScalarField &b,
                                    const ScalarField &g);

// Output grid for inputs on `input`.
Grid commutator_output_grid(const Grid &input);

struct EstimateSample
{
  std::size_t resolution = 0;
  std::size_t sample = 0;
  double ratio = 0.0;
};

struct EstimateReport
{
  std::string name;
  std::uint64_t seed = 0;
  std::size_t samples = 0;
  std::size_t degenerate = 0;
  double max_ratio = 0.0;
  std::vector<std::size_t> resolutions;
  std::vector<double> ratio_by_resolution;
  std::vector<EstimateSample> rows;
  // comm1: the low-frequency (P_{<1}) ratio; embedding: unused.
  double secondary_max = 0.0;
  // embedding: samples with |∇f|_∞ > |f|_{Y^1}.
  std::size_t violations = 0;
  bool all_finite = true;

  // Largest relative change of the per-resolution maxima between consecutive resolutions.
  double resolution_spread() const;
  std::string csv() const;
  std::string summary() const;
};

struct EnsembleOptions
{
  std::size_t samples = 100;
  std::vector<std::size_t> resolutions{8, 16};
  std::uint64_t seed = 1;
  double decay = 3.0;
  // Set to 0 to produce the degenerate b = 0 ensemble.
  double b_scale = 1.0;
};

EstimateReport verify_comm1(const MultiplierSpec &spec, const EnsembleOptions &opt);
EstimateReport verify_comm3(double a, const EnsembleOptions &opt);
EstimateReport verify_comm4(double s, const EnsembleOptions &opt);
// Uses opt.resolutions.front() unless several are given.
EstimateReport verify_embedding(double s, const EnsembleOptions &opt);
// |B|_{Y^1} / (|B|_{H^{5/2}} log(10 + |B|_{H^s})) over solenoidal random fields.
EstimateReport log_sobolev_ensemble(double s, const EnsembleOptions &opt);

}  // namespace avec

#endif  // AVECTOR_ESTIMATES_HPP
