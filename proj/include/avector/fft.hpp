#ifndef AVECTOR_FFT_HPP
#define AVECTOR_FFT_HPP

#include <memory>
#include <span>

#include "avector/field.hpp"

namespace avec
{

//
// FFTW-backed transforms for one grid. Plans are created once per grid (FFTW_ESTIMATE, so
// the chosen algorithm and hence every output bit is reproducible from run to run) and are
// shared process-wide; executing them is thread-safe.
//
// Normalisation: forward(f) returns c_k = N^{-1} sum_x f(x) exp(-i k.x); inverse evaluates
// sum_k c_k exp(i k.x) and keeps the real part.
//
class FourierTransform
{
public:
  static std::shared_ptr<const FourierTransform> for_grid(const Grid &grid);

  ~FourierTransform();
  FourierTransform(const FourierTransform &) = delete;
  FourierTransform &operator=(const FourierTransform &) = delete;

  const Grid &grid() const { return grid_; }

  void forward(std::span<const double> physical, std::span<Complex> coeffs) const;
  void inverse(std::span<const Complex> coeffs, std::span<double> physical) const;

private:
  explicit FourierTransform(const Grid &grid);

  Grid grid_;
  void *forward_plan_ = nullptr;
  void *inverse_plan_ = nullptr;
};

ScalarField to_spectral(const PhysicalField &f);
PhysicalField to_physical(const ScalarField &f);
VectorField to_spectral(const PhysicalVector &f);
PhysicalVector to_physical(const VectorField &f);

// Samples of a field on a finer grid obtained by zero-padding the spectrum. Nyquist
// modes of the source are dropped. `factor` >= 1.
PhysicalField upsample(const ScalarField &f, std::size_t factor);

}  // namespace avec

#endif  // AVECTOR_FFT_HPP
