#include "avector/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <vector>

#include "avector/errors.hpp"

namespace avec
{

namespace
{

std::mutex &plan_mutex()
{
  static std::mutex m;
  return m;
}

fftw_complex *as_fftw(Complex *p) { return reinterpret_cast<fftw_complex *>(p); }

}  // namespace

std::shared_ptr<const FourierTransform> FourierTransform::for_grid(const Grid &grid)
{
  // Lock first so the mutex outlives the cache at static destruction.
  std::lock_guard lock(plan_mutex());
  static std::map<Grid::Dims, std::shared_ptr<const FourierTransform>> cache;
  auto it = cache.find(grid.dims());
  if (it != cache.end())
  {
    return it->second;
  }
  std::shared_ptr<const FourierTransform> t(new FourierTransform(grid));
  cache.emplace(grid.dims(), t);
  return t;
}

// Called with plan_mutex held (FFTW's planner is not re-entrant).
FourierTransform::FourierTransform(const Grid &grid) : grid_(grid)
{
  const auto &d = grid.dims();
  std::vector<Complex> a(grid.size()), b(grid.size());
  const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED | FFTW_PRESERVE_INPUT;
  forward_plan_ = fftw_plan_dft_3d(static_cast<int>(d[0]), static_cast<int>(d[1]),
                                   static_cast<int>(d[2]), as_fftw(a.data()), as_fftw(b.data()),
                                   FFTW_FORWARD, flags);
  inverse_plan_ = fftw_plan_dft_3d(static_cast<int>(d[0]), static_cast<int>(d[1]),
                                   static_cast<int>(d[2]), as_fftw(a.data()), as_fftw(b.data()),
                                   FFTW_BACKWARD, flags);
  if (forward_plan_ == nullptr || inverse_plan_ == nullptr)
  {
    throw Error("FFTW could not plan a transform for grid " + grid.describe());
  }
}

FourierTransform::~FourierTransform()
{
  std::lock_guard lock(plan_mutex());
  fftw_destroy_plan(static_cast<fftw_plan>(forward_plan_));
  fftw_destroy_plan(static_cast<fftw_plan>(inverse_plan_));
}

void FourierTransform::forward(std::span<const double> physical, std::span<Complex> coeffs) const
{
  const std::size_t n = grid_.size();
  std::vector<Complex> in(n);
  for (std::size_t i = 0; i < n; ++i)
  {
    in[i] = Complex(physical[i], 0.0);
  }
  fftw_execute_dft(static_cast<fftw_plan>(forward_plan_), as_fftw(in.data()),
                   as_fftw(coeffs.data()));
  const double scale = 1.0 / static_cast<double>(n);
  for (auto &c : coeffs)
  {
    c *= scale;
  }
}

void FourierTransform::inverse(std::span<const Complex> coeffs, std::span<double> physical) const
{
  const std::size_t n = grid_.size();
  std::vector<Complex> out(n);
  fftw_execute_dft(static_cast<fftw_plan>(inverse_plan_),
                   as_fftw(const_cast<Complex *>(coeffs.data())), as_fftw(out.data()));
  for (std::size_t i = 0; i < n; ++i)
  {
    physical[i] = out[i].real();
  }
}

ScalarField to_spectral(const PhysicalField &f)
{
  ScalarField out(f.grid);
  FourierTransform::for_grid(f.grid)->forward(f.values, out.coeffs());
  return out;
}

PhysicalField to_physical(const ScalarField &f)
{
  PhysicalField out(f.grid());
  FourierTransform::for_grid(f.grid())->inverse(f.coeffs(), out.values);
  return out;
}

VectorField to_spectral(const PhysicalVector &f)
{
  return VectorField(to_spectral(f[0]), to_spectral(f[1]), to_spectral(f[2]));
}

PhysicalVector to_physical(const VectorField &f)
{
  return {to_physical(f[0]), to_physical(f[1]), to_physical(f[2])};
}

PhysicalField upsample(const ScalarField &f, std::size_t factor)
{
  if (factor == 0)
  {
    throw DomainError("upsample factor must be >= 1");
  }
  if (factor == 1)
  {
    return to_physical(f);
  }
  const Grid &g = f.grid();
  const Grid fine = g.is_planar() ? Grid::planar(g.dim(0) * factor, g.dim(1) * factor)
                                  : Grid(g.dim(0) * factor, g.dim(1) * factor, g.dim(2) * factor);
  ScalarField padded(fine);
  for (std::size_t idx = 0; idx < g.size(); ++idx)
  {
    const auto [i, j, l] = g.unflat(idx);
    if (g.is_nyquist(0, i) || g.is_nyquist(1, j) || g.is_nyquist(2, l))
    {
      continue;
    }
    const auto k = g.wavevector(idx);
    padded.set(k[0], k[1], k[2], f[idx]);
  }
  return to_physical(padded);
}

}  // namespace avec
