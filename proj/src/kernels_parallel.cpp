#include <algorithm>
#include <cmath>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "avector/kernels.hpp"

namespace avec::kernels
{

namespace
{

int g_threads = 0;  // 0: OpenMP default

std::size_t chunk_count(std::size_t n) { return (n + reduction_chunk - 1) / reduction_chunk; }

// Chunked reduction with a fixed combination order.
template <typename ChunkSum>
double chunked_sum(std::size_t n, ChunkSum &&chunk_sum)
{
  const std::size_t chunks = chunk_count(n);
  std::vector<double> partial(chunks, 0.0);
  const long nc = static_cast<long>(chunks);
#pragma omp parallel for schedule(static)
  for (long c = 0; c < nc; ++c)
  {
    const std::size_t lo = static_cast<std::size_t>(c) * reduction_chunk;
    const std::size_t hi = std::min(n, lo + reduction_chunk);
    partial[static_cast<std::size_t>(c)] = chunk_sum(lo, hi);
  }
  double total = 0.0;
  for (double v : partial)
  {
    total += v;
  }
  return total;
}

}  // namespace

void set_threads(int n)
{
  g_threads = n;
#ifdef _OPENMP
  if (n > 0)
  {
    omp_set_num_threads(n);
  }
#endif
}

int threads()
{
#ifdef _OPENMP
  return g_threads > 0 ? g_threads : omp_get_max_threads();
#else
  return 1;
#endif
}

namespace parallel
{

void scale_modes(std::span<const double> w, std::span<const Complex> in, std::span<Complex> out)
{
  const long n = static_cast<long>(in.size());
#pragma omp parallel for schedule(static)
  for (long i = 0; i < n; ++i)
  {
    out[i] = w[i] * in[i];
  }
}

void scale_modes_imag(std::span<const double> w, std::span<const Complex> in,
                      std::span<Complex> out)
{
  const long n = static_cast<long>(in.size());
#pragma omp parallel for schedule(static)
  for (long i = 0; i < n; ++i)
  {
    out[i] = Complex(-w[i] * in[i].imag(), w[i] * in[i].real());
  }
}

void curl_modes(const ConstReal3 &k, const ConstModes3 &f, const Modes3 &out)
{
  const long n = static_cast<long>(f[0].size());
  const Complex I(0.0, 1.0);
#pragma omp parallel for schedule(static)
  for (long i = 0; i < n; ++i)
  {
    const Complex x = I * (k[1][i] * f[2][i] - k[2][i] * f[1][i]);
    const Complex y = I * (k[2][i] * f[0][i] - k[0][i] * f[2][i]);
    const Complex z = I * (k[0][i] * f[1][i] - k[1][i] * f[0][i]);
    out[0][i] = x;
    out[1][i] = y;
    out[2][i] = z;
  }
}

void divergence_modes(const ConstReal3 &k, const ConstModes3 &f, std::span<Complex> out)
{
  const long n = static_cast<long>(f[0].size());
  const Complex I(0.0, 1.0);
#pragma omp parallel for schedule(static)
  for (long i = 0; i < n; ++i)
  {
    out[i] = I * (k[0][i] * f[0][i] + k[1][i] * f[1][i] + k[2][i] * f[2][i]);
  }
}

void leray_modes(const ConstReal3 &k, const ConstModes3 &f, const Modes3 &out)
{
  const long n = static_cast<long>(f[0].size());
#pragma omp parallel for schedule(static)
  for (long i = 0; i < n; ++i)
  {
    const double k2 = k[0][i] * k[0][i] + k[1][i] * k[1][i] + k[2][i] * k[2][i];
    if (k2 == 0.0)
    {
      for (int d = 0; d < 3; ++d)
      {
        out[d][i] = f[d][i];
      }
      continue;
    }
    const Complex kf = (k[0][i] * f[0][i] + k[1][i] * f[1][i] + k[2][i] * f[2][i]) / k2;
    for (int d = 0; d < 3; ++d)
    {
      out[d][i] = f[d][i] - k[d][i] * kf;
    }
  }
}

void cross(const ConstReal3 &a, const ConstReal3 &b, const Real3 &out)
{
  const long n = static_cast<long>(a[0].size());
#pragma omp parallel for schedule(static)
  for (long i = 0; i < n; ++i)
  {
    const double x = a[1][i] * b[2][i] - a[2][i] * b[1][i];
    const double y = a[2][i] * b[0][i] - a[0][i] * b[2][i];
    const double z = a[0][i] * b[1][i] - a[1][i] * b[0][i];
    out[0][i] = x;
    out[1][i] = y;
    out[2][i] = z;
  }
}

void dot(const ConstReal3 &a, const ConstReal3 &b, std::span<double> out)
{
  const long n = static_cast<long>(a[0].size());
#pragma omp parallel for schedule(static)
  for (long i = 0; i < n; ++i)
  {
    out[i] = a[0][i] * b[0][i] + a[1][i] * b[1][i] + a[2][i] * b[2][i];
  }
}

void multiply(std::span<const double> a, std::span<const double> b, std::span<double> out)
{
  const long n = static_cast<long>(a.size());
#pragma omp parallel for schedule(static)
  for (long i = 0; i < n; ++i)
  {
    out[i] = a[i] * b[i];
  }
}

double weighted_norm2(std::span<const double> w, std::span<const Complex> c)
{
  return chunked_sum(c.size(), [&](std::size_t lo, std::size_t hi) {
    double s = 0.0;
    for (std::size_t i = lo; i < hi; ++i)
    {
      s += w[i] * std::norm(c[i]);
    }
    return s;
  });
}

double weighted_abs_sum(std::span<const double> w, std::span<const Complex> c)
{
  return chunked_sum(c.size(), [&](std::size_t lo, std::size_t hi) {
    double s = 0.0;
    for (std::size_t i = lo; i < hi; ++i)
    {
      s += w[i] * std::abs(c[i]);
    }
    return s;
  });
}

double weighted_inner(std::span<const double> w, std::span<const Complex> a,
                      std::span<const Complex> b)
{
  return chunked_sum(a.size(), [&](std::size_t lo, std::size_t hi) {
    double s = 0.0;
    for (std::size_t i = lo; i < hi; ++i)
    {
      s += w[i] * (a[i].real() * b[i].real() + a[i].imag() * b[i].imag());
    }
    return s;
  });
}

double max_abs(std::span<const double> v)
{
  double worst = 0.0;
  const long n = static_cast<long>(v.size());
#pragma omp parallel for schedule(static) reduction(max : worst)
  for (long i = 0; i < n; ++i)
  {
    worst = std::max(worst, std::abs(v[i]));
  }
  return worst;
}

void lattice_commutator(const CommutatorProblem &p, const Modes3 &out)
{
  const int K = p.input_half;
  const int L = 2 * K;
  const long E = 2 * L + 1;
  const long total = E * E * E;
  const int n_out = p.contract ? 1 : 3;
#pragma omp parallel for schedule(dynamic, 16)
  for (long flat = 0; flat < total; ++flat)
  {
    const int x1 = static_cast<int>(flat / (E * E)) - L;
    const int x2 = static_cast<int>((flat / E) % E) - L;
    const int x3 = static_cast<int>(flat % E) - L;
    const std::size_t oi = static_cast<std::size_t>(flat);
    const double m_xi = p.m_out[oi];
    Complex acc[3] = {};
    // Only η with ξ - η inside the input box contribute.
    const int lo1 = std::max(-K, x1 - K), hi1 = std::min(K, x1 + K);
    const int lo2 = std::max(-K, x2 - K), hi2 = std::min(K, x2 + K);
    const int lo3 = std::max(-K, x3 - K), hi3 = std::min(K, x3 + K);
    for (int e1 = lo1; e1 <= hi1; ++e1)
    {
      for (int e2 = lo2; e2 <= hi2; ++e2)
      {
        std::size_t gi = box_index(K, e1, e2, lo3);
        std::size_t bi = box_index(K, x1 - e1, x2 - e2, x3 - lo3);
        for (int e3 = lo3; e3 <= hi3; ++e3, ++gi, --bi)
        {
          const double weight = m_xi - p.m_in[gi];
          // iη g(η) without forming i explicitly
          const Complex g = p.g[gi];
          const Complex ig(-g.imag() * weight, g.real() * weight);
          if (p.contract)
          {
            const Complex bdot = p.b[0][bi] * double(e1) + p.b[1][bi] * double(e2) +
                                 p.b[2][bi] * double(e3);
            acc[0] += bdot * ig;
          }
          else
          {
            const Complex bg = p.b[0][bi] * ig;
            acc[0] += double(e1) * bg;
            acc[1] += double(e2) * bg;
            acc[2] += double(e3) * bg;
          }
        }
      }
    }
    for (int d = 0; d < n_out; ++d)
    {
      out[d][oi] = p.pre_out[oi] * acc[d];
    }
  }
}

}  // namespace parallel

}  // namespace avec::kernels
