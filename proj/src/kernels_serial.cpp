// Reference implementations. Plain loops, no threading; tests hold the parallel versions
// to these.

#include <algorithm>
#include <cmath>

#include "avector/kernels.hpp"

namespace avec::kernels::serial
{

void scale_modes(std::span<const double> w, std::span<const Complex> in, std::span<Complex> out)
{
  for (std::size_t i = 0; i < in.size(); ++i)
  {
    out[i] = w[i] * in[i];
  }
}

void scale_modes_imag(std::span<const double> w, std::span<const Complex> in,
                      std::span<Complex> out)
{
  for (std::size_t i = 0; i < in.size(); ++i)
  {
    out[i] = Complex(-w[i] * in[i].imag(), w[i] * in[i].real());
  }
}

void curl_modes(const ConstReal3 &k, const ConstModes3 &f, const Modes3 &out)
{
  const Complex I(0.0, 1.0);
  for (std::size_t i = 0; i < f[0].size(); ++i)
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
  const Complex I(0.0, 1.0);
  for (std::size_t i = 0; i < f[0].size(); ++i)
  {
    out[i] = I * (k[0][i] * f[0][i] + k[1][i] * f[1][i] + k[2][i] * f[2][i]);
  }
}

void leray_modes(const ConstReal3 &k, const ConstModes3 &f, const Modes3 &out)
{
  for (std::size_t i = 0; i < f[0].size(); ++i)
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
  for (std::size_t i = 0; i < a[0].size(); ++i)
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
  for (std::size_t i = 0; i < a[0].size(); ++i)
  {
    out[i] = a[0][i] * b[0][i] + a[1][i] * b[1][i] + a[2][i] * b[2][i];
  }
}

void multiply(std::span<const double> a, std::span<const double> b, std::span<double> out)
{
  for (std::size_t i = 0; i < a.size(); ++i)
  {
    out[i] = a[i] * b[i];
  }
}

double weighted_norm2(std::span<const double> w, std::span<const Complex> c)
{
  double sum = 0.0;
  for (std::size_t i = 0; i < c.size(); ++i)
  {
    sum += w[i] * std::norm(c[i]);
  }
  return sum;
}

double weighted_abs_sum(std::span<const double> w, std::span<const Complex> c)
{
  double sum = 0.0;
  for (std::size_t i = 0; i < c.size(); ++i)
  {
    sum += w[i] * std::abs(c[i]);
  }
  return sum;
}

double weighted_inner(std::span<const double> w, std::span<const Complex> a,
                      std::span<const Complex> b)
{
  double sum = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i)
  {
    sum += w[i] * (a[i].real() * b[i].real() + a[i].imag() * b[i].imag());
  }
  return sum;
}

double max_abs(std::span<const double> v)
{
  double worst = 0.0;
  for (double x : v)
  {
    worst = std::max(worst, std::abs(x));
  }
  return worst;
}

void lattice_commutator(const CommutatorProblem &p, const Modes3 &out)
{
  const int K = p.input_half;
  const int L = 2 * K;
  const int n_out = p.contract ? 1 : 3;
  for (int x1 = -L; x1 <= L; ++x1)
  {
    for (int x2 = -L; x2 <= L; ++x2)
    {
      for (int x3 = -L; x3 <= L; ++x3)
      {
        const std::size_t oi = box_index(L, x1, x2, x3);
        Complex acc[3] = {};
        for (int e1 = -K; e1 <= K; ++e1)
        {
          for (int e2 = -K; e2 <= K; ++e2)
          {
            for (int e3 = -K; e3 <= K; ++e3)
            {
              const int p1 = x1 - e1, p2 = x2 - e2, p3 = x3 - e3;
              if (std::abs(p1) > K || std::abs(p2) > K || std::abs(p3) > K)
              {
                continue;
              }
              const std::size_t gi = box_index(K, e1, e2, e3);
              const std::size_t bi = box_index(K, p1, p2, p3);
              const double weight = p.m_out[oi] - p.m_in[gi];
              const Complex ig = Complex(0.0, 1.0) * p.g[gi];
              const double eta[3] = {double(e1), double(e2), double(e3)};
              if (p.contract)
              {
                acc[0] += weight * (p.b[0][bi] * eta[0] + p.b[1][bi] * eta[1] +
                                    p.b[2][bi] * eta[2]) * ig;
              }
              else
              {
                for (int d = 0; d < 3; ++d)
                {
                  acc[d] += weight * p.b[0][bi] * eta[d] * ig;
                }
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
  }
}

}  // namespace avec::kernels::serial
