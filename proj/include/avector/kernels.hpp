#ifndef AVECTOR_KERNELS_HPP
#define AVECTOR_KERNELS_HPP

#include <array>
#include <complex>
#include <cstddef>
#include <span>

namespace avec::kernels
{

using Complex = std::complex<double>;

using ConstReal3 = std::array<std::span<const double>, 3>;
using Real3 = std::array<std::span<double>, 3>;
using ConstModes3 = std::array<std::span<const Complex>, 3>;
using Modes3 = std::array<std::span<Complex>, 3>;

// Reductions in the parallel namespace are accumulated per fixed-size chunk and the chunk
// partials are then summed in chunk order, so the result does not depend on the thread
// count. The serial reference sums left to right and may differ in the last bits.
inline constexpr std::size_t reduction_chunk = 4096;

//
// Exact lattice evaluation of the commutator bilinear form
//
//   out(ξ) = pre(|ξ|) Σ_η (m(|ξ|) - m(|η|)) b(ξ-η) iη g(η)
//
// Inputs are dense on the box [-K, K]^3 (K = input_half), the output on [-2K, 2K]^3.
// With `contract` set, b has three components and the output is the single component
// Σ_d b_d(ξ-η) iη_d g(η); otherwise b is scalar and the three outputs are the
// components of the gradient direction.
//
struct CommutatorProblem
{
  int input_half = 0;
  bool contract = false;
  std::array<std::span<const Complex>, 3> b;
  std::span<const Complex> g;
  std::span<const double> m_in;
  std::span<const double> m_out;
  std::span<const double> pre_out;
};

inline std::size_t box_extent(int half) { return static_cast<std::size_t>(2 * half + 1); }
inline std::size_t box_size(int half)
{
  const auto e = box_extent(half);
  return e * e * e;
}
inline std::size_t box_index(int half, int k1, int k2, int k3)
{
  const auto e = static_cast<long>(2 * half + 1);
  return static_cast<std::size_t>(((k1 + half) * e + (k2 + half)) * e + (k3 + half));
}

#define AVECTOR_KERNEL_DECLARATIONS                                                          \
  /* out = w * in, mode by mode */                                                           \
  void scale_modes(std::span<const double> w, std::span<const Complex> in,                  \
                   std::span<Complex> out);                                                  \
  /* out = i w in */                                                                         \
  void scale_modes_imag(std::span<const double> w, std::span<const Complex> in,             \
                        std::span<Complex> out);                                             \
  /* out = i k x F */                                                                        \
  void curl_modes(const ConstReal3 &k, const ConstModes3 &f, const Modes3 &out);             \
  /* out = i k . F */                                                                        \
  void divergence_modes(const ConstReal3 &k, const ConstModes3 &f, std::span<Complex> out);  \
  /* F - k (k.F) / |k|^2 with the zero mode untouched */                                     \
  void leray_modes(const ConstReal3 &k, const ConstModes3 &f, const Modes3 &out);            \
  /* pointwise a x b */                                                                      \
  void cross(const ConstReal3 &a, const ConstReal3 &b, const Real3 &out);                    \
  /* pointwise sum_d a_d b_d */                                                              \
  void dot(const ConstReal3 &a, const ConstReal3 &b, std::span<double> out);                 \
  /* pointwise a * b */                                                                      \
  void multiply(std::span<const double> a, std::span<const double> b, std::span<double> out); \
  /* sum_k w_k |c_k|^2 */                                                                    \
  double weighted_norm2(std::span<const double> w, std::span<const Complex> c);              \
  /* sum_k w_k |c_k| */                                                                      \
  double weighted_abs_sum(std::span<const double> w, std::span<const Complex> c);            \
  /* Re sum_k w_k conj(a_k) b_k */                                                           \
  double weighted_inner(std::span<const double> w, std::span<const Complex> a,               \
                        std::span<const Complex> b);                                         \
  double max_abs(std::span<const double> v);                                                 \
  void lattice_commutator(const CommutatorProblem &p, const Modes3 &out);

namespace serial
{
AVECTOR_KERNEL_DECLARATIONS
}  // namespace serial

namespace parallel
{
AVECTOR_KERNEL_DECLARATIONS
}  // namespace parallel

#undef AVECTOR_KERNEL_DECLARATIONS

// Thread count used by the parallel kernels (OpenMP); 1 when built without OpenMP.
void set_threads(int n);
int threads();

}  // namespace avec::kernels

#endif  // AVECTOR_KERNELS_HPP
