#ifndef AVECTOR_GRID_HPP
#define AVECTOR_GRID_HPP

#include <array>
#include <cstddef>
#include <cstdlib>
#include <numbers>
#include <string>

namespace avec
{

//
// Uniform periodic grid on [0, 2π)^3. Coefficients and samples are stored row-major with
// the first axis slowest. A planar grid has a single point along the third axis and is
// used by the reduced two-dimensional solver; its third wavenumber is always zero.
//
class Grid
{
public:
  using Dims = std::array<std::size_t, 3>;

  Grid(std::size_t n1, std::size_t n2, std::size_t n3);
  explicit Grid(std::size_t n) : Grid(n, n, n) {}

  static Grid planar(std::size_t n1, std::size_t n2);

  const Dims &dims() const { return dims_; }
  std::size_t dim(int axis) const { return dims_[axis]; }
  std::size_t size() const { return dims_[0] * dims_[1] * dims_[2]; }
  bool is_planar() const { return dims_[2] == 1; }

  static constexpr double period = 2.0 * std::numbers::pi;
  double spacing(int axis) const { return period / static_cast<double>(dims_[axis]); }

  // Signed wavenumber of storage index i along an axis; the Nyquist index maps to +N/2.
  int wavenumber(int axis, std::size_t i) const
  {
    const auto n = dims_[axis];
    return i <= n / 2 ? static_cast<int>(i) : static_cast<int>(i) - static_cast<int>(n);
  }

  // Wavenumber used by odd (derivative) multipliers: zero on the Nyquist plane so that
  // derivatives of real fields stay real.
  int derivative_wavenumber(int axis, std::size_t i) const
  {
    const auto n = dims_[axis];
    if (n > 1 && 2 * i == n)
    {
      return 0;
    }
    return wavenumber(axis, i);
  }

  bool is_nyquist(int axis, std::size_t i) const
  {
    return dims_[axis] > 1 && 2 * i == dims_[axis];
  }

  // Storage index of a signed wavenumber (taken modulo N).
  std::size_t index_of(int axis, int k) const
  {
    const auto n = static_cast<long>(dims_[axis]);
    long m = k % n;
    if (m < 0)
    {
      m += n;
    }
    return static_cast<std::size_t>(m);
  }

  std::size_t flat(std::size_t i, std::size_t j, std::size_t l) const
  {
    return (i * dims_[1] + j) * dims_[2] + l;
  }

  std::array<std::size_t, 3> unflat(std::size_t idx) const
  {
    const std::size_t l = idx % dims_[2];
    const std::size_t j = (idx / dims_[2]) % dims_[1];
    const std::size_t i = idx / (dims_[1] * dims_[2]);
    return {i, j, l};
  }

  std::array<int, 3> wavevector(std::size_t idx) const
  {
    const auto [i, j, l] = unflat(idx);
    return {wavenumber(0, i), wavenumber(1, j), wavenumber(2, l)};
  }

  // Flat index of the mode -k (Hermitian partner).
  std::size_t mirror(std::size_t idx) const
  {
    const auto [i, j, l] = unflat(idx);
    auto neg = [](std::size_t a, std::size_t n) { return a == 0 ? 0 : n - a; };
    return flat(neg(i, dims_[0]), neg(j, dims_[1]), neg(l, dims_[2]));
  }

  // 2/3-rule band: |k_i| <= N_i / 3 on every axis.
  bool in_dealias_band(std::size_t idx) const
  {
    const auto k = wavevector(idx);
    for (int a = 0; a < 3; ++a)
    {
      if (3 * std::abs(k[a]) > static_cast<int>(dims_[a]))
      {
        return false;
      }
    }
    return true;
  }

  std::string describe() const;

  friend bool operator==(const Grid &, const Grid &) = default;

private:
  Grid(const Dims &dims, bool planar);
  Dims dims_;
};

}  // namespace avec

#endif  // AVECTOR_GRID_HPP
