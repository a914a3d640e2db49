#include "avector/grid.hpp"

#include "avector/errors.hpp"

namespace avec
{

namespace
{

void check_axis(std::size_t n, int axis)
{
  if (n < 4 || n % 2 != 0)
  {
    throw StructuralError("grid axis " + std::to_string(axis) + " has " + std::to_string(n) +
                          " points; each axis needs an even count >= 4");
  }
}

}  // namespace

Grid::Grid(std::size_t n1, std::size_t n2, std::size_t n3) : dims_{n1, n2, n3}
{
  check_axis(n1, 0);
  check_axis(n2, 1);
  check_axis(n3, 2);
}

Grid::Grid(const Dims &dims, bool) : dims_(dims) {}

Grid Grid::planar(std::size_t n1, std::size_t n2)
{
  check_axis(n1, 0);
  check_axis(n2, 1);
  return Grid(Dims{n1, n2, 1}, true);
}

std::string Grid::describe() const
{
  if (is_planar())
  {
    return std::to_string(dims_[0]) + "x" + std::to_string(dims_[1]);
  }
  return std::to_string(dims_[0]) + "x" + std::to_string(dims_[1]) + "x" +
         std::to_string(dims_[2]);
}

}  // namespace avec
