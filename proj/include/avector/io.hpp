#ifndef AVECTOR_IO_HPP
#define AVECTOR_IO_HPP

#include <string>
#include <vector>

#include "avector/dynamics2d.hpp"
#include "avector/field.hpp"
#include "avector/lagrangian.hpp"

namespace avec
{

//
// Snapshot files. "AVEC1": magic, grid dims as three little-endian u64, then for each of the
// three components the coefficients in row-major lattice order as little-endian f64 pairs
// (real, imaginary). "AVEC2" is the same layout for a planar grid (third dim 1) holding the
// two scalars bz and j.
//
void write_snapshot(const std::string &path, const VectorField &b);
VectorField read_snapshot(const std::string &path);

void write_reduced_snapshot(const std::string &path, const ReducedState &s);
// t is not stored; it is returned as 0.
ReducedState read_reduced_snapshot(const std::string &path);

// "AVEC1" or "AVEC2"; throws FormatError otherwise.
std::string snapshot_magic(const std::string &path);

// Points from a CSV file with header "s,x,y,z" (s nondecreasing).
std::vector<Vec3> read_points_csv(const std::string &path);
void write_points_csv(const std::string &path, const std::vector<Vec3> &points);

// One row per seed: seed coordinates, position, ∇X (row-major) and det ∇X.
std::string flow_csv(const FlowMap &flow);

void write_text(const std::string &path, const std::string &text);
std::string read_text(const std::string &path);

}  // namespace avec

#endif  // AVECTOR_IO_HPP
