#ifndef AVECTOR_LAGRANGIAN_HPP
#define AVECTOR_LAGRANGIAN_HPP

#include <array>
#include <memory>
#include <string>
#include <vector>

#include "avector/dynamics3d.hpp"
#include "avector/field.hpp"
#include "avector/multipliers.hpp"

namespace avec
{

using Vec3 = std::array<double, 3>;
// Row-major 3x3 matrix, M[3 * i + j].
using Mat3 = std::array<double, 9>;

enum class Interpolation
{
  trilinear,  // O(h^2)
  tricubic,   // 4-point Lagrange per axis, O(h^4)
  exact       // direct Fourier sum over the nonzero modes
};

Interpolation parse_interpolation(const std::string &name);
std::string to_string(Interpolation kind);

struct SamplingOptions
{
  Interpolation kind = Interpolation::trilinear;
  // The physical samples are taken on a grid `refine` times finer, obtained by spectral
  // zero-padding. Ignored for exact evaluation.
  std::size_t refine = 1;
};

// Off-grid evaluation of a vector field and, optionally, of its gradient.
class FieldSampler
{
public:
  FieldSampler(const VectorField &f, bool with_gradient, const SamplingOptions &opt);

  Vec3 value(const Vec3 &x) const;
  // J[3 * i + j] = ∂_j f_i
  Mat3 gradient(const Vec3 &x) const;

private:
  struct Mode
  {
    std::array<double, 3> k;
    Complex c;
  };
  double sample(std::size_t which, const Vec3 &x) const;

  SamplingOptions opt_;
  Grid grid_;
  bool with_gradient_;
  // 3 value components followed by 9 gradient components.
  std::vector<std::vector<double>> samples_;
  std::vector<std::vector<Mode>> modes_;
};

//
// The velocity V = -∇xΓB along a run. Either steady or a list of snapshots; stage times
// requested by the integrator must coincide with snapshot times.
//
class FieldTrajectory
{
public:
  static FieldTrajectory steady(const MultiplierSpec &spec, const VectorField &b,
                                const SamplingOptions &opt = {});
  static FieldTrajectory from_snapshots(const MultiplierSpec &spec,
                                        const std::vector<SimState> &snapshots,
                                        const SamplingOptions &opt = {});

  bool is_steady() const { return times_.empty(); }
  const FieldSampler &velocity_at(double t) const;

private:
  std::vector<double> times_;
  std::vector<std::shared_ptr<const FieldSampler>> samplers_;
};

struct FlowMap
{
  double t = 0.0;
  std::vector<Vec3> seeds;
  // Unwrapped positions X(t, α) (not reduced modulo 2π).
  std::vector<Vec3> positions;
  // ∇X(t, α)
  std::vector<Mat3> grads;
};

FlowMap identity_map(const std::vector<Vec3> &seeds);

// RK4 for X' = V(t, X), F' = ∇V(t, X) F. Each step uses V at t, t + dt/2 and t + dt, so a
// snapshot trajectory must hold snapshots every dt/2.
FlowMap advect(const FieldTrajectory &traj, const std::vector<Vec3> &seeds, double t_end,
               double dt);

double det3(const Mat3 &m);
double max_det_defect(const FlowMap &flow);

// max over seeds of |B_t(X(t, α)) - ∇X(t, α) B_0(α)|.
double cauchy_residual(const FlowMap &flow, const VectorField &b0, const VectorField &bt,
                       const SamplingOptions &opt = {});

//
// A closed curve given by samples η(s_i), s_i = i / M, i = 0..M, where the last sample
// repeats the first up to a lattice translation 2π m (the winding of the curve).
//
struct ClosedCurve
{
  std::vector<Vec3> points;
  // Throws DomainError if the curve does not close; returns the winding vector 2π m.
  Vec3 winding() const;
  // The M distinct samples.
  std::vector<Vec3> samples() const;
};

struct AlignmentReport
{
  double max_misalignment = 0.0;  // max sin(angle(∂_s X, B))
  std::size_t checked = 0;
  std::size_t skipped = 0;  // samples where |B| is negligible
};

// Alignment of a sampled closed curve with a field (tangents by 4th-order periodic
// differences in s).
AlignmentReport curve_alignment(const std::vector<Vec3> &samples, const Vec3 &winding,
                                const VectorField &b, const SamplingOptions &opt = {});

// Advects the curve samples with the flow (whose seeds must be curve.samples()) and checks
// alignment of the transported curve with B_t.
AlignmentReport transport_integral_curve(const FlowMap &flow, const ClosedCurve &curve,
                                         const VectorField &bt, const SamplingOptions &opt = {});

}  // namespace avec

#endif  // AVECTOR_LAGRANGIAN_HPP
