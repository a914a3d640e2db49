#include "avector/lagrangian.hpp"

#include <cmath>

#include "avector/errors.hpp"
#include "avector/fft.hpp"
#include "avector/spectral.hpp"

namespace avec
{

Interpolation parse_interpolation(const std::string &name)
{
  if (name == "trilinear")
  {
    return Interpolation::trilinear;
  }
  if (name == "tricubic")
  {
    return Interpolation::tricubic;
  }
  if (name == "exact")
  {
    return Interpolation::exact;
  }
  throw ConfigError("unknown interpolation '" + name + "' (trilinear, tricubic, exact)");
}

std::string to_string(Interpolation kind)
{
  switch (kind)
  {
  case Interpolation::trilinear:
    return "trilinear";
  case Interpolation::tricubic:
    return "tricubic";
  case Interpolation::exact:
    return "exact";
  }
  return "?";
}

FieldSampler::FieldSampler(const VectorField &f, bool with_gradient, const SamplingOptions &opt)
    : opt_(opt), grid_(f.grid()), with_gradient_(with_gradient)
{
  if (f.grid().is_planar())
  {
    throw StructuralError("FieldSampler needs a 3D grid");
  }
  if (opt_.refine < 1)
  {
    throw ConfigError("sampling refinement must be >= 1");
  }
  std::vector<ScalarField> parts{f[0], f[1], f[2]};
  if (with_gradient)
  {
    for (int i = 0; i < 3; ++i)
    {
      for (int j = 0; j < 3; ++j)
      {
        parts.push_back(derivative(f[i], j));
      }
    }
  }
  if (opt_.kind == Interpolation::exact)
  {
    for (const auto &p : parts)
    {
      std::vector<Mode> modes;
      for (std::size_t idx = 0; idx < p.size(); ++idx)
      {
        if (p[idx] != Complex{})
        {
          const auto k = grid_.wavevector(idx);
          modes.push_back({{double(k[0]), double(k[1]), double(k[2])}, p[idx]});
        }
      }
      modes_.push_back(std::move(modes));
    }
    return;
  }
  const Grid::Dims d = grid_.dims();
  grid_ = Grid(d[0] * opt_.refine, d[1] * opt_.refine, d[2] * opt_.refine);
  for (const auto &p : parts)
  {
    samples_.push_back(upsample(p, opt_.refine).values);
  }
}

namespace
{

// Splits x into a cell index (mod n) and a fraction in [0, 1).
inline void locate(double x, std::size_t n, long &cell, double &frac)
{
  const double u = x / Grid::period * static_cast<double>(n);
  const double f = std::floor(u);
  frac = u - f;
  long c = static_cast<long>(f) % static_cast<long>(n);
  if (c < 0)
  {
    c += static_cast<long>(n);
  }
  cell = c;
}

inline std::size_t wrap(long i, std::size_t n)
{
  const long m = static_cast<long>(n);
  long r = i % m;
  return static_cast<std::size_t>(r < 0 ? r + m : r);
}

}  // namespace

double FieldSampler::sample(std::size_t which, const Vec3 &x) const
{
  if (opt_.kind == Interpolation::exact)
  {
    double acc = 0.0;
    for (const auto &m : modes_[which])
    {
      const double phase = m.k[0] * x[0] + m.k[1] * x[1] + m.k[2] * x[2];
      acc += m.c.real() * std::cos(phase) - m.c.imag() * std::sin(phase);
    }
    return acc;
  }
  const auto &v = samples_[which];
  const auto &d = grid_.dims();
  long c[3];
  double t[3];
  for (int a = 0; a < 3; ++a)
  {
    locate(x[a], d[a], c[a], t[a]);
  }
  if (opt_.kind == Interpolation::trilinear)
  {
    double acc = 0.0;
    for (int i = 0; i < 2; ++i)
    {
      const double wi = i ? t[0] : 1.0 - t[0];
      const std::size_t ii = wrap(c[0] + i, d[0]);
      for (int j = 0; j < 2; ++j)
      {
        const double wj = j ? t[1] : 1.0 - t[1];
        const std::size_t jj = wrap(c[1] + j, d[1]);
        for (int l = 0; l < 2; ++l)
        {
          const double wl = l ? t[2] : 1.0 - t[2];
          acc += wi * wj * wl * v[grid_.flat(ii, jj, wrap(c[2] + l, d[2]))];
        }
      }
    }
    return acc;
  }
  // Lagrange weights on nodes -1, 0, 1, 2.
  double w[3][4];
  for (int a = 0; a < 3; ++a)
  {
    const double s = t[a];
    w[a][0] = -s * (s - 1.0) * (s - 2.0) / 6.0;
    w[a][1] = (s + 1.0) * (s - 1.0) * (s - 2.0) / 2.0;
    w[a][2] = -(s + 1.0) * s * (s - 2.0) / 2.0;
    w[a][3] = (s + 1.0) * s * (s - 1.0) / 6.0;
  }
  double acc = 0.0;
  for (int i = 0; i < 4; ++i)
  {
    const std::size_t ii = wrap(c[0] + i - 1, d[0]);
    for (int j = 0; j < 4; ++j)
    {
      const std::size_t jj = wrap(c[1] + j - 1, d[1]);
      double row = 0.0;
      for (int l = 0; l < 4; ++l)
      {
        row += w[2][l] * v[grid_.flat(ii, jj, wrap(c[2] + l - 1, d[2]))];
      }
      acc += w[0][i] * w[1][j] * row;
    }
  }
  return acc;
}

Vec3 FieldSampler::value(const Vec3 &x) const
{
  return {sample(0, x), sample(1, x), sample(2, x)};
}

Mat3 FieldSampler::gradient(const Vec3 &x) const
{
  if (!with_gradient_)
  {
    throw Error("FieldSampler built without gradient");
  }
  Mat3 m;
  for (std::size_t i = 0; i < 9; ++i)
  {
    m[i] = sample(3 + i, x);
  }
  return m;
}

FieldTrajectory FieldTrajectory::steady(const MultiplierSpec &spec, const VectorField &b,
                                        const SamplingOptions &opt)
{
  FieldTrajectory t;
  t.samplers_.push_back(std::make_shared<FieldSampler>(compute_V(spec, b), true, opt));
  return t;
}

FieldTrajectory FieldTrajectory::from_snapshots(const MultiplierSpec &spec,
                                                const std::vector<SimState> &snapshots,
                                                const SamplingOptions &opt)
{
  if (snapshots.empty())
  {
    throw DomainError("FieldTrajectory needs at least one snapshot");
  }
  FieldTrajectory t;
  for (std::size_t i = 0; i < snapshots.size(); ++i)
  {
    if (i > 0 && !(snapshots[i].t > snapshots[i - 1].t))
    {
      throw DomainError("snapshots must be strictly increasing in time");
    }
    t.times_.push_back(snapshots[i].t);
    t.samplers_.push_back(std::make_shared<FieldSampler>(compute_V(spec, snapshots[i].B), true, opt));
  }
  return t;
}

const FieldSampler &FieldTrajectory::velocity_at(double t) const
{
  if (times_.empty())
  {
    return *samplers_.front();
  }
  const double tol = 1e-9 * (1.0 + std::abs(t));
  for (std::size_t i = 0; i < times_.size(); ++i)
  {
    if (std::abs(times_[i] - t) <= tol)
    {
      return *samplers_[i];
    }
  }
  throw DomainError("no snapshot at stage time t = " + std::to_string(t) +
                    "; snapshots must be written every dt/2 of the advection step");
}

FlowMap identity_map(const std::vector<Vec3> &seeds)
{
  FlowMap f;
  f.seeds = seeds;
  f.positions = seeds;
  f.grads.assign(seeds.size(), Mat3{1, 0, 0, 0, 1, 0, 0, 0, 1});
  return f;
}

namespace
{

struct Particle
{
  Vec3 x;
  Mat3 F;
};

Particle derivative_of(const FieldSampler &v, const Particle &p)
{
  Particle d;
  d.x = v.value(p.x);
  const Mat3 J = v.gradient(p.x);
  for (int i = 0; i < 3; ++i)
  {
    for (int j = 0; j < 3; ++j)
    {
      double s = 0.0;
      for (int k = 0; k < 3; ++k)
      {
        s += J[3 * i + k] * p.F[3 * k + j];
      }
      d.F[3 * i + j] = s;
    }
  }
  return d;
}

Particle shifted(const Particle &p, const Particle &d, double h)
{
  Particle q = p;
  for (int i = 0; i < 3; ++i)
  {
    q.x[i] += h * d.x[i];
  }
  for (int i = 0; i < 9; ++i)
  {
    q.F[i] += h * d.F[i];
  }
  return q;
}

}  // namespace

FlowMap advect(const FieldTrajectory &traj, const std::vector<Vec3> &seeds, double t_end,
               double dt)
{
  if (!(dt > 0.0) || !(t_end >= 0.0))
  {
    throw ConfigError("advect needs dt > 0 and t_end >= 0");
  }
  const long nsteps = std::lround(t_end / dt);
  if (std::abs(static_cast<double>(nsteps) * dt - t_end) > 1e-9 * std::max(1.0, t_end))
  {
    throw ConfigError("advect: t_end must be a whole number of steps");
  }
  FlowMap flow = identity_map(seeds);
  for (long n = 0; n < nsteps; ++n)
  {
    const double t0 = static_cast<double>(n) * dt;
    const FieldSampler &v0 = traj.velocity_at(t0);
    const FieldSampler &vh = traj.velocity_at(t0 + 0.5 * dt);
    const FieldSampler &v1 = traj.velocity_at(t0 + dt);
    const long count = static_cast<long>(seeds.size());
#pragma omp parallel for schedule(static)
    for (long s = 0; s < count; ++s)
    {
      const Particle p{flow.positions[s], flow.grads[s]};
      const Particle k1 = derivative_of(v0, p);
      const Particle k2 = derivative_of(vh, shifted(p, k1, 0.5 * dt));
      const Particle k3 = derivative_of(vh, shifted(p, k2, 0.5 * dt));
      const Particle k4 = derivative_of(v1, shifted(p, k3, dt));
      Particle q = p;
      for (int i = 0; i < 3; ++i)
      {
        q.x[i] += dt / 6.0 * (k1.x[i] + 2.0 * k2.x[i] + 2.0 * k3.x[i] + k4.x[i]);
      }
      for (int i = 0; i < 9; ++i)
      {
        q.F[i] += dt / 6.0 * (k1.F[i] + 2.0 * k2.F[i] + 2.0 * k3.F[i] + k4.F[i]);
      }
      flow.positions[s] = q.x;
      flow.grads[s] = q.F;
    }
  }
  flow.t = static_cast<double>(nsteps) * dt;
  return flow;
}

double det3(const Mat3 &m)
{
  return m[0] * (m[4] * m[8] - m[5] * m[7]) - m[1] * (m[3] * m[8] - m[5] * m[6]) +
         m[2] * (m[3] * m[7] - m[4] * m[6]);
}

double max_det_defect(const FlowMap &flow)
{
  double worst = 0.0;
  for (const auto &F : flow.grads)
  {
    worst = std::max(worst, std::abs(det3(F) - 1.0));
  }
  return worst;
}

double cauchy_residual(const FlowMap &flow, const VectorField &b0, const VectorField &bt,
                       const SamplingOptions &opt)
{
  if (flow.positions.size() != flow.seeds.size() || flow.grads.size() != flow.seeds.size())
  {
    throw DomainError("cauchy_residual: seed count does not match the flow map");
  }
  const FieldSampler s0(b0, false, opt);
  const FieldSampler st(bt, false, opt);
  double worst = 0.0;
  for (std::size_t p = 0; p < flow.seeds.size(); ++p)
  {
    const Vec3 a = s0.value(flow.seeds[p]);
    const Vec3 b = st.value(flow.positions[p]);
    const Mat3 &F = flow.grads[p];
    double e2 = 0.0;
    for (int i = 0; i < 3; ++i)
    {
      const double fb = F[3 * i] * a[0] + F[3 * i + 1] * a[1] + F[3 * i + 2] * a[2];
      e2 += (b[i] - fb) * (b[i] - fb);
    }
    worst = std::max(worst, std::sqrt(e2));
  }
  return worst;
}

Vec3 ClosedCurve::winding() const
{
  if (points.size() < 5)
  {
    throw DomainError("a closed curve needs at least 4 distinct samples");
  }
  const Vec3 &a = points.front();
  const Vec3 &b = points.back();
  Vec3 w;
  for (int i = 0; i < 3; ++i)
  {
    const double turns = (b[i] - a[i]) / Grid::period;
    const double m = std::round(turns);
    if (std::abs(turns - m) > 1e-9)
    {
      throw DomainError("curve is open: last sample does not repeat the first modulo 2π");
    }
    w[i] = m * Grid::period;
  }
  return w;
}

std::vector<Vec3> ClosedCurve::samples() const
{
  winding();
  return {points.begin(), points.end() - 1};
}

AlignmentReport curve_alignment(const std::vector<Vec3> &samples, const Vec3 &winding,
                                const VectorField &b, const SamplingOptions &opt)
{
  const std::size_t M = samples.size();
  if (M < 4)
  {
    throw DomainError("curve_alignment needs at least 4 samples");
  }
  const FieldSampler sb(b, false, opt);
  auto at = [&](long i) {
    const long m = static_cast<long>(M);
    const long q = (i >= 0 ? i / m : -((-i + m - 1) / m));
    const long r = i - q * m;
    Vec3 x = samples[static_cast<std::size_t>(r)];
    for (int a = 0; a < 3; ++a)
    {
      x[a] += static_cast<double>(q) * winding[a];
    }
    return x;
  };
  std::vector<Vec3> fields(M);
  double bmax = 0.0;
  for (std::size_t i = 0; i < M; ++i)
  {
    fields[i] = sb.value(samples[i]);
    bmax = std::max(bmax, std::hypot(fields[i][0], fields[i][1], fields[i][2]));
  }
  AlignmentReport rep;
  for (std::size_t i = 0; i < M; ++i)
  {
    const long k = static_cast<long>(i);
    const Vec3 xm2 = at(k - 2), xm1 = at(k - 1), xp1 = at(k + 1), xp2 = at(k + 2);
    Vec3 tan;
    for (int a = 0; a < 3; ++a)
    {
      tan[a] = (xm2[a] - 8.0 * xm1[a] + 8.0 * xp1[a] - xp2[a]) / 12.0;
    }
    const Vec3 &f = fields[i];
    const double nf = std::hypot(f[0], f[1], f[2]);
    const double nt = std::hypot(tan[0], tan[1], tan[2]);
    if (nf <= 1e-8 * bmax || nt == 0.0)
    {
      ++rep.skipped;
      continue;
    }
    const Vec3 c{tan[1] * f[2] - tan[2] * f[1], tan[2] * f[0] - tan[0] * f[2],
                 tan[0] * f[1] - tan[1] * f[0]};
    rep.max_misalignment = std::max(rep.max_misalignment, std::hypot(c[0], c[1], c[2]) / (nf * nt));
    ++rep.checked;
  }
  return rep;
}

AlignmentReport transport_integral_curve(const FlowMap &flow, const ClosedCurve &curve,
                                         const VectorField &bt, const SamplingOptions &opt)
{
  const Vec3 w = curve.winding();
  const auto s = curve.samples();
  if (s.size() != flow.seeds.size())
  {
    throw DomainError("transport_integral_curve: flow seeds are not the curve samples");
  }
  for (std::size_t i = 0; i < s.size(); ++i)
  {
    if (s[i] != flow.seeds[i])
    {
      throw DomainError("transport_integral_curve: flow seeds are not the curve samples");
    }
  }
  return curve_alignment(flow.positions, w, bt, opt);
}

}  // namespace avec
