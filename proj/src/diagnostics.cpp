#include "avector/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

#include "avector/errors.hpp"
#include "avector/kernels.hpp"
#include "avector/spectral.hpp"

namespace avec
{

namespace kp = kernels::parallel;

namespace
{

constexpr double torus_volume = Grid::period * Grid::period * Grid::period;

double volume_of(const Grid &g)
{
  return g.is_planar() ? Grid::period * Grid::period : torus_volume;
}

template <typename F>
std::vector<double> weights(const Grid &g, F &&f)
{
  const auto tables = ModeTables::for_grid(g);
  std::vector<double> w(g.size());
  for (std::size_t i = 0; i < w.size(); ++i)
  {
    w[i] = f(tables->kmag[i]);
  }
  return w;
}

double sum_components(const VectorField &f, std::span<const double> w, bool squared)
{
  double total = 0.0;
  for (int d = 0; d < 3; ++d)
  {
    total += squared ? kp::weighted_norm2(w, f[d].coeffs()) : kp::weighted_abs_sum(w, f[d].coeffs());
  }
  return total;
}

}  // namespace

double energy(const MultiplierSpec &spec, const VectorField &b)
{
  const auto gamma = symbol_table(spec, b.grid());
  return 0.5 * volume_of(b.grid()) * sum_components(b, gamma, true);
}

double helicity(const VectorField &b)
{
  if (!b.is_mean_zero())
  {
    throw DomainError("helicity needs a mean-zero field B");
  }
  const auto tables = ModeTables::for_grid(b.grid());
  const VectorField c = curl(b);
  std::vector<double> inv_k2(b.grid().size(), 0.0);
  for (std::size_t i = 1; i < inv_k2.size(); ++i)
  {
    inv_k2[i] = 1.0 / (tables->kmag[i] * tables->kmag[i]);
  }
  double total = 0.0;
  for (int d = 0; d < 3; ++d)
  {
    total += kp::weighted_inner(inv_k2, b[d].coeffs(), c[d].coeffs());
  }
  return volume_of(b.grid()) * total;
}

double l2_norm(const ScalarField &f)
{
  return std::sqrt(volume_of(f.grid()) * kp::weighted_norm2(ModeTables::for_grid(f.grid())->ones,
                                                            f.coeffs()));
}

double l2_norm(const VectorField &f)
{
  return std::sqrt(volume_of(f.grid()) *
                   sum_components(f, ModeTables::for_grid(f.grid())->ones, true));
}

double sobolev_norm(const ScalarField &f, double s)
{
  const auto w = weights(f.grid(), [s](double k) { return std::pow(1.0 + k * k, s); });
  return std::sqrt(volume_of(f.grid()) * kp::weighted_norm2(w, f.coeffs()));
}

double sobolev_norm(const VectorField &f, double s)
{
  const auto w = weights(f.grid(), [s](double k) { return std::pow(1.0 + k * k, s); });
  return std::sqrt(volume_of(f.grid()) * sum_components(f, w, true));
}

double y1_norm(const ScalarField &f)
{
  const auto w = weights(f.grid(), [](double k) { return 1.0 + k; });
  return kp::weighted_abs_sum(w, f.coeffs());
}

double y1_norm(const VectorField &f)
{
  const auto w = weights(f.grid(), [](double k) { return 1.0 + k; });
  return sum_components(f, w, false);
}

double homogeneous_y1_norm(const ScalarField &f)
{
  return kp::weighted_abs_sum(ModeTables::for_grid(f.grid())->kmag, f.coeffs());
}

double homogeneous_y1_norm(const VectorField &f)
{
  return sum_components(f, ModeTables::for_grid(f.grid())->kmag, false);
}

double hm1_norm(const VectorField &b)
{
  const auto w = weights(b.grid(), [](double k) { return k == 0.0 ? 0.0 : 1.0 / (k * k); });
  return std::sqrt(volume_of(b.grid()) * sum_components(b, w, true));
}

double max_velocity(const MultiplierSpec &spec, const VectorField &b)
{
  return max_norm(compute_V(spec, b));
}

std::optional<double> DiagnosticsRecord::hs_at(double s) const
{
  for (const auto &[order, value] : hs)
  {
    if (order == s)
    {
      return value;
    }
  }
  return std::nullopt;
}

DiagnosticsRecord make_record(const MultiplierSpec &spec, const VectorField &b, double t,
                              const std::vector<double> &hs_orders,
                              const DiagnosticsRecord *previous)
{
  DiagnosticsRecord r;
  r.t = t;
  r.E = energy(spec, b);
  r.H = helicity(b);
  r.l2 = l2_norm(b);
  for (double s : hs_orders)
  {
    r.hs.emplace_back(s, sobolev_norm(b, s));
  }
  r.y1 = y1_norm(b);
  r.hm1 = hm1_norm(b);
  r.int_y1 = previous ? previous->int_y1 + 0.5 * (t - previous->t) * (previous->y1 + r.y1) : 0.0;
  r.maxV = max_velocity(spec, b);
  r.div_residual = divergence_defect(b);
  return r;
}

std::string format_order(double s)
{
  std::ostringstream os;
  os << s;
  return os.str();
}

std::string csv_header(const std::vector<double> &hs_orders)
{
  std::string h = "t,E,H,L2";
  for (double s : hs_orders)
  {
    h += ",Hs_" + format_order(s);
  }
  h += ",Y1,Hm1,int_Y1,maxV,div_residual";
  return h;
}

namespace
{

std::string g17(double v)
{
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

std::string csv_row(const DiagnosticsRecord &r)
{
  std::string row = g17(r.t) + "," + g17(r.E) + "," + g17(r.H) + "," + g17(r.l2);
  for (const auto &[s, v] : r.hs)
  {
    row += "," + g17(v);
  }
  row += "," + g17(r.y1) + "," + g17(r.hm1) + "," + g17(r.int_y1) + "," + g17(r.maxV) + "," +
         g17(r.div_residual);
  return row;
}

namespace
{

// Least-squares slope of log(y) against t.
double log_slope(std::span<const DiagnosticsRecord> recs)
{
  if (recs.size() < 2)
  {
    return 0.0;
  }
  double st = 0, sy = 0, stt = 0, sty = 0;
  const double n = static_cast<double>(recs.size());
  for (const auto &r : recs)
  {
    const double y = std::log(std::max(r.y1, std::numeric_limits<double>::min()));
    st += r.t;
    sy += y;
    stt += r.t * r.t;
    sty += r.t * y;
  }
  const double den = n * stt - st * st;
  return den == 0.0 ? 0.0 : (n * sty - st * sy) / den;
}

}  // namespace

BlowupReport blowup_monitor(std::span<const DiagnosticsRecord> records)
{
  if (records.size() < 2)
  {
    throw DomainError("blowup_monitor needs at least two records");
  }
  for (std::size_t i = 1; i < records.size(); ++i)
  {
    if (!(records[i].t > records[i - 1].t))
    {
      throw DomainError("blowup_monitor: records are not strictly increasing in time");
    }
  }
  BlowupReport rep;
  rep.cumulative_y1.push_back(0.0);
  bool have_h52 = true;
  for (std::size_t i = 1; i < records.size(); ++i)
  {
    const auto &a = records[i - 1];
    const auto &b = records[i];
    const double dt = b.t - a.t;
    rep.int_y1 += 0.5 * dt * (a.y1 + b.y1);
    rep.cumulative_y1.push_back(rep.int_y1);
    const auto ha = a.hs_at(2.5), hb = b.hs_at(2.5);
    if (ha && hb)
    {
      rep.int_h52 += 0.5 * dt * (*ha + *hb);
    }
    else
    {
      have_h52 = false;
    }
  }
  if (!have_h52)
  {
    rep.int_h52 = std::numeric_limits<double>::quiet_NaN();
  }
  const std::size_t half = records.size() / 2;
  rep.early_rate = log_slope(records.subspan(0, half + 1));
  rep.late_rate = log_slope(records.subspan(half));
  rep.super_exponential = rep.late_rate > 0.0 && rep.late_rate > 1.5 * std::max(rep.early_rate, 0.0) &&
                          rep.late_rate - rep.early_rate > 1e-8;
  return rep;
}

namespace
{

double log_sobolev_ratio(double y1, double h52, double hs)
{
  if (h52 == 0.0)
  {
    throw DomainError("log_sobolev_check: ratio undefined for the zero field");
  }
  return y1 / (h52 * std::log(10.0 + hs));
}

void check_order(double s)
{
  if (!(s > 2.5))
  {
    throw DomainError("log_sobolev_check needs s > 5/2");
  }
}

}  // namespace

double log_sobolev_check(const VectorField &b, double s)
{
  check_order(s);
  return log_sobolev_ratio(y1_norm(b), sobolev_norm(b, 2.5), sobolev_norm(b, s));
}

double log_sobolev_check(const ScalarField &f, double s)
{
  check_order(s);
  return log_sobolev_ratio(y1_norm(f), sobolev_norm(f, 2.5), sobolev_norm(f, s));
}

}  // namespace avec
