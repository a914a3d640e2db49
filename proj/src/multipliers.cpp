#include "avector/multipliers.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "avector/errors.hpp"
#include "avector/spectral.hpp"

namespace avec
{

MultiplierSpec MultiplierSpec::power(double a)
{
  if (!std::isfinite(a))
  {
    throw DomainError("multiplier exponent a must be finite");
  }
  MultiplierSpec s;
  s.kind_ = Kind::power;
  s.a_ = a;
  return s;
}

MultiplierSpec MultiplierSpec::power_log(double a, double alpha1)
{
  auto s = power(a);
  s.kind_ = Kind::power_log;
  s.alpha1_ = alpha1;
  return s;
}

MultiplierSpec MultiplierSpec::power_loglog(double a, double alpha1, double alpha2)
{
  auto s = power(a);
  s.kind_ = Kind::power_loglog;
  s.alpha1_ = alpha1;
  s.alpha2_ = alpha2;
  return s;
}

MultiplierSpec MultiplierSpec::tabulated(std::vector<std::pair<double, double>> samples)
{
  if (samples.size() < 2)
  {
    throw DomainError("tabulated multiplier needs at least two (r, gamma) samples");
  }
  std::sort(samples.begin(), samples.end());
  for (std::size_t i = 0; i < samples.size(); ++i)
  {
    if (samples[i].first <= 0.0 || samples[i].second <= 0.0)
    {
      throw DomainError("tabulated multiplier samples need r > 0 and gamma > 0");
    }
    if (i > 0 && samples[i].first == samples[i - 1].first)
    {
      throw DomainError("tabulated multiplier has duplicate radius");
    }
  }
  MultiplierSpec s;
  s.kind_ = Kind::tabulated;
  s.table_ = std::move(samples);
  return s;
}

double MultiplierSpec::operator()(double r) const
{
  if (r < 0.0 || std::isnan(r))
  {
    throw DomainError("symbol evaluated at negative radius " + std::to_string(r));
  }
  if (r == 0.0)
  {
    return 0.0;
  }
  switch (kind_)
  {
  case Kind::power:
    return std::pow(r, -a_);
  case Kind::power_log:
    return std::pow(r, -a_) * std::pow(std::log(10.0 + r), alpha1_);
  case Kind::power_loglog:
  {
    const double l1 = std::log(10.0 + r);
    return std::pow(r, -a_) * std::pow(l1, alpha1_) * std::pow(std::log(10.0 + l1), alpha2_);
  }
  case Kind::tabulated:
  {
    const double lr = std::log(r);
    auto segment = [&](std::size_t i) {
      const double x0 = std::log(table_[i].first), x1 = std::log(table_[i + 1].first);
      const double y0 = std::log(table_[i].second), y1 = std::log(table_[i + 1].second);
      return std::exp(y0 + (y1 - y0) * (lr - x0) / (x1 - x0));
    };
    if (r <= table_.front().first)
    {
      return segment(0);
    }
    if (r >= table_.back().first)
    {
      return segment(table_.size() - 2);
    }
    const auto it = std::upper_bound(table_.begin(), table_.end(), std::make_pair(r, 0.0),
                                     [](const auto &x, const auto &y) { return x.first < y.first; });
    return segment(static_cast<std::size_t>(it - table_.begin()) - 1);
  }
  }
  return 0.0;
}

std::vector<std::string> MultiplierSpec::warnings() const
{
  std::vector<std::string> out;
  if ((kind_ == Kind::power_log || kind_ == Kind::power_loglog) && !(a_ > 1.0 && a_ < 2.0))
  {
    out.push_back("logarithmic symbols are only covered for 1 < a < 2 (got a = " +
                  std::to_string(a_) + ")");
  }
  return out;
}

std::string MultiplierSpec::to_string() const
{
  std::ostringstream os;
  os.precision(17);
  switch (kind_)
  {
  case Kind::power:
    os << "power:" << a_;
    break;
  case Kind::power_log:
    os << "power_log:" << a_ << ":" << alpha1_;
    break;
  case Kind::power_loglog:
    os << "power_loglog:" << a_ << ":" << alpha1_ << ":" << alpha2_;
    break;
  case Kind::tabulated:
    os << "tabulated:" << table_.size();
    break;
  }
  return os.str();
}

MultiplierSpec MultiplierSpec::parse(const std::string &text)
{
  std::vector<std::string> parts;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ':'))
  {
    parts.push_back(item);
  }
  auto num = [&](std::size_t i) {
    try
    {
      std::size_t used = 0;
      const double v = std::stod(parts.at(i), &used);
      if (used != parts[i].size())
      {
        throw std::invalid_argument(parts[i]);
      }
      return v;
    }
    catch (const std::exception &)
    {
      throw ConfigError("bad multiplier '" + text + "': expected a number in field " +
                        std::to_string(i));
    }
  };
  if (parts.empty())
  {
    throw ConfigError("empty multiplier description");
  }
  if (parts[0] == "power" && parts.size() == 2)
  {
    return power(num(1));
  }
  if (parts[0] == "power_log" && parts.size() == 3)
  {
    return power_log(num(1), num(2));
  }
  if (parts[0] == "power_loglog" && parts.size() == 4)
  {
    return power_loglog(num(1), num(2), num(3));
  }
  throw ConfigError("bad multiplier '" + text +
                    "': use power:a, power_log:a:alpha1 or power_loglog:a:alpha1:alpha2");
}

std::vector<double> symbol_table(const MultiplierSpec &spec, const Grid &grid)
{
  return radial_table(grid, [&spec](double r) { return spec(r); });
}

ScalarField apply_gamma(const MultiplierSpec &spec, const ScalarField &f)
{
  return apply_modes(symbol_table(spec, f.grid()), f);
}

VectorField apply_gamma(const MultiplierSpec &spec, const VectorField &f)
{
  return apply_modes(symbol_table(spec, f.grid()), f);
}

VectorField compute_V(const MultiplierSpec &spec, const VectorField &b)
{
  if (!b.is_mean_zero())
  {
    throw DomainError("compute_V needs a mean-zero field B");
  }
  VectorField v = curl(apply_gamma(spec, b));
  v *= -1.0;
  return v;
}

std::vector<double> logspace(double lo, double hi, std::size_t n)
{
  std::vector<double> out(n);
  const double a = std::log10(lo), b = std::log10(hi);
  for (std::size_t i = 0; i < n; ++i)
  {
    const double t = n == 1 ? 0.0 : static_cast<double>(i) / static_cast<double>(n - 1);
    out[i] = std::pow(10.0, a + (b - a) * t);
  }
  return out;
}

namespace
{

// log-ratio value at log-radius x by linear interpolation over the samples.
double interp(const std::vector<double> &x, const std::vector<double> &y, double at)
{
  if (at <= x.front())
  {
    return y.front();
  }
  if (at >= x.back())
  {
    return y.back();
  }
  const auto it = std::upper_bound(x.begin(), x.end(), at);
  const std::size_t i = static_cast<std::size_t>(it - x.begin()) - 1;
  return y[i] + (y[i + 1] - y[i]) * (at - x[i]) / (x[i + 1] - x[i]);
}

// Increase of log(ratio) over the last two decades at one end of the sampled range.
// Returns {outer, inner}: outer is the increase over the outermost decade, inner over the
// decade next to it, both measured moving outwards.
std::pair<double, double> end_increments(const std::vector<double> &logr,
                                         const std::vector<double> &logv, bool large_end)
{
  const double decade = std::log(10.0);
  const double span = logr.back() - logr.front();
  const double step = std::min(decade, span / 2.0);
  if (large_end)
  {
    const double x0 = logr.back();
    const double outer = interp(logr, logv, x0) - interp(logr, logv, x0 - step);
    const double inner = interp(logr, logv, x0 - step) - interp(logr, logv, x0 - 2 * step);
    return {outer, inner};
  }
  const double x0 = logr.front();
  const double outer = interp(logr, logv, x0) - interp(logr, logv, x0 + step);
  const double inner = interp(logr, logv, x0 + step) - interp(logr, logv, x0 + 2 * step);
  return {outer, inner};
}

// A ratio is treated as unbounded at an end if it still grows there by a non-shrinking
// amount per decade.
bool grows_at(const std::vector<double> &logr, const std::vector<double> &logv, bool large_end)
{
  constexpr double tol = 1e-3;
  constexpr double decay = 0.5;
  const auto [outer, inner] = end_increments(logr, logv, large_end);
  return outer > tol && outer >= decay * inner;
}

}  // namespace

AssumptionReport validate_assumptions(const MultiplierSpec &spec, const std::vector<double> &radii)
{
  if (radii.empty())
  {
    throw DomainError("validate_assumptions needs at least one radius");
  }
  for (std::size_t i = 0; i < radii.size(); ++i)
  {
    if (!(radii[i] > 0.0) || (i > 0 && radii[i] <= radii[i - 1]))
    {
      throw DomainError("validate_assumptions needs positive, strictly increasing radii");
    }
  }
  AssumptionReport rep;
  rep.samples = radii;
  rep.as3_min_ratio = std::numeric_limits<double>::infinity();

  std::vector<double> logr, l1, l2, l3;
  for (double r : radii)
  {
    const double g = spec(r);
    const double h = 1e-6 * r;
    const double dg = (spec(r + h) - spec(r - h)) / (2.0 * h);
    const double r1 = g / (1.0 / r + 1.0 / (r * r));
    const double r2 = r * std::abs(dg) / g;
    const double r3 = g / std::min(1.0 / r, 1.0 / (r * r));
    rep.as1_max_ratio = std::max(rep.as1_max_ratio, r1);
    rep.as2_max_ratio = std::max(rep.as2_max_ratio, r2);
    rep.as3_min_ratio = std::min(rep.as3_min_ratio, r3);
    if (r * dg / g > 1e-6)
    {
      rep.as2_monotone = false;
    }
    logr.push_back(std::log(r));
    l1.push_back(std::log(r1));
    l2.push_back(std::log(std::max(r2, 1e-300)));
    l3.push_back(std::log(r3));
  }

  if (radii.size() >= 3)
  {
    rep.as1_bounded = !grows_at(logr, l1, true) && !grows_at(logr, l1, false);
    rep.as2_bounded = !grows_at(logr, l2, true) && !grows_at(logr, l2, false);
    std::vector<double> neg3(l3.size());
    std::transform(l3.begin(), l3.end(), neg3.begin(), [](double v) { return -v; });
    rep.as3_bounded_below = !grows_at(logr, neg3, true) && !grows_at(logr, neg3, false);
  }
  return rep;
}

}  // namespace avec
