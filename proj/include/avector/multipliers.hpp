#ifndef AVECTOR_MULTIPLIERS_HPP
#define AVECTOR_MULTIPLIERS_HPP

#include <string>
#include <utility>
#include <vector>

#include "avector/field.hpp"

namespace avec
{

//
// Radial symbol γ(r) of the multiplier Γ. Supported families:
//
//   power         γ(r) = r^{-a}
//   power_log     γ(r) = r^{-a} log^{α1}(10 + r)
//   power_loglog  γ(r) = r^{-a} log^{α1}(10 + r) log^{α2}(10 + log(10 + r))
//   tabulated     log-log linear interpolation of (r, γ) samples, power-law extrapolation
//
// γ(0) = 0 for every family.
//
class MultiplierSpec
{
public:
  enum class Kind
  {
    power,
    power_log,
    power_loglog,
    tabulated
  };

  static MultiplierSpec power(double a);
  static MultiplierSpec power_log(double a, double alpha1);
  static MultiplierSpec power_loglog(double a, double alpha1, double alpha2);
  static MultiplierSpec tabulated(std::vector<std::pair<double, double>> samples);

  Kind kind() const { return kind_; }
  double a() const { return a_; }
  double alpha1() const { return alpha1_; }
  double alpha2() const { return alpha2_; }
  const std::vector<std::pair<double, double>> &table() const { return table_; }

  // γ(r); throws DomainError for r < 0.
  double operator()(double r) const;

  // Non-fatal remarks about the parameter choice (e.g. log symbols outside 1 < a < 2).
  std::vector<std::string> warnings() const;

  // Compact form used on the command line: "power:1.5", "power_log:1.5:1", ...
  std::string to_string() const;
  static MultiplierSpec parse(const std::string &text);

  friend bool operator==(const MultiplierSpec &, const MultiplierSpec &) = default;

private:
  MultiplierSpec() = default;

  Kind kind_ = Kind::power;
  double a_ = 0.0;
  double alpha1_ = 0.0;
  double alpha2_ = 0.0;
  std::vector<std::pair<double, double>> table_;
};

inline double eval_symbol(const MultiplierSpec &spec, double r) { return spec(r); }

// γ(|k|) over the lattice of a grid (zero mode 0).
std::vector<double> symbol_table(const MultiplierSpec &spec, const Grid &grid);

ScalarField apply_gamma(const MultiplierSpec &spec, const ScalarField &f);
VectorField apply_gamma(const MultiplierSpec &spec, const VectorField &f);

// V = -∇ x Γ[B]. B must have zero mean.
VectorField compute_V(const MultiplierSpec &spec, const VectorField &b);

//
// Sampled check of the structural assumptions on γ:
//   (1) γ(r) <= C (r^{-1} + r^{-2})
//   (2) γ'(r) <= 0 and r |γ'(r)| <= C γ(r)
//   (3) γ(r) >= c min(r^{-1}, r^{-2})
// Each bound is tested by looking at how the corresponding ratio behaves over the first and
// last sampled decades: a ratio whose log still moves by a non-shrinking amount from one
// decade to the next is reported as unbounded (or, for (3), as tending to zero).
//
struct AssumptionReport
{
  double as1_max_ratio = 0.0;
  bool as2_monotone = true;
  double as2_max_ratio = 0.0;
  double as3_min_ratio = 0.0;
  std::vector<double> samples;

  bool as1_bounded = true;
  bool as2_bounded = true;
  bool as3_bounded_below = true;

  bool all_ok() const { return as1_bounded && as2_monotone && as2_bounded && as3_bounded_below; }
};

AssumptionReport validate_assumptions(const MultiplierSpec &spec, const std::vector<double> &radii);

// n log-spaced radii covering [lo, hi].
std::vector<double> logspace(double lo, double hi, std::size_t n);

}  // namespace avec

#endif  // AVECTOR_MULTIPLIERS_HPP
