#ifndef AVECTOR_DIAGNOSTICS_HPP
#define AVECTOR_DIAGNOSTICS_HPP

#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "avector/field.hpp"
#include "avector/multipliers.hpp"

namespace avec
{

//
// Norms and conserved quantities. All integrals are over the torus [0, 2π)^3 and follow
// from Parseval with the coefficient normalisation of ScalarField:
//
//   E      = ½ (2π)^3 Σ γ(|k|) |B_k|^2
//   H      = (2π)^3 Σ Re(conj(B_k) . u_k),   u_k = i k x B_k / |k|^2
//   H^s    = ((2π)^3 Σ (1 + |k|^2)^s |B_k|^2)^{1/2}
//   Y^1    = Σ (1 + |k|) |B_k|        (summed over components)
//   Ḣ^{-1} = ((2π)^3 Σ_{k≠0} |k|^{-2} |B_k|^2)^{1/2}
//
double energy(const MultiplierSpec &spec, const VectorField &b);
// Does not depend on the multiplier.
double helicity(const VectorField &b);
double l2_norm(const ScalarField &f);
double l2_norm(const VectorField &f);
double sobolev_norm(const ScalarField &f, double s);
double sobolev_norm(const VectorField &f, double s);
double y1_norm(const ScalarField &f);
double y1_norm(const VectorField &f);
// Σ |k| |f_k|
double homogeneous_y1_norm(const ScalarField &f);
double homogeneous_y1_norm(const VectorField &f);
double hm1_norm(const VectorField &b);
// max_x |V(x)|
double max_velocity(const MultiplierSpec &spec, const VectorField &b);

struct DiagnosticsRecord
{
  double t = 0.0;
  double E = 0.0;
  double H = 0.0;
  double l2 = 0.0;
  std::vector<std::pair<double, double>> hs;  // (s, ‖B‖_{H^s})
  double y1 = 0.0;
  double hm1 = 0.0;
  double int_y1 = 0.0;
  double maxV = 0.0;
  double div_residual = 0.0;

  std::optional<double> hs_at(double s) const;
};

// Record at time t; int_y1 continues the trapezoid sum from `previous` when given.
DiagnosticsRecord make_record(const MultiplierSpec &spec, const VectorField &b, double t,
                              const std::vector<double> &hs_orders,
                              const DiagnosticsRecord *previous = nullptr);

// Header "t,E,H,L2,Hs_2.5,...,Y1,Hm1,int_Y1,maxV,div_residual" and rows with %.17g values.
std::string csv_header(const std::vector<double> &hs_orders);
std::string csv_row(const DiagnosticsRecord &r);
std::string format_order(double s);

struct BlowupReport
{
  double int_y1 = 0.0;
  double int_h52 = 0.0;  // NaN when the records carry no H^{5/2} column
  std::vector<double> cumulative_y1;
  // Exponential rates of ‖B‖_{Y^1} fitted on the first and second half of the records.
  double early_rate = 0.0;
  double late_rate = 0.0;
  bool super_exponential = false;
};

// Descriptive only: trapezoid integrals of ‖B‖_{Y^1} and ‖B‖_{H^{5/2}} and a growth fit.
BlowupReport blowup_monitor(std::span<const DiagnosticsRecord> records);

// ‖B‖_{Y^1} / (‖B‖_{H^{5/2}} log(10 + ‖B‖_{H^s})), s > 5/2.
double log_sobolev_check(const VectorField &b, double s);
double log_sobolev_check(const ScalarField &f, double s);

}  // namespace avec

#endif  // AVECTOR_DIAGNOSTICS_HPP
