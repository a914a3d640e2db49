#include "avector/estimates.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

#include "avector/diagnostics.hpp"
#include "avector/errors.hpp"
#include "avector/kernels.hpp"
#include "avector/presets.hpp"
#include "avector/spectral.hpp"

namespace avec
{

CommutatorSymbol comm1_symbol(const MultiplierSpec &spec, double half_power)
{
  return {[half_power](double r) { return r == 0.0 ? 0.0 : std::pow(r, half_power); },
          [spec](double r) { return std::sqrt(spec(r)); }};
}

CommutatorSymbol comm3_symbol(double a)
{
  if (a == 0.0)
  {
    return {[](double) { return 1.0; }, [](double) { return 1.0; }};
  }
  return {[a](double r) { return r == 0.0 ? 0.0 : std::pow(r, 0.5 * a); },
          [a](double r) { return r == 0.0 ? 0.0 : std::pow(r, -0.5 * a); }};
}

CommutatorSymbol comm4_symbol(double s)
{
  return {[](double) { return 1.0; }, [s](double r) { return r == 0.0 ? 0.0 : std::pow(r, s); }};
}

namespace
{

int input_band(const Grid &g)
{
  if (g.dim(0) != g.dim(1) || g.dim(0) != g.dim(2))
  {
    throw StructuralError("exact commutators need a cubic grid, got " + g.describe());
  }
  if (g.dim(0) > exact_convolution_cap)
  {
    throw DomainError("exact lattice convolution is capped at " +
                      std::to_string(exact_convolution_cap) +
                      " points per axis (cost grows like N^6); use a coarser grid or the "
                      "pseudo-spectral path commutator_field_fft");
  }
  return static_cast<int>(g.dim(0)) / 3;
}

void require_band_limited(const ScalarField &f)
{
  if (!is_band_limited(f))
  {
    throw DomainError("commutator inputs must be band-limited to |k_i| <= N/3");
  }
}

std::vector<Complex> pack(const ScalarField &f, int K)
{
  std::vector<Complex> box(kernels::box_size(K));
  for (int a = -K; a <= K; ++a)
  {
    for (int b = -K; b <= K; ++b)
    {
      for (int c = -K; c <= K; ++c)
      {
        box[kernels::box_index(K, a, b, c)] = f.at(a, b, c);
      }
    }
  }
  return box;
}

ScalarField unpack(const Grid &out_grid, std::span<const Complex> box, int L)
{
  ScalarField f(out_grid);
  for (int a = -L; a <= L; ++a)
  {
    for (int b = -L; b <= L; ++b)
    {
      for (int c = -L; c <= L; ++c)
      {
        f.set(a, b, c, box[kernels::box_index(L, a, b, c)]);
      }
    }
  }
  return f;
}

std::vector<double> box_table(int half, const std::function<double(double)> &f)
{
  std::vector<double> t(kernels::box_size(half));
  for (int a = -half; a <= half; ++a)
  {
    for (int b = -half; b <= half; ++b)
    {
      for (int c = -half; c <= half; ++c)
      {
        t[kernels::box_index(half, a, b, c)] = f(std::sqrt(double(a * a + b * b + c * c)));
      }
    }
  }
  return t;
}

// f(|k|) on every mode of a grid, the zero mode included.
std::vector<double> full_table(const Grid &g, const std::function<double(double)> &f)
{
  const auto tables = ModeTables::for_grid(g);
  std::vector<double> t(g.size());
  for (std::size_t i = 0; i < t.size(); ++i)
  {
    t[i] = f(tables->kmag[i]);
  }
  return t;
}

ScalarField embed(const ScalarField &f, const Grid &target, int K)
{
  ScalarField out(target);
  for (int a = -K; a <= K; ++a)
  {
    for (int b = -K; b <= K; ++b)
    {
      for (int c = -K; c <= K; ++c)
      {
        out.set(a, b, c, f.at(a, b, c));
      }
    }
  }
  return out;
}

struct Prepared
{
  int K;
  int L;
  Grid out_grid;
  std::vector<double> m_in, m_out, pre_out;
};

Prepared prepare(const CommutatorSymbol &sym, const Grid &input)
{
  const int K = input_band(input);
  return {K,
          2 * K,
          commutator_output_grid(input),
          box_table(K, sym.m),
          box_table(2 * K, sym.m),
          box_table(2 * K, sym.pre)};
}

template <typename Kernel>
VectorField scalar_commutator(const CommutatorSymbol &sym, const ScalarField &b,
                              const ScalarField &g, Kernel kernel)
{
  require_same_grid(b.grid(), g.grid(), "commutator_field");
  require_band_limited(b);
  require_band_limited(g);
  const Prepared p = prepare(sym, b.grid());
  const auto bb = pack(b, p.K);
  const auto gg = pack(g, p.K);
  kernels::CommutatorProblem prob;
  prob.input_half = p.K;
  prob.contract = false;
  prob.b = {bb, {}, {}};
  prob.g = gg;
  prob.m_in = p.m_in;
  prob.m_out = p.m_out;
  prob.pre_out = p.pre_out;
  const std::size_t n = kernels::box_size(p.L);
  std::vector<Complex> o0(n), o1(n), o2(n);
  kernel(prob, kernels::Modes3{o0, o1, o2});
  return VectorField(unpack(p.out_grid, o0, p.L), unpack(p.out_grid, o1, p.L),
                     unpack(p.out_grid, o2, p.L));
}

}  // namespace

Grid commutator_output_grid(const Grid &input)
{
  const int K = input_band(input);
  return Grid(static_cast<std::size_t>(4 * K + 2));
}

VectorField commutator_field(const CommutatorSymbol &sym, const ScalarField &b,
                             const ScalarField &g)
{
  return scalar_commutator(sym, b, g, kernels::parallel::lattice_commutator);
}

VectorField commutator_field_serial(const CommutatorSymbol &sym, const ScalarField &b,
                                    const ScalarField &g)
{
  return scalar_commutator(sym, b, g, kernels::serial::lattice_commutator);
}

VectorField commutator_field(const MultiplierSpec &spec, const ScalarField &b,
                             const ScalarField &g, double half_power)
{
  return commutator_field(comm1_symbol(spec, half_power), b, g);
}

ScalarField commutator_field(const CommutatorSymbol &sym, const VectorField &f,
                             const ScalarField &g)
{
  require_same_grid(f.grid(), g.grid(), "commutator_field");
  for (int d = 0; d < 3; ++d)
  {
    require_band_limited(f[d]);
  }
  require_band_limited(g);
  const Prepared p = prepare(sym, g.grid());
  const auto f0 = pack(f[0], p.K), f1 = pack(f[1], p.K), f2 = pack(f[2], p.K);
  const auto gg = pack(g, p.K);
  kernels::CommutatorProblem prob;
  prob.input_half = p.K;
  prob.contract = true;
  prob.b = {f0, f1, f2};
  prob.g = gg;
  prob.m_in = p.m_in;
  prob.m_out = p.m_out;
  prob.pre_out = p.pre_out;
  std::vector<Complex> out(kernels::box_size(p.L));
  kernels::parallel::lattice_commutator(prob, kernels::Modes3{out, {}, {}});
  return unpack(p.out_grid, out, p.L);
}

VectorField commutator_field_fft(const CommutatorSymbol &sym, const ScalarField &b,
                                 const ScalarField &g)
{
  require_same_grid(b.grid(), g.grid(), "commutator_field_fft");
  const Grid out_grid = commutator_output_grid(b.grid());
  const int K = input_band(b.grid());
  const ScalarField bb = embed(b, out_grid, K);
  const ScalarField gg = embed(g, out_grid, K);
  const auto m = full_table(out_grid, sym.m);
  const auto pre = full_table(out_grid, sym.pre);
  const ScalarField mg = apply_modes(m, gg);
  VectorField out(out_grid);
  for (int d = 0; d < 3; ++d)
  {
    // m(ξ) (b ∂g)^ - (b ∂ m g)^
    ScalarField term = apply_modes(m, product(bb, derivative(gg, d), false));
    term -= product(bb, derivative(mg, d), false);
    out[d] = apply_modes(pre, term);
  }
  return out;
}

ScalarField commutator_field_fft(const CommutatorSymbol &sym, const VectorField &f,
                                 const ScalarField &g)
{
  require_same_grid(f.grid(), g.grid(), "commutator_field_fft");
  const Grid out_grid = commutator_output_grid(g.grid());
  const int K = input_band(g.grid());
  const ScalarField gg = embed(g, out_grid, K);
  const auto m = full_table(out_grid, sym.m);
  const auto pre = full_table(out_grid, sym.pre);
  const ScalarField mg = apply_modes(m, gg);
  ScalarField plain(out_grid), weighted(out_grid);
  for (int d = 0; d < 3; ++d)
  {
    const ScalarField fd = embed(f[d], out_grid, K);
    plain += product(fd, derivative(gg, d), false);
    weighted += product(fd, derivative(mg, d), false);
  }
  ScalarField term = apply_modes(m, plain);
  term -= weighted;
  return apply_modes(pre, term);
}

double EstimateReport::resolution_spread() const
{
  double worst = 0.0;
  for (std::size_t i = 1; i < ratio_by_resolution.size(); ++i)
  {
    const double a = ratio_by_resolution[i - 1], b = ratio_by_resolution[i];
    const double scale = std::max(std::abs(a), std::abs(b));
    if (scale > 0.0)
    {
      worst = std::max(worst, std::abs(b - a) / scale);
    }
  }
  return worst;
}

std::string EstimateReport::csv() const
{
  std::string out = "name,resolution,sample,ratio\n";
  char buf[160];
  for (const auto &r : rows)
  {
    std::snprintf(buf, sizeof buf, "%s,%zu,%zu,%.17g\n", name.c_str(), r.resolution, r.sample,
                  r.ratio);
    out += buf;
  }
  return out;
}

std::string EstimateReport::summary() const
{
  std::ostringstream os;
  os.precision(6);
  os << "# " << name << " seed=" << seed << " samples=" << samples << " degenerate=" << degenerate
     << " max_ratio=" << max_ratio;
  for (std::size_t i = 0; i < resolutions.size(); ++i)
  {
    os << " N" << resolutions[i] << "=" << ratio_by_resolution[i];
  }
  os << " spread=" << resolution_spread();
  if (name.rfind("comm1", 0) == 0)
  {
    os << " low_freq_max=" << secondary_max;
  }
  if (name.rfind("embedding", 0) == 0)
  {
    os << " violations=" << violations;
  }
  return os.str();
}

namespace
{

void check_ensemble(const EnsembleOptions &opt)
{
  if (opt.samples < 1)
  {
    throw DomainError("ensemble size must be at least 1");
  }
  if (opt.resolutions.empty())
  {
    throw DomainError("at least one resolution is required");
  }
}

RandomFieldOptions member_options(const EnsembleOptions &opt, std::size_t member, int stream)
{
  RandomFieldOptions r;
  r.seed = mix_seed(opt.seed, static_cast<std::uint64_t>(stream));
  r.member = member;
  r.decay = opt.decay;
  return r;
}

// Runs ratio(grid, member) over the ensemble; NaN marks a degenerate sample.
template <typename RatioFn>
EstimateReport run_ensemble(const std::string &name, const EnsembleOptions &opt, RatioFn &&ratio)
{
  check_ensemble(opt);
  EstimateReport rep;
  rep.name = name;
  rep.seed = opt.seed;
  rep.samples = opt.samples;
  rep.resolutions = opt.resolutions;
  for (std::size_t n : opt.resolutions)
  {
    const Grid grid(n);
    double best = 0.0;
    for (std::size_t m = 0; m < opt.samples; ++m)
    {
      const double r = ratio(grid, m);
      if (std::isnan(r))
      {
        ++rep.degenerate;
        continue;
      }
      if (!std::isfinite(r))
      {
        rep.all_finite = false;
      }
      rep.rows.push_back({n, m, r});
      best = std::max(best, r);
    }
    rep.ratio_by_resolution.push_back(best);
    rep.max_ratio = std::max(rep.max_ratio, best);
  }
  return rep;
}

constexpr double nan = std::numeric_limits<double>::quiet_NaN();

ScalarField drop_zero_mode(ScalarField f)
{
  f[0] = Complex{};
  return f;
}

}  // namespace

EstimateReport verify_comm1(const MultiplierSpec &spec, const EnsembleOptions &opt)
{
  const auto rep = validate_assumptions(spec, logspace(1e-2, 1e3, 121));
  if (!rep.all_ok())
  {
    throw DomainError("verify_comm1: " + spec.to_string() +
                      " does not satisfy the structural assumptions on the symbol");
  }
  const auto sym = comm1_symbol(spec, 0.5);
  double low = 0.0;
  auto report = run_ensemble("comm1:" + spec.to_string(), opt, [&](const Grid &grid, std::size_t m) {
    ScalarField b = random_scalar_field(grid, member_options(opt, m, 0));
    b *= opt.b_scale;
    const ScalarField g = random_scalar_field(grid, member_options(opt, m, 1));
    const double den = y1_norm(b) * l2_norm(g);
    if (den == 0.0)
    {
      return nan;
    }
    const VectorField f = commutator_field(sym, b, g);
    // |Λ^{1/2} P_{<1} f|: on the lattice P_{<1} keeps only ξ = 0, where Λ^{1/2} vanishes.
    const auto tables = ModeTables::for_grid(f.grid());
    double low_part = 0.0;
    for (std::size_t i = 0; i < tables->kmag.size(); ++i)
    {
      if (tables->kmag[i] < 1.0)
      {
        for (int d = 0; d < 3; ++d)
        {
          low_part += tables->kmag[i] * std::norm(f[d][i]);
        }
      }
    }
    low = std::max(low, std::sqrt(Grid::period * Grid::period * Grid::period * low_part) / den);
    const VectorField high(drop_zero_mode(f[0]), drop_zero_mode(f[1]), drop_zero_mode(f[2]));
    return l2_norm(high) / den;
  });
  report.secondary_max = low;
  return report;
}

EstimateReport verify_comm3(double a, const EnsembleOptions &opt)
{
  if (!(a >= 0.0 && a <= 2.0))
  {
    throw DomainError("verify_comm3 needs 0 <= a <= 2");
  }
  const auto sym = comm3_symbol(a);
  std::ostringstream name;
  name << "comm3:a=" << a;
  return run_ensemble(name.str(), opt, [&](const Grid &grid, std::size_t m) {
    ScalarField b = random_scalar_field(grid, member_options(opt, m, 0));
    b *= opt.b_scale;
    const ScalarField g = random_scalar_field(grid, member_options(opt, m, 1));
    const double den = homogeneous_y1_norm(b) * l2_norm(g);
    if (den == 0.0)
    {
      return nan;
    }
    return l2_norm(commutator_field(sym, b, g)) / den;
  });
}

EstimateReport verify_comm4(double s, const EnsembleOptions &opt)
{
  if (!(s > 0.0))
  {
    throw DomainError("verify_comm4 needs s > 0");
  }
  const auto sym = comm4_symbol(s);
  std::ostringstream name;
  name << "comm4:s=" << s;
  return run_ensemble(name.str(), opt, [&](const Grid &grid, std::size_t m) {
    VectorField f = random_vector_field(grid, member_options(opt, m, 0));
    f *= opt.b_scale;
    const ScalarField g = random_scalar_field(grid, member_options(opt, m, 1));
    const double den = y1_norm(f) * sobolev_norm(g, s) + y1_norm(g) * sobolev_norm(f, s);
    if (den == 0.0)
    {
      return nan;
    }
    return l2_norm(commutator_field(sym, f, g)) / den;
  });
}

EstimateReport verify_embedding(double s, const EnsembleOptions &opt)
{
  if (!(s > 2.5))
  {
    throw DomainError("verify_embedding needs s > n/2 + 1 = 5/2 for the embedding "
                      "H^s into Y^1 to hold");
  }
  std::size_t violations = 0;
  std::ostringstream name;
  name << "embedding:s=" << s;
  auto report = run_ensemble(name.str(), opt, [&](const Grid &grid, std::size_t m) {
    ScalarField f = random_scalar_field(grid, member_options(opt, m, 0));
    f *= opt.b_scale;
    const double y1 = y1_norm(f);
    if (y1 == 0.0)
    {
      return nan;
    }
    const double grad_max = max_norm(gradient(f));
    if (grad_max > y1 * (1.0 + 1e-12))
    {
      ++violations;
    }
    return y1 / sobolev_norm(f, s);
  });
  report.violations = violations;
  return report;
}

EstimateReport log_sobolev_ensemble(double s, const EnsembleOptions &opt)
{
  if (!(s > 2.5))
  {
    throw DomainError("log_sobolev_ensemble needs s > 5/2");
  }
  std::ostringstream name;
  name << "log_sobolev:s=" << s;
  return run_ensemble(name.str(), opt, [&](const Grid &grid, std::size_t m) {
    VectorField b = random_solenoidal_field(grid, member_options(opt, m, 0));
    b *= opt.b_scale;
    if (max_coeff(b) == 0.0)
    {
      return nan;
    }
    return log_sobolev_check(b, s);
  });
}

}  // namespace avec
