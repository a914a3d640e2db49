#include <doctest.h>

#include "avector/errors.hpp"
#include "avector/multipliers.hpp"
#include "avector/presets.hpp"
#include "avector/spectral.hpp"
#include "support.hpp"

using namespace avec;
using namespace avec::test;

TEST_CASE("symbol evaluation")
{
  CHECK(eval_symbol(MultiplierSpec::power(2.0), 2.0) == doctest::Approx(0.25));
  CHECK(eval_symbol(MultiplierSpec::power(1.0), 1.0) == 1.0);
  CHECK(eval_symbol(MultiplierSpec::power_log(1.5, 1.0), 1.0) == doctest::Approx(2.397895).epsilon(1e-6));
  CHECK(eval_symbol(MultiplierSpec::power_log(1.5, 1.0), 1.0) == doctest::Approx(std::log(11.0)));
  const double r = 3.0;
  CHECK(eval_symbol(MultiplierSpec::power_loglog(1.2, 0.5, 2.0), r) ==
        doctest::Approx(std::pow(r, -1.2) * std::pow(std::log(10.0 + r), 0.5) *
                        std::pow(std::log(10.0 + std::log(10.0 + r)), 2.0)));
  for (const auto &s : {MultiplierSpec::power(1.0), MultiplierSpec::power_log(1.5, 1.0)})
  {
    CHECK(s(0.0) == 0.0);
    CHECK_THROWS_AS(s(-1.0), DomainError);
  }
  CHECK_THROWS_AS(MultiplierSpec::power(std::nan("")), DomainError);
}

TEST_CASE("tabulated symbol interpolates in log-log and extrapolates as a power law")
{
  const auto t = MultiplierSpec::tabulated({{1.0, 1.0}, {10.0, 0.01}, {100.0, 1e-4}});
  CHECK(t(1.0) == doctest::Approx(1.0));
  CHECK(t(std::sqrt(10.0)) == doctest::Approx(0.1));
  CHECK(t(1000.0) == doctest::Approx(1e-6));
  CHECK(t(0.1) == doctest::Approx(100.0));
  CHECK_THROWS_AS(MultiplierSpec::tabulated({{1.0, 1.0}}), DomainError);
  CHECK_THROWS_AS(MultiplierSpec::tabulated({{1.0, 1.0}, {1.0, 2.0}}), DomainError);
  CHECK_THROWS_AS(MultiplierSpec::tabulated({{1.0, -1.0}, {2.0, 2.0}}), DomainError);
}

TEST_CASE("multiplier strings round trip")
{
  for (const auto &s : {MultiplierSpec::power(1.5), MultiplierSpec::power_log(1.25, 0.75),
                        MultiplierSpec::power_loglog(1.1, 1.0, -0.5), MultiplierSpec::power(0.1)})
  {
    CHECK(MultiplierSpec::parse(s.to_string()) == s);
  }
  CHECK(MultiplierSpec::parse("power:2") == MultiplierSpec::power(2.0));
  CHECK_THROWS_AS(MultiplierSpec::parse("power:abc"), ConfigError);
  CHECK_THROWS_AS(MultiplierSpec::parse("cubic:1"), ConfigError);
  CHECK_THROWS_AS(MultiplierSpec::parse(""), ConfigError);
}

TEST_CASE("apply_gamma examples")
{
  const Grid g(16);
  const ScalarField cx = from_function(g, [](double x, double, double) { return std::cos(x); });
  CHECK(max_coeff_diff(apply_gamma(MultiplierSpec::power(2.0), cx), cx) < 1e-15);
  const ScalarField c2y = from_function(g, [](double, double y, double) { return std::cos(2.0 * y); });
  CHECK(max_coeff_diff(apply_gamma(MultiplierSpec::power(1.0), c2y), 0.5 * c2y) < 1e-15);
  CHECK(max_coeff(apply_gamma(MultiplierSpec::power_log(1.5, 1.0), ScalarField(g))) == 0.0);
  const ScalarField r = random_scalar(g, 3);
  CHECK(max_coeff_diff(apply_gamma(MultiplierSpec::power(2.0), r), lambda_power(r, -2.0)) < 1e-14);
}

TEST_CASE("compute_V examples")
{
  const Grid g(16);
  for (double a : {1.0, 1.5, 2.0})
  {
    const auto spec = MultiplierSpec::power(a);
    const VectorField abc = abc_field(g, 0.7, 1.1, -0.4);
    CHECK(max_coeff_diff(compute_V(spec, abc), -spec(1.0) * abc) < 1e-15);
  }
  const VectorField b = single_mode(g, 1, 0, 0, 2);
  const VectorField expect(ScalarField(g),
                           from_function(g, [](double x, double, double) { return -std::sin(x); }),
                           ScalarField(g));
  CHECK(max_coeff_diff(compute_V(MultiplierSpec::power(1.0), b), expect) < 1e-15);
  CHECK(max_coeff(compute_V(MultiplierSpec::power(1.0), VectorField(g))) == 0.0);

  VectorField with_mean(g);
  with_mean[0][0] = 1.0;
  CHECK_THROWS_AS(compute_V(MultiplierSpec::power(1.0), with_mean), DomainError);
}

TEST_CASE("structural assumptions")
{
  const auto radii = logspace(1e-2, 1e3, 121);
  REQUIRE(radii.size() == 121);
  CHECK(radii.front() == doctest::Approx(1e-2));
  CHECK(radii.back() == doctest::Approx(1e3));
  for (double a : {1.0, 1.25, 1.5, 1.75, 2.0})
  {
    CHECK(validate_assumptions(MultiplierSpec::power(a), radii).all_ok());
  }
  const auto half = validate_assumptions(MultiplierSpec::power(0.5), radii);
  CHECK_FALSE(half.as1_bounded);
  CHECK_FALSE(half.all_ok());

  const auto increasing = MultiplierSpec::tabulated({{0.01, 0.01}, {1.0, 1.0}, {1000.0, 1000.0}});
  CHECK_FALSE(validate_assumptions(increasing, radii).as2_monotone);

  CHECK_THROWS_AS(validate_assumptions(MultiplierSpec::power(1.0), {}), DomainError);
  CHECK_THROWS_AS(validate_assumptions(MultiplierSpec::power(1.0), {2.0, 1.0}), DomainError);
}

TEST_CASE("log symbols outside 1 < a < 2 produce a warning")
{
  CHECK(MultiplierSpec::power_log(1.5, 1.0).warnings().empty());
  CHECK_FALSE(MultiplierSpec::power_log(2.5, 1.0).warnings().empty());
}
