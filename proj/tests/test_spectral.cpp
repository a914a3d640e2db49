#include <doctest.h>

#include "avector/errors.hpp"
#include "avector/presets.hpp"
#include "avector/spectral.hpp"
#include "support.hpp"

using namespace avec;
using namespace avec::test;

namespace
{

VectorField vec(const Grid &g, std::function<double(double, double, double)> fx,
                std::function<double(double, double, double)> fy,
                std::function<double(double, double, double)> fz)
{
  return VectorField(from_function(g, fx), from_function(g, fy), from_function(g, fz));
}

double zero(double, double, double) { return 0.0; }

}  // namespace

TEST_CASE("curl examples")
{
  const Grid g(16);
  const VectorField f = vec(g, [](double, double y, double) { return std::sin(y); }, zero, zero);
  const VectorField expect = vec(g, zero, zero, [](double, double y, double) { return -std::cos(y); });
  CHECK(max_coeff_diff(curl(f), expect) < 1e-14);

  const ScalarField c = from_function(g, [](double x, double, double) { return std::cos(x); });
  CHECK(max_coeff(curl(gradient(c))) < 1e-15);

  const VectorField abc = abc_field(g);
  CHECK(max_coeff_diff(curl(abc), abc) < 1e-15);
  CHECK(max_coeff_diff(abc, vec(
                                 g, [](double, double y, double z) { return std::sin(z) + std::cos(y); },
                                 [](double x, double, double z) { return std::sin(x) + std::cos(z); },
                                 [](double x, double y, double) { return std::sin(y) + std::cos(x); })) <
        1e-14);
}

TEST_CASE("curl of a gradient vanishes on random data")
{
  const Grid g(16);
  const ScalarField f = random_scalar(g, 7);
  CHECK(max_coeff(curl(gradient(f))) < 1e-13);
  CHECK(max_coeff(divergence(curl(random_vector(g, 8)))) < 1e-13);
}

TEST_CASE("lambda_power examples")
{
  const Grid g(16);
  const ScalarField cx = from_function(g, [](double x, double, double) { return std::cos(x); });
  CHECK(max_coeff_diff(lambda_power(cx, 1.0), cx) < 1e-15);
  const ScalarField c2y = from_function(g, [](double, double y, double) { return std::cos(2.0 * y); });
  CHECK(max_coeff_diff(lambda_power(c2y, -2.0), 0.25 * c2y) < 1e-15);
  const ScalarField one = from_function(g, [](double, double, double) { return 1.0; });
  CHECK(max_coeff(lambda_power(one, 0.5)) == 0.0);
  CHECK_THROWS_AS(lambda_power(one, -1.0), DomainError);
  const ScalarField r = random_scalar(g, 2);
  CHECK(max_coeff_diff(lambda_power(lambda_power(r, 1.3), -1.3), r) < 1e-13);
  CHECK(max_coeff_diff(lambda_power(r, 2.0), -1.0 * laplacian(r)) < 1e-12);
}

TEST_CASE("leray_project examples")
{
  const Grid g(16);
  const ScalarField p = from_function(g, [](double x, double y, double) { return std::sin(x) * std::cos(y); });
  CHECK(max_coeff(leray_project(gradient(p))) < 1e-15);
  const VectorField sy = vec(g, [](double, double y, double) { return std::sin(y); }, zero, zero);
  CHECK(max_coeff_diff(leray_project(sy), sy) == 0.0);
  const VectorField cx = vec(g, [](double x, double, double) { return std::cos(x); }, zero, zero);
  CHECK(max_coeff(leray_project(cx)) < 1e-15);

  const VectorField r = random_vector(g, 4);
  const VectorField pr = leray_project(r);
  CHECK(divergence_defect(pr) < 1e-14);
  CHECK(max_coeff_diff(leray_project(pr), pr) < 1e-15);
}

TEST_CASE("dealias examples")
{
  const Grid g(16);
  const ScalarField inside = random_scalar(g, 5);
  CHECK(is_band_limited(inside));
  CHECK(dealias(inside) == inside);

  ScalarField outside(g);
  outside.set_hermitian(16 / 2 - 1, 0, 0, 1.0);
  CHECK_FALSE(is_band_limited(outside));
  CHECK(max_coeff(dealias(outside)) == 0.0);

  ScalarField white(g);
  for (std::size_t i = 0; i < g.size(); ++i)
  {
    white[i] = 1.0;
  }
  const ScalarField d = dealias(white);
  for (std::size_t i = 0; i < g.size(); ++i)
  {
    const auto k = g.wavevector(i);
    const bool keep = std::abs(k[0]) <= 5 && std::abs(k[1]) <= 5 && std::abs(k[2]) <= 5;
    CHECK(d[i] == (keep ? Complex(1.0) : Complex(0.0)));
  }
}

TEST_CASE("dealiased product of band-limited fields is exact on its retained band")
{
  const Grid g(24);
  RandomFieldOptions opt;
  opt.band = 4;
  opt.seed = 2;
  const ScalarField a = random_scalar_field(g, opt);
  opt.seed = 3;
  const ScalarField b = random_scalar_field(g, opt);
  const ScalarField ab = product(a, b, false);
  double err = 0.0;
  for (int p = -8; p <= 8; ++p)
  {
    for (int q = -8; q <= 8; ++q)
    {
      Complex acc = 0.0;
      for (int s = -4; s <= 4; ++s)
        for (int t = -4; t <= 4; ++t)
          for (int u = -4; u <= 4; ++u)
          {
            if (std::abs(p - s) > 4 || std::abs(q - t) > 4)
            {
              continue;
            }
            acc += a.at(s, t, u) * b.at(p - s, q - t, -u);
          }
      err = std::max(err, std::abs(acc - ab.at(p, q, 0)));
    }
  }
  CHECK(err < 1e-13);
}

TEST_CASE("check_curl_times_identity")
{
  const Grid g(16);
  const VectorField b = random_vector(g, 1);
  CHECK(check_curl_times_identity(b, b) < 1e-12);

  VectorField p(g), q(g);
  p[1].set_hermitian(1, 0, 2, Complex(0.3, 0.1));
  p[2].set_hermitian(1, 0, 2, Complex(-0.2, 0.4));
  q[0].set_hermitian(0, -1, 1, Complex(0.5, 0.0));
  q[2].set_hermitian(0, -1, 1, Complex(0.0, 0.7));
  CHECK(check_curl_times_identity(p, q) < 1e-12);

  CHECK(check_curl_times_identity(random_solenoidal(g, 2), random_solenoidal(g, 3)) < 1e-12);
  CHECK(check_curl_times_identity(random_vector(g, 4), random_vector(g, 5)) < 1e-12);
}

TEST_CASE("operators reject mismatched grids")
{
  CHECK_THROWS_AS(cross_product(VectorField(Grid(8)), VectorField(Grid(16))), StructuralError);
}
