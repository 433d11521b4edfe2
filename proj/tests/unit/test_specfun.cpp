#include "cosmoharvest/specfun.hpp"

#include <doctest.h>

#include <cmath>

using namespace cosmoharvest::specfun;

namespace {
  double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }
} // namespace

// Reference values from mpmath at 30 digits.
TEST_CASE("dawson matches high-precision reference values") {
  struct {
    double x, v;
  } const ref[] = {
      {0.1, 0.09933599239785286115},  {1.0, 0.53807950691276841914},    {2.0, 0.30134038892379196603},
      {5.0, 0.10213407442427683544},  {10.0, 0.050253847187598528033},  {50.0, 0.010002001201201683031},
      {100.0, 0.0050002500375093782827},
  };
  for (auto const &r : ref) {
    CAPTURE(r.x);
    CHECK(rel(dawson(r.x), r.v) < 1e-15);
  }
}

TEST_CASE("dawson is odd and vanishes at zero") {
  CHECK(dawson(0.0) == 0.0);
  for (double x : {1e-300, 1e-8, 0.3, 0.49999, 0.5, 2.7, 9.9999, 10.0, 37.0, 1e8}) {
    CAPTURE(x);
    CHECK(dawson(-x) == -dawson(x));
  }
}

TEST_CASE("dawson is continuous across the evaluation regimes") {
  for (double x : {0.5, 10.0}) {
    double const lo = dawson(std::nextafter(x, 0.0));
    double const hi = dawson(x);
    CAPTURE(x);
    CHECK(rel(lo, hi) < 1e-15);
  }
}

TEST_CASE("dawson satisfies its differential equation D' = 1 - 2 x D") {
  double const h = 1e-5;
  for (double x = -12.0; x <= 12.0; x += 0.37) {
    double const fd  = (dawson(x + h) - dawson(x - h)) / (2 * h);
    double const ode = 1.0 - 2.0 * x * dawson(x);
    CAPTURE(x);
    CHECK(std::abs(fd - ode) < 1e-10);
  }
}

TEST_CASE("dawson_prime matches reference values") {
  CHECK(rel(dawson_prime(0.3), 0.830421000987212842794094628889) < 1e-15);
  CHECK(rel(dawson_prime(3.0), -0.0696261836633497240555969534429) < 1e-13);
  CHECK(rel(dawson_prime(20.0), -0.00125471705614687787979809391294) < 1e-13);
  CHECK(dawson_prime(0.0) == 1.0);
}

TEST_CASE("auxiliary I at a = 2") {
  auto const v = aux_I(2.0);
  CHECK(rel(v.real(), 0.6399880745654089256821) < 1e-15);
  CHECK(rel(v.imag(), 0.1696176237580441186029) < 1e-15);
}

TEST_CASE("gauss_h") {
  CHECK(gauss_h(0.0) == doctest::Approx(std::sqrt(M_PI / 2)).epsilon(1e-15));
  CHECK(gauss_h(40.0) == 0.0);
  CHECK(gauss_h(-1.5) == gauss_h(1.5));
}
