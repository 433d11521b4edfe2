#include "cosmoharvest/specfun.hpp"

#include <array>
#include <cmath>
#include <numbers>

namespace cosmoharvest::specfun {

  namespace {

    constexpr double series_limit     = 0.5;
    constexpr double asymptotic_limit = 10.0;

    // Rybicki: D(x) ~ (1/sqrt(pi)) sum_{n odd} exp(-(x - n h)^2) / n.
    // Discretisation error ~ exp(-(pi / 2h)^2), about 1e-27 for h = 0.2.
    constexpr double rybicki_h     = 0.2;
    constexpr int    rybicki_terms = 18;

    struct RybickiTable {
      std::array<double, rybicki_terms> c{};
      RybickiTable() {
        for (int i = 0; i < rybicki_terms; ++i) {
          double const v = (2 * i + 1) * rybicki_h;
          c[i]           = std::exp(-v * v);
        }
      }
    };

    double dawson_series(double x) {
      // sum_n (-1)^n 2^n x^(2n+1) / (2n+1)!!
      double const x2   = x * x;
      double       term = x;
      double       sum  = x;
      for (int n = 1; n < 40; ++n) {
        term *= -2.0 * x2 / (2 * n + 1);
        sum += term;
        if (std::abs(term) < 1e-18 * std::abs(sum)) break;
      }
      return sum;
    }

    double dawson_rybicki(double ax) {
      static RybickiTable const table;
      double const n0 = 2.0 * std::nearbyint(0.5 * ax / rybicki_h);
      double const xp = ax - n0 * rybicki_h;
      double       e1 = std::exp(2.0 * xp * rybicki_h);
      double const e2 = e1 * e1;
      double       d1 = n0 + 1.0;
      double       d2 = n0 - 1.0;
      double       sum = 0.0;
      for (int i = 0; i < rybicki_terms; ++i) {
        sum += table.c[i] * (e1 / d1 + 1.0 / (d2 * e1));
        d1 += 2.0;
        d2 -= 2.0;
        e1 *= e2;
      }
      return std::numbers::inv_sqrtpi * std::exp(-xp * xp) * sum;
    }

    // D(x) ~ 1/(2x) sum_n (2n-1)!! / (2x^2)^n
    double dawson_asymptotic(double ax) {
      double const y    = 1.0 / (2.0 * ax * ax);
      double       term = 1.0;
      double       sum  = 1.0;
      for (int n = 1; n < 60; ++n) {
        double const next = term * (2 * n - 1) * y;
        if (next > term) break;
        term = next;
        sum += term;
        if (term < 1e-18 * sum) break;
      }
      return sum / (2.0 * ax);
    }

  } // namespace

  double dawson(double x) {
    double const ax = std::abs(x);
    double       r;
    if (ax < series_limit) {
      return dawson_series(x);
    } else if (ax < asymptotic_limit) {
      r = dawson_rybicki(ax);
    } else {
      r = dawson_asymptotic(ax);
    }
    return std::copysign(r, x);
  }

  double dawson_prime(double x) {
    double const ax = std::abs(x);
    if (ax < asymptotic_limit) return 1.0 - 2.0 * x * dawson(x);
    // 1 - 2x D(x) ~ -sum_{n>=1} (2n-1)!! / (2x^2)^n
    double const y    = 1.0 / (2.0 * ax * ax);
    double       term = 1.0;
    double       sum  = 0.0;
    for (int n = 1; n < 60; ++n) {
      double const next = term * (2 * n - 1) * y;
      if (next > term) break;
      term = next;
      sum += term;
      if (term < 1e-18 * sum) break;
    }
    return -sum;
  }

  double gauss_h(double z) {
    constexpr double sqrt_half_pi = 1.2533141373155002512;
    return sqrt_half_pi * std::exp(-0.5 * z * z);
  }

  std::complex<double> aux_I(double a) {
    return {std::numbers::sqrt2 * dawson(a / std::numbers::sqrt2), gauss_h(a)};
  }

} // namespace cosmoharvest::specfun
