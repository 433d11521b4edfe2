#include "cosmoharvest/quadrature.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <stdexcept>

using namespace cosmoharvest::quadrature;

namespace {

  constexpr double pi = std::numbers::pi;

  Integrand2D gaussian(double omega = 0.0) {
    Integrand2D in;
    in.f = [omega](double t, double t2) {
      double const ph = omega * (t + t2);
      return std::exp(-t * t - t2 * t2) * Complex(std::cos(ph), std::sin(ph));
    };
    in.t_window  = Window::around(0.0, 1.0);
    in.t2_window = Window::around(0.0, 1.0);
    in.frequency = omega;
    return in;
  }

  // Narrow ridge parallel to the diagonal, declared through s_breaks so the
  // first cells see it; resolving it still takes many refinements.
  Integrand2D ridge() {
    Integrand2D in;
    in.f = [](double t, double t2) {
      double const u = (t - t2 - 0.37) / 0.004;
      return Complex(std::exp(-t * t - t2 * t2 - u * u), 0.0);
    };
    in.t_window  = Window::around(0.0, 1.0);
    in.t2_window = Window::around(0.0, 1.0);
    in.s_breaks  = {0.37};
    return in;
  }

  QuadratureConfig serial_config() {
    QuadratureConfig c;
    c.execution = Execution::serial;
    return c;
  }

} // namespace

TEST_CASE("gaussian over the square and the ordered half") {
  auto const cfg = serial_config();
  auto const sq  = integrate_square(gaussian(), cfg);
  CHECK(sq.status == Status::converged);
  CHECK(std::abs(sq.value - pi) < 1e-13);
  auto const half = integrate_ordered(gaussian(), cfg);
  CHECK(half.ok());
  CHECK(std::abs(half.value - pi / 2) < 1e-13);
}

TEST_CASE("oscillatory gaussian") {
  for (double omega : {2.0, 4.0, 8.0}) {
    CAPTURE(omega);
    auto const   r     = integrate_square(gaussian(omega), serial_config());
    double const exact = pi * std::exp(-omega * omega / 2);
    CHECK(r.ok());
    CHECK(std::abs(r.value - exact) <= std::max(1e-14, 1e-9 * exact) * 10);
  }
}

TEST_CASE("reported error bounds the true error") {
  QuadratureConfig cfg = serial_config();
  cfg.rel_tol          = 1e-6;
  cfg.abs_tol          = 0.0;
  Integrand2D in;
  in.f         = [](double t, double t2) { return Complex(t * std::exp(-t * t - t2 * t2), 0.0); };
  in.t_window  = Window::around(0.0, 1.0);
  in.t2_window = Window::around(0.0, 1.0);
  // mpmath: int_{t' <= t} t e^{-t^2 - t'^2}
  double const exact = 0.6266570686577501256039413;
  auto const   r     = integrate_ordered(in, cfg);
  CHECK(r.ok());
  CHECK(std::abs(r.value.real() - exact) <= r.error + 1e-15);
  CHECK(std::abs(r.value.real() - exact) < 1e-6 * exact);
}

TEST_CASE("asymmetric windows, non-symmetric integrand") {
  Integrand2D in;
  in.f         = [](double t, double t2) {
    return Complex(std::exp(-(t - 0.3) * (t - 0.3) - (t2 + 0.5) * (t2 + 0.5) / 2) * (1 + t * t2), 0.0);
  };
  in.t_window  = Window::around(0.3, 1.0);
  in.t2_window = Window::around(-0.5, std::sqrt(2.0));
  auto const r = integrate_ordered(in, serial_config());
  CHECK(r.ok());
  CHECK(r.value.real() == doctest::Approx(2.475336560578330769354539).epsilon(1e-10));
}

TEST_CASE("ordered plus reflected ordered equals the square") {
  Integrand2D in;
  in.f = [](double t, double t2) {
    return std::exp(-(t - 0.4) * (t - 0.4) - (t2 + 1.0) * (t2 + 1.0)) * Complex(std::cos(3 * t - t2), std::sin(t2));
  };
  in.t_window      = Window::around(0.4, 1.0);
  in.t2_window     = Window::around(-1.0, 1.0);
  in.frequency     = 3.0;
  Integrand2D flip = in;
  flip.f           = [g = in.f](double t, double t2) { return g(t2, t); };
  std::swap(flip.t_window, flip.t2_window);

  auto const cfg = serial_config();
  auto const a   = integrate_ordered(in, cfg);
  auto const b   = integrate_ordered(flip, cfg);
  auto const sq  = integrate_square(in, cfg);
  CHECK(std::abs(a.value + b.value - sq.value) <= 2 * cfg.rel_tol * std::abs(sq.value));
}

TEST_CASE("odd integrand integrates to zero") {
  Integrand2D in;
  in.f         = [](double t, double t2) { return Complex(t * std::exp(-t * t - t2 * t2), 0.0); };
  in.t_window  = Window::around(0.0, 1.0);
  in.t2_window = Window::around(0.0, 1.0);
  auto const cfg = serial_config();
  CHECK(std::abs(integrate_square(in, cfg).value) < cfg.abs_tol);
}

TEST_CASE("hull windows cover both centers") {
  auto const w = Window::hull(3.0, -1.0, 2.0);
  CHECK(w.first_center == -1.0);
  CHECK(w.last_center == 3.0);
  CHECK(w.lo(6.0) == -13.0);
  CHECK(w.hi(6.0) == 15.0);
}

TEST_CASE("narrow ridge converges with refinement") {
  auto const r = integrate_square(ridge(), serial_config());
  CHECK(r.ok());
  // exact: pi s / sqrt(2 + s^2) e^{-c^2 / (2 + s^2)}
  double const s     = 0.004;
  double const exact = pi * s / std::sqrt(2 + s * s) * std::exp(-0.37 * 0.37 / (2 + s * s));
  CHECK(r.value.real() == doctest::Approx(exact).epsilon(1e-8));
}

TEST_CASE("failure statuses") {
  SUBCASE("depth limit") {
    auto cfg             = serial_config();
    cfg.max_subdivisions = 0;
    auto const r         = integrate_square(ridge(), cfg);
    CHECK(r.status == Status::depth_limited);
    CHECK_FALSE(r.ok());
  }
  SUBCASE("cell budget") {
    auto cfg      = serial_config();
    cfg.max_cells = 300;
    auto const r  = integrate_square(ridge(), cfg);
    CHECK(r.status == Status::budget_exhausted);
    CHECK_FALSE(r.ok());
  }
  SUBCASE("unreachable tolerance stops at round-off") {
    auto cfg    = serial_config();
    cfg.rel_tol = 1e-19;
    cfg.abs_tol = 0.0;
    auto const r = integrate_square(gaussian(), cfg);
    CHECK(r.status == Status::roundoff_limited);
    CHECK(r.ok());
    CHECK(std::abs(r.value - pi) < 1e-13);
  }
  CHECK(to_string(Status::budget_exhausted) == "budget_exhausted");
}

TEST_CASE("serial and OpenMP execution agree bit for bit") {
  auto cfg      = serial_config();
  auto const s1 = integrate_square(ridge(), cfg);
  cfg.execution = Execution::parallel;
  auto const p1 = integrate_square(ridge(), cfg);
  CHECK(s1.value == p1.value);
  CHECK(s1.error == p1.error);
  CHECK(s1.cells == p1.cells);
}

TEST_CASE("configuration validation") {
  QuadratureConfig c;
  CHECK_NOTHROW(c.validate());
  c.rel_tol = 0.0;
  CHECK_THROWS_AS(c.validate(), std::invalid_argument);
  c                  = {};
  c.truncation_width = 3.9;
  CHECK_THROWS_AS(c.validate(), std::invalid_argument);
  c         = {};
  c.abs_tol = -1.0;
  CHECK_THROWS_AS(c.validate(), std::invalid_argument);
  Integrand2D empty;
  CHECK_THROWS_AS(integrate_square(empty, QuadratureConfig{}), std::invalid_argument);
}
