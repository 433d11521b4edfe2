#include "cosmoharvest/kernels.hpp"
#include "cosmoharvest/oracles.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace cosmoharvest;

namespace {
  double rel(Complex a, Complex b) { return std::abs(a - b) / std::abs(b); }
} // namespace

TEST_CASE("cross kernel against an independent high-precision value") {
  // mpmath, closed form via erfi and radial integral agree to 30 digits
  Complex const ref(11.6164250980683835535306702223, -4.91643368795819702635720124213);
  CHECK(rel(kernel_cross({0.7, 1.3, 0.4}), ref) < 1e-14);
}

TEST_CASE("self kernel against an independent high-precision value") {
  Complex const ref(-18.4159991267551406699196271276, -37.2541314951893421407088637607);
  CHECK(rel(kernel_self(0.7, 0.4), ref) < 1e-14);
}

TEST_CASE("closed forms match the radial momentum integral") {
  std::mt19937_64                        rng(7);
  std::uniform_real_distribution<double> ue(-8.0, 8.0), ud(0.05, 6.0), us(0.03, 3.0);
  for (int i = 0; i < 20; ++i) {
    double const e = ue(rng), d = ud(rng), s = us(rng);
    CAPTURE(e);
    CAPTURE(d);
    CAPTURE(s);
    CHECK(rel(kernel_cross({e, d, s}), oracles::radial_kernel(e, d, s)) < 1e-10);
  }
  for (double e : {-3.0, 0.0, 0.2, 5.0}) {
    CAPTURE(e);
    CHECK(rel(kernel_self(e, 0.3), oracles::radial_kernel(e, 0.0, 0.3)) < 1e-10);
  }
}

TEST_CASE("commutator and anticommutator parts") {
  KernelInputs const in{1.1, 2.0, 0.3};
  Complex const      k = kernel_cross(in);
  CHECK(kernel_minus(in).real() == 0.0);
  CHECK(kernel_plus(in).imag() == doctest::Approx(0.0).epsilon(1e-15).scale(std::abs(k)));
  CHECK(rel(kernel_plus(in) + kernel_minus(in), k) < 1e-15);
  CHECK(kernel_minus(in).imag() == doctest::Approx(k.imag()).epsilon(1e-15));
  // commutator is concentrated on the light cone |deta| = d
  CHECK(std::abs(kernel_minus({2.0, 2.0, 0.1})) > 1e3 * std::abs(kernel_minus({0.0, 2.0, 0.1})));
}

TEST_CASE("kernel symmetry under deta -> -deta is complex conjugation") {
  for (double e : {0.3, 1.7, 4.0}) {
    CAPTURE(e);
    CHECK(rel(kernel_cross({-e, 1.2, 0.5}), std::conj(kernel_cross({e, 1.2, 0.5}))) < 1e-14);
    CHECK(rel(kernel_self(-e, 0.5), std::conj(kernel_self(e, 0.5))) < 1e-14);
  }
}

TEST_CASE("closed form refuses degenerate separations") {
  CHECK_THROWS_AS(kernel_cross({0.3, 1e-9, 1.0}), DegenerateSeparation);
  CHECK_THROWS_AS(kernel_cross({0.3, 0.0, 1.0}), DegenerateSeparation);
  CHECK_THROWS_AS(kernel_cross({0.3, 1.0, 0.0}), std::invalid_argument);
  CHECK_THROWS_AS(kernel_cross({0.3, -1.0, 1.0}), std::invalid_argument);
}

TEST_CASE("smeared kernel is continuous across the series threshold") {
  double const s = 0.4;
  for (double e : {-1.0, 0.0, 0.25, 2.0}) {
    double const d  = series_threshold * s;
    Complex const lo = smeared_kernel({e, std::nextafter(d, 0.0), s});
    Complex const hi = smeared_kernel({e, d, s});
    CAPTURE(e);
    // the closed form carries ~eps / threshold relative error here
    CHECK(rel(lo, hi) < 1e-11);
  }
  CHECK(smeared_kernel({0.3, 0.0, s}) == kernel_self(0.3, s));
}

TEST_CASE("smeared kernel parts") {
  KernelInputs const in{0.9, 1.5, 0.2};
  CHECK(smeared_kernel(in, KernelPart::full) == kernel_cross(in));
  CHECK(smeared_kernel(in, KernelPart::minus) == kernel_minus(in));
  CHECK(smeared_kernel(in, KernelPart::plus) == kernel_plus(in));
  KernelInputs const small{0.9, 1e-7, 0.2};
  Complex const      k = smeared_kernel(small);
  CHECK(smeared_kernel(small, KernelPart::minus) == Complex(0.0, k.imag()));
  CHECK(smeared_kernel(small, KernelPart::plus) == Complex(k.real(), 0.0));
}
