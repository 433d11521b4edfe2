#include "cosmoharvest/kernels.hpp"

#include <cmath>

namespace cosmoharvest {

  namespace {

    constexpr double four_pi = 4.0 * std::numbers::pi;

    double dawson_fn(double x) { return specfun::dawson(x); }

    // I'(a) = 1 - a I(a) = D'(a/sqrt2) - i a h(a)
    Complex aux_I_prime(double a) {
      return {specfun::dawson_prime(a / std::numbers::sqrt2), -a * specfun::gauss_h(a)};
    }

    // I'''(a) = a^2 - 2 + (3a - a^3) I(a)
    Complex aux_I_third(double a) {
      return (a * a - 2.0) + (3.0 * a - a * a * a) * specfun::aux_I(a);
    }

  } // namespace

  Complex kernel_cross(KernelInputs const &in) { return detail::kernel_cross_with(in, dawson_fn); }

  Complex kernel_self(double delta_eta, double sigma) {
    if (!(sigma > 0.0)) throw std::invalid_argument("kernel width Sigma must be > 0");
    return four_pi / (sigma * sigma) * aux_I_prime(delta_eta / sigma);
  }

  Complex kernel_minus(KernelInputs const &in) {
    detail::check_inputs(in);
    double const ap = (in.delta_eta + in.d) / in.sigma;
    double const am = (in.delta_eta - in.d) / in.sigma;
    double const pref = 2.0 * std::numbers::pi / (in.sigma * in.d);
    return {0.0, pref * (specfun::gauss_h(ap) - specfun::gauss_h(am))};
  }

  Complex kernel_plus(KernelInputs const &in) { return kernel_cross(in) - kernel_minus(in); }

  Complex smeared_kernel(KernelInputs const &in, KernelPart part) {
    if (!(in.sigma > 0.0)) throw std::invalid_argument("kernel width Sigma must be > 0");
    if (!(in.d >= 0.0)) throw std::invalid_argument("separation d must be >= 0");

    Complex k;
    if (in.d >= series_threshold * in.sigma) {
      switch (part) {
        case KernelPart::full: return kernel_cross(in);
        case KernelPart::plus: return kernel_plus(in);
        case KernelPart::minus: return kernel_minus(in);
      }
    }
    double const a   = in.delta_eta / in.sigma;
    double const del = in.d / in.sigma;
    k = four_pi / (in.sigma * in.sigma) * aux_I_prime(a);
    if (del > 0.0) k += four_pi / (in.sigma * in.sigma) * (del * del / 6.0) * aux_I_third(a);
    switch (part) {
      case KernelPart::full: return k;
      case KernelPart::plus: return {k.real(), 0.0};
      case KernelPart::minus: return {0.0, k.imag()};
    }
    return k;
  }

} // namespace cosmoharvest
