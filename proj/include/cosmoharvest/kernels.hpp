#pragma once

#include "cosmoharvest/specfun.hpp"

#include <complex>
#include <numbers>
#include <stdexcept>

namespace cosmoharvest {

  using Complex = std::complex<double>;

  /// Arguments of the smeared Wightman kernel. Cosmology and sizing policy
  /// enter only through these three numbers.
  struct KernelInputs {
    double delta_eta = 0.0; ///< eta(t) - eta(t')
    double d         = 0.0; ///< comoving separation, >= 0
    double sigma     = 1.0; ///< combined width Sigma_ij(t, t'), > 0
  };

  /// Thrown by the closed forms when d / Sigma is too small for the
  /// bracket difference to carry any digits.
  class DegenerateSeparation : public std::domain_error {
  public:
    using std::domain_error::domain_error;
  };

  /// Closed forms are refused for d <= separation_floor * Sigma.
  inline constexpr double separation_floor = 1e-6;
  /// smeared_kernel switches to the small-d expansion below this d / Sigma.
  inline constexpr double series_threshold = 1e-3;

  /// K_ij = 2 pi / (Sigma d) [I((deta + d)/Sigma) - I((deta - d)/Sigma)]
  Complex kernel_cross(KernelInputs const &in);

  /// K_jj = 4 pi / Sigma^2 [1 - (deta/Sigma) I(deta/Sigma)], the d -> 0 limit.
  Complex kernel_self(double delta_eta, double sigma);

  /// Commutator part: i Im K_ij = 2 pi i / (Sigma d) [h((deta + d)/Sigma) - h((deta - d)/Sigma)]
  Complex kernel_minus(KernelInputs const &in);

  /// Anticommutator part: kernel_cross - kernel_minus (real).
  Complex kernel_plus(KernelInputs const &in);

  enum class KernelPart { full, plus, minus };

  /// Total version of the kernels used by the integrands: exact d = 0 limit,
  /// a second-order expansion in d / Sigma below series_threshold and the closed
  /// form above it.
  ///
  /// K(d) = 4 pi / Sigma^2 [I'(a) + (d/Sigma)^2 / 6 I'''(a)] + O((d/Sigma)^4)
  Complex smeared_kernel(KernelInputs const &in, KernelPart part = KernelPart::full);

  namespace detail {

    inline void check_inputs(KernelInputs const &in) {
      if (!(in.sigma > 0.0)) throw std::invalid_argument("kernel width Sigma must be > 0");
      if (!(in.d >= 0.0)) throw std::invalid_argument("separation d must be >= 0");
      if (in.d <= separation_floor * in.sigma) {
        throw DegenerateSeparation("d / Sigma below the closed-form floor; use kernel_self or smeared_kernel");
      }
    }

    /// kernel_cross with the Dawson evaluation injected. The verify suite uses
    /// this to exercise the oracle check against a corrupted special function.
    template <class Dawson> Complex kernel_cross_with(KernelInputs const &in, Dawson &&dawson) {
      check_inputs(in);
      constexpr double s2 = std::numbers::sqrt2;
      double const     ap = (in.delta_eta + in.d) / in.sigma;
      double const     am = (in.delta_eta - in.d) / in.sigma;
      double const     re = s2 * (dawson(ap / s2) - dawson(am / s2));
      double const     im = specfun::gauss_h(ap) - specfun::gauss_h(am);
      double const     pref = 2.0 * std::numbers::pi / (in.sigma * in.d);
      return {pref * re, pref * im};
    }

  } // namespace detail

} // namespace cosmoharvest
