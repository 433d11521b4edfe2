#pragma once

#include <complex>

namespace cosmoharvest::specfun {

  /// Dawson function D(x) = (sqrt(pi)/2) exp(-x^2) erfi(x).
  ///
  /// Maclaurin series for |x| < 0.5, Rybicki's sampling sum for the mid range
  /// and the asymptotic expansion for |x| >= 10. Relative accuracy is close to
  /// machine precision everywhere; the function is exactly odd.
  double dawson(double x);

  /// D'(x) = 1 - 2x D(x), evaluated without the cancellation that the direct
  /// formula suffers for large |x|.
  double dawson_prime(double x);

  /// h(z) = sqrt(pi/2) exp(-z^2/2).
  double gauss_h(double z);

  /// I(a) = i sqrt(pi/2) exp(-a^2/2) + sqrt(2) D(a/sqrt(2)).
  std::complex<double> aux_I(double a);

} // namespace cosmoharvest::specfun
