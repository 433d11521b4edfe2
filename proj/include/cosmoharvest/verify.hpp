#pragma once

#include "cosmoharvest/harvest.hpp"

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace cosmoharvest::verify {

  struct CheckResult {
    std::string name;
    bool        passed    = false;
    double      residual  = 0.0; ///< worst observed deviation
    double      threshold = 0.0; ///< pass iff residual < threshold
    double      seconds   = 0.0;
    std::string detail;
  };

  struct VerifyOptions {
    QuadratureConfig quadrature;
    std::uint64_t    seed = 20240917;
    /// Test hook: the kernel oracle check uses a Dawson function perturbed by
    /// one part in 1e6, which it must detect.
    bool corrupt_dawson = false;
  };

  /// Closed-form cross kernel against the radial momentum integral at 50
  /// random (deta, d, Sigma) in [-5,5] x [0.1,5] x [0.05,2]; relative 1e-8.
  CheckResult check_kernel_oracle(VerifyOptions const &opts);

  /// Cross kernel at d = 1e-8 Sigma against the self kernel at 20 random
  /// (deta, Sigma); relative 1e-5.
  CheckResult check_zero_separation(VerifyOptions const &opts);

  /// |M+ + M- - M| within twice the quadrature tolerance on a few line points.
  CheckResult check_decomposition(VerifyOptions const &opts);

  /// Joint time shift xi = 2 with sigma and d rescaled by e^{-H xi}
  /// (comoving, H = 0.1, Omega = 4, sigma = 0.1, d = 2, t_b = 1): L_aa, L_bb
  /// and |M| unchanged and M rotated by 2 Omega xi, to 1e-6.
  CheckResult check_time_shift(VerifyOptions const &opts);

  /// Flat space, equal detectors switched together: |phi| = pi/2 to 1e-3 for
  /// d in {1, 2, 4}; H = 1e-6 agrees with H = 0 to 1e-4.
  CheckResult check_minkowski_phase(VerifyOptions const &opts);

  /// Every quadratic output scales by lambda^2 / lambda'^2 at 3 points.
  CheckResult check_coupling_scaling(VerifyOptions const &opts);

  std::vector<CheckResult> run_all(VerifyOptions const &opts);

  /// Aligned plain-text table, one line per check.
  void print_report(std::ostream &out, std::vector<CheckResult> const &results);

} // namespace cosmoharvest::verify
