#pragma once

#include "cosmoharvest/harvest.hpp"

namespace cosmoharvest::oracles {

  /// Kernel from its momentum-space definition, reduced to one radial integral:
  ///   d > 0 : (4 pi / d) int_0^inf sin(k d) e^{-k^2 Sigma^2 / 2} e^{-i k deta} dk
  ///   d = 0 : 4 pi int_0^inf k e^{-k^2 Sigma^2 / 2} e^{-i k deta} dk
  /// Adaptive Gauss-Kronrod on panels shorter than a few oscillation periods,
  /// cut off where the Gaussian drops below 1e-25.
  Complex radial_kernel(double delta_eta, double d, double sigma);

  /// Brute-force trapezoid sum of M over the full square, with the time
  /// ordering written as step functions:
  ///   -c int int e^{i(Wa t + Wb t')} chi_a(t) chi_b(t') [theta(t - t') K_ab + theta(t' - t) K_ab*]
  /// Kernels come from kernel_cross on the grid. part selects K, i Im K or Re K.
  Complex grid_correlation(DetectorPair const &pair, CosmologyModel const &model, double step,
                           KernelPart part = KernelPart::full, double truncation_width = 6.0);

  /// Brute-force trapezoid sum of L_jj for one detector at unit coupling.
  double grid_local(DetectorParams const &det, CosmologyModel const &model, double step,
                    double truncation_width = 6.0);

} // namespace cosmoharvest::oracles
