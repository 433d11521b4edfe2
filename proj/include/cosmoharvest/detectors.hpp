#pragma once

#include "cosmoharvest/cosmology.hpp"

#include <array>

namespace cosmoharvest {

  /// How a detector's comoving smearing width evolves.
  enum class SizePolicy {
    comoving,     ///< sigma(t) = sigma; the detector expands with the Universe
    proper_fixed, ///< sigma(t) = sigma / a(t); the proper size stays sigma
  };

  using Position = std::array<double, 3>;

  /// Gaussian-switched, Gaussian-smeared detector at rest in comoving coordinates.
  struct DetectorParams {
    double     gap    = 0.0;       ///< Omega
    double     center = 0.0;       ///< switching peak t_j
    double     width  = 1.0;       ///< switching width T_j, > 0
    double     sigma  = 0.1;       ///< smearing width, > 0
    Position   position{0.0, 0.0, 0.0};
    SizePolicy policy = SizePolicy::comoving;

    /// Throws std::invalid_argument if any parameter is out of range.
    void validate() const;
  };

  struct DetectorPair {
    DetectorParams a;
    DetectorParams b;
    double         coupling = 1.0; ///< lambda

    void   validate() const;
    double separation() const; ///< comoving distance |x_a - x_b|
  };

  /// chi(t) = exp(-((t - t_j)/T_j)^2)
  double switching(DetectorParams const &det, double t);

  /// Comoving smearing width at time t under the detector's policy.
  double width_at(DetectorParams const &det, CosmologyModel const &model, double t);

  /// Sigma_ij(t, t') = sqrt(sigma_i(t)^2 + sigma_j(t')^2)
  double sigma_pair(DetectorParams const &i, DetectorParams const &j, CosmologyModel const &model,
                    double t, double t2);

  /// Sigma_ab(t, t') for the pair (detector a at t, detector b at t').
  double sigma_pair(DetectorPair const &pair, CosmologyModel const &model, double t, double t2);

} // namespace cosmoharvest
