#pragma once

namespace cosmoharvest {

  /// Spatially flat FRW backgrounds with a closed-form conformal time.
  ///
  /// Detectors sit at fixed comoving positions, so their proper time is the
  /// coordinate time t; no separate proper-time map is needed.
  struct CosmologyModel {
    enum class Kind { de_sitter, minkowski };

    Kind   kind   = Kind::minkowski;
    double hubble = 0.0; // 1/time, ignored for minkowski

    static CosmologyModel de_sitter(double hubble);
    static CosmologyModel minkowski() { return {}; }

    /// Effective expansion rate: hubble for de Sitter, 0 for Minkowski.
    double rate() const { return kind == Kind::de_sitter ? hubble : 0.0; }
  };

  /// a(t): e^{Ht} in de Sitter, 1 in Minkowski.
  double scale_factor(CosmologyModel const &model, double t);

  /// eta(t) = (1 - e^{-Ht}) / H, with eta(0) = 0; reduces to t when H = 0.
  double conformal_time(CosmologyModel const &model, double t);

  /// eta(t) - eta(t2), evaluated without subtracting two nearly equal numbers.
  double conformal_interval(CosmologyModel const &model, double t, double t2);

} // namespace cosmoharvest
