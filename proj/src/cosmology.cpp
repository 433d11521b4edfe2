#include "cosmoharvest/cosmology.hpp"

#include <cmath>
#include <stdexcept>

namespace cosmoharvest {

  CosmologyModel CosmologyModel::de_sitter(double hubble) {
    if (!(hubble > 0.0) || !std::isfinite(hubble)) {
      throw std::invalid_argument("de Sitter model requires a finite Hubble rate H > 0");
    }
    return {Kind::de_sitter, hubble};
  }

  double scale_factor(CosmologyModel const &model, double t) {
    return std::exp(model.rate() * t);
  }

  double conformal_time(CosmologyModel const &model, double t) {
    double const h = model.rate();
    if (h == 0.0) return t;
    return -std::expm1(-h * t) / h;
  }

  double conformal_interval(CosmologyModel const &model, double t, double t2) {
    double const h = model.rate();
    if (h == 0.0) return t - t2;
    // e^{-H t2} (1 - e^{-H (t - t2)}) / H
    return -std::exp(-h * t2) * std::expm1(-h * (t - t2)) / h;
  }

} // namespace cosmoharvest
