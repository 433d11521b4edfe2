#include "cosmoharvest/detectors.hpp"

#include <cmath>
#include <stdexcept>

namespace cosmoharvest {

  void DetectorParams::validate() const {
    if (!(width > 0.0) || !std::isfinite(width)) throw std::invalid_argument("switching width T must be > 0");
    if (!(sigma > 0.0) || !std::isfinite(sigma)) throw std::invalid_argument("smearing width sigma must be > 0");
    if (!std::isfinite(gap) || !std::isfinite(center)) throw std::invalid_argument("gap and center must be finite");
    for (double x : position) {
      if (!std::isfinite(x)) throw std::invalid_argument("detector position must be finite");
    }
  }

  void DetectorPair::validate() const {
    a.validate();
    b.validate();
    if (!std::isfinite(coupling)) throw std::invalid_argument("coupling must be finite");
  }

  double DetectorPair::separation() const {
    double const dx = a.position[0] - b.position[0];
    double const dy = a.position[1] - b.position[1];
    double const dz = a.position[2] - b.position[2];
    return std::hypot(dx, dy, dz);
  }

  double switching(DetectorParams const &det, double t) {
    double const u = (t - det.center) / det.width;
    return std::exp(-u * u);
  }

  double width_at(DetectorParams const &det, CosmologyModel const &model, double t) {
    switch (det.policy) {
      case SizePolicy::comoving: return det.sigma;
      case SizePolicy::proper_fixed: return det.sigma * std::exp(-model.rate() * t);
    }
    return det.sigma;
  }

  double sigma_pair(DetectorParams const &i, DetectorParams const &j, CosmologyModel const &model,
                    double t, double t2) {
    return std::hypot(width_at(i, model, t), width_at(j, model, t2));
  }

  double sigma_pair(DetectorPair const &pair, CosmologyModel const &model, double t, double t2) {
    return sigma_pair(pair.a, pair.b, model, t, t2);
  }

} // namespace cosmoharvest
