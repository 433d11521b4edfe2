#pragma once

#include "cosmoharvest/cosmology.hpp"
#include "cosmoharvest/detectors.hpp"
#include "cosmoharvest/kernels.hpp"
#include "cosmoharvest/quadrature.hpp"

#include <array>
#include <optional>
#include <string>
#include <vector>

namespace cosmoharvest {

  using quadrature::QuadratureConfig;

  /// One integrated quantity with its quadrature diagnostics.
  struct Estimate {
    Complex            value{};
    double             error  = 0.0;
    quadrature::Status status = quadrature::Status::converged;

    bool ok() const { return status == quadrature::Status::converged || status == quadrature::Status::roundoff_limited; }
  };

  enum class LocalWhich { A, B, AB };

  /// All quadratic quantities are in units of lambda^2 scaled by the pair's coupling.
  struct HarvestResult {
    double                 L_aa = 0.0, L_bb = 0.0;
    std::optional<Complex> L_ab;
    Complex                M{}, M_plus{}, M_minus{};
    double                 N = 0.0, N_plus = 0.0, N_minus = 0.0;
    std::optional<double>  phi; ///< arg(M+/M-) in (-pi, pi]; empty if either vanishes

    struct Errors {
      double L_aa = 0, L_bb = 0, M = 0, M_plus = 0, M_minus = 0;
    } errors;
    std::vector<std::string> failures; ///< names of integrals that did not converge

    bool ok() const { return failures.empty(); }
  };

  /// L_ij. Diagonal terms are real: only the ordered half is integrated and
  /// L_jj = 2 Re(...) by Hermiticity, so no imaginary residue is left.
  Estimate local_term(DetectorPair const &pair, LocalWhich which, CosmologyModel const &model,
                      QuadratureConfig const &cfg);

  /// M over the ordered region t' <= t with the symmetrised integrand.
  Estimate correlation_M(DetectorPair const &pair, CosmologyModel const &model, QuadratureConfig const &cfg);
  /// M- : the kernels replaced by their commutator part.
  Estimate correlation_M_minus(DetectorPair const &pair, CosmologyModel const &model, QuadratureConfig const &cfg);
  /// M+ : the kernels replaced by their anticommutator part, ordered region.
  Estimate correlation_M_plus(DetectorPair const &pair, CosmologyModel const &model, QuadratureConfig const &cfg);
  /// M+ on the full square with half the symmetrised integrand. The
  /// anticommutator part is symmetric, so this must agree with correlation_M_plus.
  Estimate correlation_M_plus_square(DetectorPair const &pair, CosmologyModel const &model,
                                     QuadratureConfig const &cfg);

  /// max(0, V), V = sqrt(|M|^2 + ((L_aa - L_bb)/2)^2) - (L_aa + L_bb)/2
  double negativity_from_parts(double L_aa, double L_bb, Complex M);

  /// V itself (may be negative).
  double negativity_v(double L_aa, double L_bb, Complex M);

  std::optional<double> relative_phase(Complex M_plus, Complex M_minus);

  /// Integrals computed at unit coupling.
  struct HarvestParts {
    Estimate                L_aa, L_bb, M, M_plus, M_minus;
    std::optional<Estimate> L_ab;
  };

  /// Pure arithmetic: negativities and phase from unit-coupling parts, then
  /// every quadratic field scaled by coupling^2.
  HarvestResult assemble(HarvestParts const &parts, double coupling);

  struct EvaluateOptions {
    bool with_L_ab = false; ///< needed only for density_matrix
  };

  HarvestResult evaluate(DetectorPair const &pair, CosmologyModel const &model, QuadratureConfig const &cfg,
                         EvaluateOptions const &opts = {});

  /// Basis {|g g>, |g e>, |e g>, |e e>} (detector A first).
  using DensityMatrix = std::array<std::array<Complex, 4>, 4>;

  /// Throws std::invalid_argument if the result carries no L_ab.
  DensityMatrix density_matrix(HarvestResult const &result);

  /// rho_00 + (rho_11 + rho_22) + rho_33; equals 1 for any density_matrix output.
  Complex trace(DensityMatrix const &rho);

  /// Transpose on detector A's indices.
  DensityMatrix partial_transpose(DensityMatrix const &rho);

} // namespace cosmoharvest
