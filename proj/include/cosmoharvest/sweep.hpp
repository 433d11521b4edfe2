#pragma once

#include "cosmoharvest/harvest.hpp"

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace cosmoharvest::sweep {

  /// All sweep parameters are dimensionless, in units of the common switching
  /// width T (set to 1). Detector A sits at the origin and switches at t = 0.
  enum class Mode { point, grid, line, verify };

  enum class Axis { d_over_T, delta_t_over_T, HT };

  std::string_view    to_string(Axis axis);
  std::optional<Axis> parse_axis(std::string_view name);
  std::string_view    to_string(Mode mode);

  struct AxisRange {
    Axis   axis  = Axis::delta_t_over_T;
    double min   = 0.0;
    double max   = 0.0;
    int    steps = 1;

    /// steps values from min to max inclusive; a single step yields min.
    std::vector<double> values() const;
  };

  /// Parses "MIN:MAX:STEPS". Throws std::invalid_argument on malformed input.
  AxisRange parse_range(Axis axis, std::string_view text);

  /// Values used for every parameter that is not swept.
  struct FixedParams {
    double OmegaT       = 6.0;
    double HT           = 0.1;
    double sigma_over_T = 0.1;
    double d_over_T     = 2.0;
    double t_b_over_T   = 0.0;
  };

  struct SweepSpec {
    Mode                   mode = Mode::point;
    std::vector<AxisRange> axes;
    FixedParams            fixed;
    SizePolicy             policy = SizePolicy::comoving;
    QuadratureConfig       quadrature;
    std::string            output; ///< empty: standard output
    int                    threads = 0; ///< 0: OpenMP default

    /// Throws std::invalid_argument on a spec that cannot be run: point takes
    /// no axes, line one, grid two distinct ones; steps >= 1; finite values;
    /// positive sigma; non-negative d and H.
    void validate() const;
  };

  /// One fully resolved parameter point.
  struct PointParams {
    double     d_over_T     = 2.0;
    double     t_b_over_T   = 0.0;
    double     HT           = 0.1;
    double     OmegaT       = 6.0;
    double     sigma_over_T = 0.1;
    SizePolicy policy       = SizePolicy::comoving;

    DetectorPair   pair() const;
    CosmologyModel model() const; ///< Minkowski when HT == 0
    /// eta(t_b) - eta(t_a) in units of T.
    double delta_eta_over_T() const;
  };

  /// Points in row-major order over the axis order (last axis fastest).
  std::vector<PointParams> expand(SweepSpec const &spec);

  struct Row {
    PointParams   params;
    HarvestResult result;
    std::string   status; ///< "ok", else the failing integrals or the error message

    bool ok() const { return status == "ok"; }
  };

  /// Every point of the SweepSpec, evaluated. Local terms are shared between points
  /// with the same detector and background. With Execution::parallel the points
  /// are spread over OpenMP threads and each cubature runs serially; the output
  /// is identical to the serial path.
  std::vector<Row> evaluate_all(SweepSpec const &spec, quadrature::Execution exec);

  /// Light-cone indicator: sign of delta_eta^2 - d^2 (+1 timelike, -1 spacelike).
  int light_cone(PointParams const &p);

  std::string csv_header(bool with_light_cone);
  std::string csv_row(Row const &row, bool with_light_cone);

  /// Writes header and one row; returns the row.
  Row run_point(SweepSpec const &spec, std::ostream &out);
  /// Writes header and one row per grid point (with the lc column); returns the rows.
  std::vector<Row> run_grid(SweepSpec const &spec, std::ostream &out);
  /// Writes header and one row per line point; returns the rows.
  std::vector<Row> run_line(SweepSpec const &spec, std::ostream &out);

  /// Parses "comoving" or "proper" (also "proper_fixed", "properFixed").
  std::optional<SizePolicy> parse_policy(std::string_view name);
  std::string_view          to_string(SizePolicy policy);

} // namespace cosmoharvest::sweep
