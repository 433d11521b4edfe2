#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <string_view>
#include <vector>

namespace cosmoharvest::quadrature {

  using Complex = std::complex<double>;

  enum class Execution { serial, parallel };

  struct QuadratureConfig {
    double      rel_tol          = 1e-9;
    double      abs_tol          = 1e-14;
    double      truncation_width = 6.0; ///< W, in units of the switching width
    int         max_subdivisions = 20;  ///< bisection depth limit per axis and cell
    double      initial_panel    = 1.0; ///< largest initial cell edge, in switching widths
    std::size_t max_cells        = 200000;
    Execution   execution        = Execution::parallel;

    /// Throws std::invalid_argument unless rel_tol > 0, abs_tol >= 0 and W >= 4.
    void validate() const;
  };

  /// Integration window of one axis: [first_center - W width, last_center + W width].
  struct Window {
    double first_center = 0.0;
    double last_center  = 0.0;
    double width        = 1.0;

    static Window around(double center, double width) { return {center, center, width}; }
    static Window hull(double c1, double c2, double width);

    double lo(double w) const { return first_center - w * width; }
    double hi(double w) const { return last_center + w * width; }
  };

  using Function2D = std::function<Complex(double t, double t2)>;

  struct Integrand2D {
    Function2D f;
    Window     t_window;
    Window     t2_window;
    /// Bound on the angular frequency of the integrand along t and t'. Initial
    /// cells are sized to give at least ten nodes per period.
    double frequency = 0.0;
    /// Mandatory splits of s = t - t' (for instance at the kernel width).
    std::vector<double> s_breaks;
  };

  enum class Status {
    converged,        ///< estimated error within tolerance
    roundoff_limited, ///< only round-off floors remain above tolerance
    depth_limited,    ///< cells hit max_subdivisions with error left
    budget_exhausted, ///< max_cells reached
  };

  std::string_view to_string(Status s);

  struct Result {
    Complex     value{};
    double      error       = 0.0;
    Status      status      = Status::converged;
    std::size_t cells       = 0;
    std::size_t evaluations = 0;

    bool ok() const { return status == Status::converged || status == Status::roundoff_limited; }
  };

  /// Integral over the full window rectangle t in t_window, t' in t2_window.
  Result integrate_square(Integrand2D const &f, QuadratureConfig const &cfg);

  /// Integral over the time-ordered part t' <= t of the window rectangle.
  ///
  /// The triangle adjoining the diagonal is mapped with t' = t - s so that no
  /// rule panel straddles the ordering boundary.
  Result integrate_ordered(Integrand2D const &f, QuadratureConfig const &cfg);

} // namespace cosmoharvest::quadrature
