// Command-line front end: point, grid, line and verify runs.
#include "cosmoharvest/sweep.hpp"
#include "cosmoharvest/verify.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <stdexcept>
#include <string>
#include <vector>

namespace {

  using namespace cosmoharvest;
  using sweep::Axis;
  using sweep::Mode;

  constexpr int exit_ok      = 0;
  constexpr int exit_failure = 1;
  constexpr int exit_usage   = 2;

  struct Options {
    double                   omega_t = 6.0, hubble_t = 0.1, sigma_t = 0.1, d_t = 2.0, tb_t = 0.0;
    std::string              policy  = "comoving";
    std::vector<std::string> axes;
    std::vector<std::string> ranges;
    double                   rel_tol     = 1e-9;
    double                   abs_tol     = 1e-14;
    double                   trunc_width = 6.0;
    int                      max_subdiv  = 20;
    std::size_t              max_cells   = 200000;
    int                      threads     = 0;
    std::string              output;
    bool                     inject_fault = false;
  };

  sweep::SweepSpec build_spec(Mode mode, Options const &o) {
    sweep::SweepSpec spec;
    spec.mode                        = mode;
    spec.fixed                       = {o.omega_t, o.hubble_t, o.sigma_t, o.d_t, o.tb_t};
    spec.quadrature.rel_tol          = o.rel_tol;
    spec.quadrature.abs_tol          = o.abs_tol;
    spec.quadrature.truncation_width = o.trunc_width;
    spec.quadrature.max_subdivisions = o.max_subdiv;
    spec.quadrature.max_cells        = o.max_cells;
    spec.output                      = o.output;
    spec.threads                     = o.threads;

    auto const policy = sweep::parse_policy(o.policy);
    if (!policy) throw std::invalid_argument("--policy must be comoving or proper");
    spec.policy = *policy;

    // defaults: the d-by-delay map for grid, the delay line for line
    std::vector<std::string> axes   = o.axes;
    std::vector<std::string> ranges = o.ranges;
    if (mode == Mode::grid && axes.empty()) axes = {"d_over_T", "delta_t_over_T"};
    if (mode == Mode::line && axes.empty()) axes = {"delta_t_over_T"};
    if (mode == Mode::point || mode == Mode::verify) {
      if (!axes.empty() || !ranges.empty()) throw std::invalid_argument("--axis/--range apply to grid and line only");
      axes.clear();
    }
    if (ranges.empty()) {
      for (auto const &a : axes) ranges.push_back(a == "d_over_T" ? "0.5:6:25" : a == "HT" ? "0.1:0.5:5" : mode == Mode::grid ? "-6:6:25" : "-6:6:61");
    }
    if (ranges.size() != axes.size()) throw std::invalid_argument("give one --range per --axis");

    for (std::size_t i = 0; i < axes.size(); ++i) {
      auto const axis = sweep::parse_axis(axes[i]);
      if (!axis) throw std::invalid_argument("unknown axis '" + axes[i] + "' (d_over_T, delta_t_over_T, HT)");
      spec.axes.push_back(sweep::parse_range(*axis, ranges[i]));
    }
    spec.validate();
    return spec;
  }

  int run_sweep(sweep::SweepSpec const &spec) {
    std::ofstream file;
    if (!spec.output.empty()) {
      file.open(spec.output);
      if (!file) {
        std::cerr << "cannot open " << spec.output << " for writing\n";
        return exit_usage;
      }
    }
    std::ostream &out = spec.output.empty() ? std::cout : file;

    std::vector<sweep::Row> rows;
    switch (spec.mode) {
      case Mode::point: rows = {sweep::run_point(spec, out)}; break;
      case Mode::grid: rows = sweep::run_grid(spec, out); break;
      case Mode::line: rows = sweep::run_line(spec, out); break;
      case Mode::verify: break;
    }
    out.flush();
    std::size_t failed = 0;
    for (auto const &r : rows) failed += !r.ok();
    if (failed) {
      std::cerr << failed << " of " << rows.size() << " points did not converge; see the status column\n";
      return exit_failure;
    }
    return exit_ok;
  }

  int run_verify(sweep::SweepSpec const &spec, bool inject_fault) {
    verify::VerifyOptions opts;
    opts.quadrature     = spec.quadrature;
    opts.corrupt_dawson = inject_fault;
    auto const results  = verify::run_all(opts);

    std::ofstream file;
    if (!spec.output.empty()) file.open(spec.output);
    verify::print_report(spec.output.empty() ? std::cout : file, results);
    for (auto const &r : results) {
      if (!r.passed) return exit_failure;
    }
    return exit_ok;
  }

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"Entanglement harvesting between two detectors in de Sitter spacetime"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_config("--config", "", "Read options from a TOML/INI file; command-line flags take precedence");

  Options o;
  app.add_option("--omega-t", o.omega_t, "Energy gap Omega T")->capture_default_str();
  app.add_option("--hubble-t", o.hubble_t, "Hubble rate H T (0 selects flat space)")->capture_default_str();
  app.add_option("--sigma-t", o.sigma_t, "Smearing width sigma / T")->capture_default_str();
  app.add_option("--d-t", o.d_t, "Comoving separation d / T")->capture_default_str();
  app.add_option("--tb-t", o.tb_t, "Switching center of detector B, t_b / T")->capture_default_str();
  app.add_option("--policy", o.policy, "Sizing policy")
      ->check(CLI::IsMember({"comoving", "proper"}))
      ->capture_default_str();
  app.add_option("--axis", o.axes, "Swept parameter: d_over_T, delta_t_over_T or HT (repeat for grid)");
  app.add_option("--range", o.ranges, "MIN:MAX:STEPS for the matching --axis");
  app.add_option("--rel-tol", o.rel_tol, "Relative quadrature tolerance")->capture_default_str();
  app.add_option("--abs-tol", o.abs_tol, "Absolute quadrature tolerance")->capture_default_str();
  app.add_option("--trunc-width", o.trunc_width, "Integration window half-width in switching widths")
      ->capture_default_str();
  app.add_option("--max-subdivisions", o.max_subdiv, "Refinement depth limit per axis")->capture_default_str();
  app.add_option("--max-cells", o.max_cells, "Cell budget per integral")->capture_default_str();
  app.add_option("--threads", o.threads, "Worker threads (0: OpenMP default)")->capture_default_str();
  app.add_option("--output", o.output, "Output file (default: standard output)");
  app.add_flag("--inject-fault", o.inject_fault, "Corrupt the Dawson function in the kernel check")->group("");

  auto *point  = app.add_subcommand("point", "Evaluate one parameter point");
  auto *grid   = app.add_subcommand("grid", "Two-axis sweep, CSV with light-cone column");
  auto *line   = app.add_subcommand("line", "One-axis sweep, CSV");
  auto *verify = app.add_subcommand("verify", "Run the invariant suite");

  try {
    app.parse(argc, argv);
  } catch (CLI::CallForHelp const &e) {
    return app.exit(e);
  } catch (CLI::CallForAllHelp const &e) {
    return app.exit(e);
  } catch (CLI::ParseError const &e) {
    app.exit(e);
    return exit_usage;
  }

  Mode mode = Mode::point;
  if (grid->parsed()) mode = Mode::grid;
  if (line->parsed()) mode = Mode::line;
  if (verify->parsed()) mode = Mode::verify;
  (void)point;

  sweep::SweepSpec spec;
  try {
    spec = build_spec(mode, o);
  } catch (std::invalid_argument const &e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return exit_usage;
  }

  try {
    return mode == Mode::verify ? run_verify(spec, o.inject_fault) : run_sweep(spec);
  } catch (std::exception const &e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_failure;
  }
}
