#include "cosmoharvest/sweep.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <omp.h>
#include <ostream>
#include <stdexcept>
#include <tuple>

namespace cosmoharvest::sweep {

  namespace {

    constexpr double nan = std::numeric_limits<double>::quiet_NaN();

    double parse_double(std::string_view s) {
      double v     = 0.0;
      auto const r = std::from_chars(s.data(), s.data() + s.size(), v);
      if (r.ec != std::errc{} || r.ptr != s.data() + s.size()) {
        throw std::invalid_argument("not a number: '" + std::string(s) + "'");
      }
      return v;
    }

    void require(bool cond, std::string const &msg) {
      if (!cond) throw std::invalid_argument(msg);
    }

    // Key of a local term: gap, width, policy, H, switching center.
    using LocalKey = std::tuple<double, double, int, double, double>;

    LocalKey key_of(PointParams const &p, double center) {
      return {p.OmegaT, p.sigma_over_T, static_cast<int>(p.policy), p.HT, center};
    }

    HarvestResult failed_result() {
      HarvestResult r;
      r.L_aa = r.L_bb = nan;
      r.M = r.M_plus = r.M_minus = Complex(nan, nan);
      r.N = r.N_plus = r.N_minus = nan;
      return r;
    }

    std::string sanitize(std::string s) {
      std::replace(s.begin(), s.end(), ',', ';');
      std::replace(s.begin(), s.end(), '\n', ' ');
      return s;
    }

    std::string join_failures(std::vector<std::string> const &f) {
      std::string s;
      for (auto const &x : f) s += (s.empty() ? "" : ";") + x;
      return s;
    }

  } // namespace

  std::string_view to_string(Axis axis) {
    switch (axis) {
      case Axis::d_over_T: return "d_over_T";
      case Axis::delta_t_over_T: return "delta_t_over_T";
      case Axis::HT: return "HT";
    }
    return "?";
  }

  std::optional<Axis> parse_axis(std::string_view name) {
    for (Axis a : {Axis::d_over_T, Axis::delta_t_over_T, Axis::HT}) {
      if (name == to_string(a)) return a;
    }
    return std::nullopt;
  }

  std::string_view to_string(Mode mode) {
    switch (mode) {
      case Mode::point: return "point";
      case Mode::grid: return "grid";
      case Mode::line: return "line";
      case Mode::verify: return "verify";
    }
    return "?";
  }

  std::optional<SizePolicy> parse_policy(std::string_view name) {
    if (name == "comoving") return SizePolicy::comoving;
    if (name == "proper" || name == "proper_fixed" || name == "properFixed") return SizePolicy::proper_fixed;
    return std::nullopt;
  }

  std::string_view to_string(SizePolicy policy) {
    return policy == SizePolicy::comoving ? "comoving" : "proper";
  }

  std::vector<double> AxisRange::values() const {
    std::vector<double> v(static_cast<std::size_t>(std::max(steps, 0)));
    for (int i = 0; i < steps; ++i) {
      v[static_cast<std::size_t>(i)] = steps == 1 ? min : min + (max - min) * i / (steps - 1);
    }
    if (steps > 1) v.back() = max;
    return v;
  }

  AxisRange parse_range(Axis axis, std::string_view text) {
    auto const p1 = text.find(':');
    auto const p2 = p1 == std::string_view::npos ? p1 : text.find(':', p1 + 1);
    require(p2 != std::string_view::npos && text.find(':', p2 + 1) == std::string_view::npos,
            "range must be MIN:MAX:STEPS, got '" + std::string(text) + "'");
    AxisRange r;
    r.axis = axis;
    r.min  = parse_double(text.substr(0, p1));
    r.max  = parse_double(text.substr(p1 + 1, p2 - p1 - 1));
    auto const steps = text.substr(p2 + 1);
    auto const res   = std::from_chars(steps.data(), steps.data() + steps.size(), r.steps);
    require(res.ec == std::errc{} && res.ptr == steps.data() + steps.size(), "range STEPS must be an integer");
    return r;
  }

  void SweepSpec::validate() const {
    std::size_t const want = mode == Mode::grid ? 2 : mode == Mode::line ? 1 : 0;
    require(axes.size() == want, std::string(to_string(mode)) + " mode takes " + std::to_string(want) + " axis/axes, got " +
                                     std::to_string(axes.size()));
    if (axes.size() == 2) require(axes[0].axis != axes[1].axis, "grid axes must differ");
    for (auto const &a : axes) {
      require(a.steps >= 1, "range steps must be >= 1");
      require(std::isfinite(a.min) && std::isfinite(a.max), "range bounds must be finite");
      if (a.axis == Axis::d_over_T) require(a.min >= 0.0 && a.max >= 0.0, "d/T must be >= 0");
      if (a.axis == Axis::HT) require(a.min >= 0.0 && a.max >= 0.0, "HT must be >= 0");
    }
    require(std::isfinite(fixed.OmegaT), "OmegaT must be finite");
    require(std::isfinite(fixed.HT) && fixed.HT >= 0.0, "HT must be finite and >= 0");
    require(std::isfinite(fixed.sigma_over_T) && fixed.sigma_over_T > 0.0, "sigma/T must be > 0");
    require(std::isfinite(fixed.d_over_T) && fixed.d_over_T >= 0.0, "d/T must be finite and >= 0");
    require(std::isfinite(fixed.t_b_over_T), "t_b/T must be finite");
    require(threads >= 0, "threads must be >= 0");
    quadrature.validate();
  }

  DetectorPair PointParams::pair() const {
    DetectorPair p;
    for (DetectorParams *d : {&p.a, &p.b}) {
      d->gap    = OmegaT;
      d->width  = 1.0;
      d->sigma  = sigma_over_T;
      d->policy = policy;
    }
    p.b.center   = t_b_over_T;
    p.b.position = {d_over_T, 0.0, 0.0};
    return p;
  }

  CosmologyModel PointParams::model() const {
    return HT > 0.0 ? CosmologyModel::de_sitter(HT) : CosmologyModel::minkowski();
  }

  double PointParams::delta_eta_over_T() const { return conformal_interval(model(), t_b_over_T, 0.0); }

  int light_cone(PointParams const &p) {
    double const de = p.delta_eta_over_T();
    double const x  = de * de - p.d_over_T * p.d_over_T;
    return (x > 0.0) - (x < 0.0);
  }

  std::vector<PointParams> expand(SweepSpec const &spec) {
    PointParams base;
    base.d_over_T     = spec.fixed.d_over_T;
    base.t_b_over_T   = spec.fixed.t_b_over_T;
    base.HT           = spec.fixed.HT;
    base.OmegaT       = spec.fixed.OmegaT;
    base.sigma_over_T = spec.fixed.sigma_over_T;
    base.policy       = spec.policy;

    auto set = [](PointParams &p, Axis axis, double v) {
      switch (axis) {
        case Axis::d_over_T: p.d_over_T = v; break;
        case Axis::delta_t_over_T: p.t_b_over_T = v; break;
        case Axis::HT: p.HT = v; break;
      }
    };

    std::vector<PointParams> out{base};
    for (auto const &axis : spec.axes) {
      std::vector<PointParams> next;
      for (auto const &p : out) {
        for (double v : axis.values()) {
          PointParams q = p;
          set(q, axis.axis, v);
          next.push_back(q);
        }
      }
      out = std::move(next);
    }
    return out;
  }

  std::vector<Row> evaluate_all(SweepSpec const &spec, quadrature::Execution exec) {
    spec.validate();
    auto const points   = expand(spec);
    // A single point keeps the threads inside the cubature; otherwise the
    // point loop owns them.
    bool const parallel = exec == quadrature::Execution::parallel && points.size() > 1;
    int const  nthreads = spec.threads > 0 ? spec.threads : omp_get_max_threads();
    if (spec.threads > 0) omp_set_num_threads(spec.threads);

    QuadratureConfig cfg = spec.quadrature;
    cfg.execution        = parallel ? quadrature::Execution::serial : exec;

    // Local terms depend only on one detector and the background.
    std::map<LocalKey, std::size_t> index;
    std::vector<std::pair<PointParams, double>> locals; // (point, switching center)
    for (auto const &p : points) {
      for (double c : {0.0, p.t_b_over_T}) {
        if (index.emplace(key_of(p, c), locals.size()).second) locals.emplace_back(p, c);
      }
    }

    std::vector<Estimate>    local_values(locals.size());
    std::vector<std::string> local_errors(locals.size());
    auto const               nl = static_cast<std::ptrdiff_t>(locals.size());
#pragma omp parallel for schedule(dynamic) if (parallel) num_threads(nthreads)
    for (std::ptrdiff_t i = 0; i < nl; ++i) {
      auto const &[p, c] = locals[static_cast<std::size_t>(i)];
      try {
        DetectorPair pair = p.pair();
        pair.a.center     = c;
        pair.coupling     = 1.0;
        local_values[static_cast<std::size_t>(i)] = local_term(pair, LocalWhich::A, p.model(), cfg);
      } catch (std::exception const &e) {
        local_errors[static_cast<std::size_t>(i)] = e.what();
      }
    }

    std::vector<Row> rows(points.size());
    auto const       np = static_cast<std::ptrdiff_t>(points.size());
#pragma omp parallel for schedule(dynamic) if (parallel) num_threads(nthreads)
    for (std::ptrdiff_t i = 0; i < np; ++i) {
      auto const &p   = points[static_cast<std::size_t>(i)];
      Row        &row = rows[static_cast<std::size_t>(i)];
      row.params      = p;
      try {
        std::size_t const ia = index.at(key_of(p, 0.0));
        std::size_t const ib = index.at(key_of(p, p.t_b_over_T));
        for (std::size_t k : {ia, ib}) {
          if (!local_errors[k].empty()) throw std::runtime_error(local_errors[k]);
        }
        DetectorPair const   pair  = p.pair();
        CosmologyModel const model = p.model();
        HarvestParts         parts;
        parts.L_aa    = local_values[ia];
        parts.L_bb    = local_values[ib];
        parts.M       = correlation_M(pair, model, cfg);
        parts.M_plus  = correlation_M_plus(pair, model, cfg);
        parts.M_minus = correlation_M_minus(pair, model, cfg);
        row.result    = assemble(parts, pair.coupling);
        row.status    = row.result.ok() ? "ok" : join_failures(row.result.failures);
      } catch (std::exception const &e) {
        row.result = failed_result();
        row.status = sanitize(std::string("error: ") + e.what());
      }
    }
    return rows;
  }

  std::string csv_header(bool with_light_cone) {
    std::string h = "d_over_T,delta_t_over_T,delta_eta_over_T,HT,OmegaT,sigma_over_T,policy,L_aa,L_bb,re_M,im_M,"
                    "re_Mplus,im_Mplus,re_Mminus,im_Mminus,N,N_plus,N_minus,phi,status";
    if (with_light_cone) h += ",lc";
    return h;
  }

  std::string csv_row(Row const &row, bool with_light_cone) {
    auto const   &p = row.params;
    auto const   &r = row.result;
    std::string   s;
    char          buf[64];
    auto num = [&](double v) {
      std::snprintf(buf, sizeof buf, "%.12e,", v);
      s += buf;
    };
    num(p.d_over_T);
    num(p.t_b_over_T);
    num(p.delta_eta_over_T());
    num(p.HT);
    num(p.OmegaT);
    num(p.sigma_over_T);
    s += std::string(to_string(p.policy)) + ",";
    num(r.L_aa);
    num(r.L_bb);
    num(r.M.real());
    num(r.M.imag());
    num(r.M_plus.real());
    num(r.M_plus.imag());
    num(r.M_minus.real());
    num(r.M_minus.imag());
    num(r.N);
    num(r.N_plus);
    num(r.N_minus);
    num(r.phi.value_or(nan));
    s += row.status;
    if (with_light_cone) s += "," + std::to_string(light_cone(p));
    return s;
  }

  namespace {
    std::vector<Row> run_mode(SweepSpec const &spec, Mode mode, std::ostream &out, bool lc) {
      if (spec.mode != mode) throw std::invalid_argument("spec mode is " + std::string(to_string(spec.mode)));
      auto rows = evaluate_all(spec, spec.quadrature.execution);
      out << csv_header(lc) << '\n';
      for (auto const &r : rows) out << csv_row(r, lc) << '\n';
      return rows;
    }
  } // namespace

  Row run_point(SweepSpec const &spec, std::ostream &out) { return run_mode(spec, Mode::point, out, false).front(); }

  std::vector<Row> run_grid(SweepSpec const &spec, std::ostream &out) { return run_mode(spec, Mode::grid, out, true); }

  std::vector<Row> run_line(SweepSpec const &spec, std::ostream &out) { return run_mode(spec, Mode::line, out, false); }

} // namespace cosmoharvest::sweep
