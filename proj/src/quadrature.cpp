#include "cosmoharvest/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace cosmoharvest::quadrature {

  namespace {

    // 15-point Kronrod rule with its embedded 7-point Gauss rule on [-1, 1].
    constexpr int rule_size = 15;

    constexpr std::array<double, 8> xgk = {
       0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
       0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
       0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
       0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
    constexpr std::array<double, 8> wgk = {
       0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
       0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
       0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
       0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
    constexpr std::array<double, 4> wg7 = {
       0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
       0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

    struct Rule {
      std::array<double, rule_size> x{};
      std::array<double, rule_size> wk{};
      std::array<double, rule_size> wg{};

      constexpr Rule() {
        for (int i = 0; i < 8; ++i) {
          x[i]                 = -xgk[i];
          x[rule_size - 1 - i] = xgk[i];
          wk[i]                 = wgk[i];
          wk[rule_size - 1 - i] = wgk[i];
          double const g        = (i % 2 == 1) ? wg7[i / 2] : 0.0;
          wg[i]                 = g;
          wg[rule_size - 1 - i] = g;
        }
      }
    };

    constexpr Rule rule{};

    constexpr std::size_t max_batch = 64;

    // A piece is a parameter rectangle [x0,x1] x [y0,y1] mapped onto a part of
    // the (t, t') plane. The map always yields u >= v for triangle pieces;
    // swapped pieces evaluate f(v, u) to cover the upper half of a square.
    struct Piece {
      enum class Map { rect, triangle };
      Map                 map     = Map::rect;
      bool                swapped = false;
      double              x0 = 0, x1 = 0, y0 = 0, y1 = 0;
      double              c0 = 0, len = 0; // triangle c0 <= v <= u <= c0 + len
      std::vector<double> x_breaks, y_breaks;
    };

    struct Cell {
      int         piece = 0;
      double      x0 = 0, x1 = 0, y0 = 0, y1 = 0;
      int         depth_x = 0, depth_y = 0;
      std::size_t id = 0;

      Complex value{};
      double  err_x = 0, err_y = 0, err = 0, floor = 0;
    };

    Complex eval_point(Integrand2D const &f, Piece const &p, double x, double y) {
      double u, v, jac;
      if (p.map == Piece::Map::rect) {
        u   = x;
        v   = y;
        jac = 1.0;
      } else {
        // x = s in [0, len], y = w in [0, 1]
        u   = p.c0 + x + y * (p.len - x);
        v   = u - x;
        jac = p.len - x;
      }
      return (p.swapped ? f.f(v, u) : f.f(u, v)) * jac;
    }

    double quadpack_scale(double e, double resasc) {
      if (resasc > 0.0 && e > 0.0) return resasc * std::min(1.0, std::pow(200.0 * e / resasc, 1.5));
      return e;
    }

    void evaluate_cell(Integrand2D const &f, std::vector<Piece> const &pieces, Cell &c) {
      Piece const &p  = pieces[c.piece];
      double const hx = 0.5 * (c.x1 - c.x0), cx = 0.5 * (c.x1 + c.x0);
      double const hy = 0.5 * (c.y1 - c.y0), cy = 0.5 * (c.y1 + c.y0);

      std::array<std::array<Complex, rule_size>, rule_size> F;
      for (int i = 0; i < rule_size; ++i) {
        double const x = cx + hx * rule.x[i];
        for (int j = 0; j < rule_size; ++j) F[i][j] = eval_point(f, p, x, cy + hy * rule.x[j]);
      }

      Complex kk{}, gk{}, kg{};
      double  resabs = 0.0;
      for (int i = 0; i < rule_size; ++i) {
        Complex rowk{}, rowg{};
        double  rowabs = 0.0;
        for (int j = 0; j < rule_size; ++j) {
          rowk += rule.wk[j] * F[i][j];
          rowg += rule.wg[j] * F[i][j];
          rowabs += rule.wk[j] * std::abs(F[i][j]);
        }
        kk += rule.wk[i] * rowk;
        gk += rule.wg[i] * rowk;
        kg += rule.wk[i] * rowg;
        resabs += rule.wk[i] * rowabs;
      }
      Complex const mean   = kk / 4.0;
      double        resasc = 0.0;
      for (int i = 0; i < rule_size; ++i) {
        double row = 0.0;
        for (int j = 0; j < rule_size; ++j) row += rule.wk[j] * std::abs(F[i][j] - mean);
        resasc += rule.wk[i] * row;
      }

      double const area = hx * hy;
      resasc *= area;
      c.value = kk * area;
      c.err_x = quadpack_scale(std::abs(kk - gk) * area, resasc);
      c.err_y = quadpack_scale(std::abs(kk - kg) * area, resasc);
      c.floor = 50.0 * std::numeric_limits<double>::epsilon() * resabs * area;
      c.err   = std::max(c.err_x + c.err_y, c.floor);
    }

    void evaluate_all(Integrand2D const &f, std::vector<Piece> const &pieces, std::vector<Cell> &cells,
                      Execution exec) {
      auto const n = static_cast<std::ptrdiff_t>(cells.size());
#pragma omp parallel for schedule(dynamic, 1) if (exec == Execution::parallel && n > 1)
      for (std::ptrdiff_t k = 0; k < n; ++k) evaluate_cell(f, pieces, cells[k]);
    }

    std::vector<double> uniform_breaks(double a, double b, double max_edge) {
      int const n = std::max(1, static_cast<int>(std::ceil((b - a) / max_edge - 1e-12)));
      std::vector<double> out(n + 1);
      for (int i = 0; i <= n; ++i) out[i] = a + (b - a) * i / n;
      out.back() = b;
      return out;
    }

    void add_breaks(std::vector<double> &breaks, std::vector<double> const &extra) {
      double const a = breaks.front(), b = breaks.back();
      double const eps = 1e-9 * (b - a);
      for (double s : extra) {
        if (s > a + eps && s < b - eps) breaks.push_back(s);
      }
      std::sort(breaks.begin(), breaks.end());
      breaks.erase(std::unique(breaks.begin(), breaks.end(),
                               [eps](double p, double q) { return std::abs(p - q) <= eps; }),
                   breaks.end());
    }

    struct Interval {
      double lo, hi;
    };

    // Ordered region {u in U, v in V, v <= u} as rectangles plus one triangle.
    void ordered_pieces(Interval U, Interval V, bool swapped, std::vector<double> const &s_breaks,
                        double max_edge, std::vector<Piece> &out) {
      if (U.hi <= V.lo) return;
      auto rect = [&](double u0, double u1, double v0, double v1) {
        if (!(u1 > u0) || !(v1 > v0)) return;
        Piece p;
        p.map      = Piece::Map::rect;
        p.swapped  = swapped;
        p.x0       = u0;
        p.x1       = u1;
        p.y0       = v0;
        p.y1       = v1;
        p.x_breaks = uniform_breaks(u0, u1, max_edge);
        p.y_breaks = uniform_breaks(v0, v1, max_edge);
        out.push_back(std::move(p));
      };
      if (U.lo >= V.hi) {
        rect(U.lo, U.hi, V.lo, V.hi);
        return;
      }
      double const c0 = std::max(U.lo, V.lo);
      double const c1 = std::min(U.hi, V.hi);
      if (U.hi > V.hi) rect(V.hi, U.hi, V.lo, V.hi);
      if (U.lo > V.lo) rect(c0, c1, V.lo, c0);

      Piece t;
      t.map      = Piece::Map::triangle;
      t.swapped  = swapped;
      t.c0       = c0;
      t.len      = c1 - c0;
      t.x0       = 0.0;
      t.x1       = t.len;
      t.y0       = 0.0;
      t.y1       = 1.0;
      t.x_breaks = uniform_breaks(0.0, t.len, max_edge);
      add_breaks(t.x_breaks, s_breaks);
      int const nw = std::max(1, static_cast<int>(std::ceil(t.len / max_edge - 1e-12)));
      t.y_breaks   = uniform_breaks(0.0, 1.0, 1.0 / nw);
      out.push_back(std::move(t));
    }

    double initial_edge(Integrand2D const &f, QuadratureConfig const &cfg) {
      double edge = cfg.initial_panel * std::min(f.t_window.width, f.t2_window.width);
      if (f.frequency > 0.0) {
        // 15 nodes per cell and at least 10 per period
        edge = std::min(edge, 1.5 * 2.0 * std::numbers::pi / f.frequency);
      }
      return edge;
    }

    class NeumaierSum {
    public:
      void add(Complex x) {
        re_.add(x.real());
        im_.add(x.imag());
      }
      Complex value() const { return {re_.value(), im_.value()}; }

    private:
      struct Real {
        double sum = 0.0, comp = 0.0;
        void   add(double x) {
          double const t = sum + x;
          comp += (std::abs(sum) >= std::abs(x)) ? (sum - t) + x : (x - t) + sum;
          sum = t;
        }
        double value() const { return sum + comp; }
      };
      Real re_, im_;
    };

    Result integrate_pieces(Integrand2D const &f, std::vector<Piece> const &pieces, QuadratureConfig const &cfg) {
      Result res;
      std::vector<Cell> cells;
      std::size_t       next_id = 0;
      for (int k = 0; k < static_cast<int>(pieces.size()); ++k) {
        Piece const &p = pieces[k];
        for (std::size_t i = 0; i + 1 < p.x_breaks.size(); ++i) {
          for (std::size_t j = 0; j + 1 < p.y_breaks.size(); ++j) {
            Cell c;
            c.piece = k;
            c.x0    = p.x_breaks[i];
            c.x1    = p.x_breaks[i + 1];
            c.y0    = p.y_breaks[j];
            c.y1    = p.y_breaks[j + 1];
            c.id    = next_id++;
            cells.push_back(c);
          }
        }
      }
      if (cells.empty()) return res;
      evaluate_all(f, pieces, cells, cfg.execution);
      std::size_t evaluated = cells.size();

      std::vector<std::size_t> order;
      std::vector<Cell>        children;
      while (true) {
        NeumaierSum total;
        double      err = 0.0;
        for (auto const &c : cells) {
          total.add(c.value);
          err += c.err;
        }
        res.value = total.value();
        res.error = err;
        double const tol = std::max(cfg.abs_tol, cfg.rel_tol * std::abs(res.value));
        if (err <= tol) {
          res.status = Status::converged;
          break;
        }

        order.clear();
        bool depth_blocked = false;
        for (std::size_t k = 0; k < cells.size(); ++k) {
          Cell const &c = cells[k];
          if (c.err_x + c.err_y <= c.floor) continue;
          if (c.depth_x >= cfg.max_subdivisions && c.depth_y >= cfg.max_subdivisions) {
            depth_blocked = true;
            continue;
          }
          order.push_back(k);
        }
        if (order.empty()) {
          res.status = depth_blocked ? Status::depth_limited : Status::roundoff_limited;
          break;
        }
        std::sort(order.begin(), order.end(), [&](std::size_t p, std::size_t q) {
          if (cells[p].err != cells[q].err) return cells[p].err > cells[q].err;
          return cells[p].id < cells[q].id;
        });
        double const excess = err - tol;
        double       taken  = 0.0;
        std::size_t  n      = 0;
        while (n < order.size() && n < max_batch && taken < excess) taken += cells[order[n++]].err;

        if (cells.size() + n > cfg.max_cells) {
          res.status = Status::budget_exhausted;
          break;
        }

        children.clear();
        for (std::size_t k = 0; k < n; ++k) {
          Cell const &c       = cells[order[k]];
          bool        split_x = c.err_x >= c.err_y;
          if (split_x && c.depth_x >= cfg.max_subdivisions) split_x = false;
          if (!split_x && c.depth_y >= cfg.max_subdivisions) split_x = true;
          Cell lo = c, hi = c;
          if (split_x) {
            double const m = 0.5 * (c.x0 + c.x1);
            lo.x1          = m;
            hi.x0          = m;
            ++lo.depth_x;
            ++hi.depth_x;
          } else {
            double const m = 0.5 * (c.y0 + c.y1);
            lo.y1          = m;
            hi.y0          = m;
            ++lo.depth_y;
            ++hi.depth_y;
          }
          lo.id = next_id++;
          hi.id = next_id++;
          children.push_back(lo);
          children.push_back(hi);
        }
        evaluate_all(f, pieces, children, cfg.execution);
        evaluated += children.size();
        for (std::size_t k = 0; k < n; ++k) {
          cells[order[k]] = children[2 * k];
          cells.push_back(children[2 * k + 1]);
        }
      }
      res.cells       = cells.size();
      res.evaluations = evaluated * rule_size * rule_size;
      return res;
    }

    Interval interval(Window const &w, double width) { return {w.lo(width), w.hi(width)}; }

    void check_integrand(Integrand2D const &f) {
      if (!f.f) throw std::invalid_argument("integrand has no callable");
      for (Window const *w : {&f.t_window, &f.t2_window}) {
        if (!(w->width > 0.0) || !(w->last_center >= w->first_center)) {
          throw std::invalid_argument("integration window needs width > 0 and ordered centers");
        }
      }
    }

  } // namespace

  void QuadratureConfig::validate() const {
    if (!(rel_tol > 0.0)) throw std::invalid_argument("rel_tol must be > 0");
    if (!(abs_tol >= 0.0)) throw std::invalid_argument("abs_tol must be >= 0");
    if (!(truncation_width >= 4.0)) throw std::invalid_argument("truncation width must be >= 4");
    if (max_subdivisions < 0) throw std::invalid_argument("max_subdivisions must be >= 0");
    if (!(initial_panel > 0.0)) throw std::invalid_argument("initial_panel must be > 0");
    if (max_cells == 0) throw std::invalid_argument("max_cells must be > 0");
  }

  Window Window::hull(double c1, double c2, double width) {
    return {std::min(c1, c2), std::max(c1, c2), width};
  }

  std::string_view to_string(Status s) {
    switch (s) {
      case Status::converged: return "converged";
      case Status::roundoff_limited: return "roundoff_limited";
      case Status::depth_limited: return "depth_limited";
      case Status::budget_exhausted: return "budget_exhausted";
    }
    return "unknown";
  }

  Result integrate_square(Integrand2D const &f, QuadratureConfig const &cfg) {
    cfg.validate();
    check_integrand(f);
    double const       w    = cfg.truncation_width;
    double const       edge = initial_edge(f, cfg);
    std::vector<Piece> pieces;
    Interval const     T = interval(f.t_window, w), P = interval(f.t2_window, w);
    ordered_pieces(T, P, false, f.s_breaks, edge, pieces);
    ordered_pieces(P, T, true, f.s_breaks, edge, pieces);
    return integrate_pieces(f, pieces, cfg);
  }

  Result integrate_ordered(Integrand2D const &f, QuadratureConfig const &cfg) {
    cfg.validate();
    check_integrand(f);
    double const       w    = cfg.truncation_width;
    std::vector<Piece> pieces;
    ordered_pieces(interval(f.t_window, w), interval(f.t2_window, w), false, f.s_breaks, initial_edge(f, cfg),
                   pieces);
    return integrate_pieces(f, pieces, cfg);
  }

} // namespace cosmoharvest::quadrature
