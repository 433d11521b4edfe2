#include "cosmoharvest/sweep.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

using namespace cosmoharvest;
using namespace cosmoharvest::sweep;

namespace {

  std::vector<std::string> split(std::string const &s, char sep) {
    std::vector<std::string> out;
    std::stringstream        ss(s);
    std::string              item;
    while (std::getline(ss, item, sep)) out.push_back(item);
    return out;
  }

  SweepSpec small_grid() {
    SweepSpec spec;
    spec.mode = Mode::grid;
    spec.axes = {parse_range(Axis::d_over_T, "1:3:2"), parse_range(Axis::delta_t_over_T, "-1:2:2")};
    return spec;
  }

} // namespace

TEST_CASE("range parsing") {
  auto const r = parse_range(Axis::HT, "0.1:0.5:5");
  CHECK(r.axis == Axis::HT);
  CHECK(r.steps == 5);
  auto const v = r.values();
  REQUIRE(v.size() == 5);
  CHECK(v.front() == 0.1);
  CHECK(v.back() == 0.5);
  CHECK(v[2] == doctest::Approx(0.3));
  CHECK(parse_range(Axis::HT, "2:9:1").values() == std::vector<double>{2.0});
  CHECK_THROWS_AS(parse_range(Axis::HT, "1:2"), std::invalid_argument);
  CHECK_THROWS_AS(parse_range(Axis::HT, "1:2:3:4"), std::invalid_argument);
  CHECK_THROWS_AS(parse_range(Axis::HT, "a:2:3"), std::invalid_argument);
  CHECK_THROWS_AS(parse_range(Axis::HT, "1:2:3.5"), std::invalid_argument);
}

TEST_CASE("names round-trip") {
  for (Axis a : {Axis::d_over_T, Axis::delta_t_over_T, Axis::HT}) CHECK(parse_axis(to_string(a)) == a);
  CHECK_FALSE(parse_axis("sigma").has_value());
  CHECK(parse_policy("proper") == SizePolicy::proper_fixed);
  CHECK(parse_policy("comoving") == SizePolicy::comoving);
  CHECK_FALSE(parse_policy("fixed").has_value());
}

TEST_CASE("spec validation") {
  SweepSpec spec;
  CHECK_NOTHROW(spec.validate());
  spec.fixed.sigma_over_T = 0.0;
  CHECK_THROWS_AS(spec.validate(), std::invalid_argument);
  spec = small_grid();
  CHECK_NOTHROW(spec.validate());
  spec.axes.pop_back();
  CHECK_THROWS_AS(spec.validate(), std::invalid_argument);
  spec.mode = Mode::line;
  CHECK_NOTHROW(spec.validate());
  spec.axes[0].steps = 0;
  CHECK_THROWS_AS(spec.validate(), std::invalid_argument);
  spec      = small_grid();
  spec.axes = {spec.axes[0], spec.axes[0]};
  CHECK_THROWS_AS(spec.validate(), std::invalid_argument);
  spec      = SweepSpec{};
  spec.axes = {parse_range(Axis::HT, "0:1:2")};
  CHECK_THROWS_AS(spec.validate(), std::invalid_argument);
}

TEST_CASE("grid points are row-major over the axis order") {
  auto const pts = expand(small_grid());
  REQUIRE(pts.size() == 4);
  CHECK(pts[0].d_over_T == 1.0);
  CHECK(pts[0].t_b_over_T == -1.0);
  CHECK(pts[1].d_over_T == 1.0);
  CHECK(pts[1].t_b_over_T == 2.0);
  CHECK(pts[2].d_over_T == 3.0);
  CHECK(pts[2].t_b_over_T == -1.0);
}

TEST_CASE("point parameters") {
  PointParams p;
  p.HT         = 0.0;
  p.t_b_over_T = 3.0;
  p.d_over_T   = 2.0;
  CHECK(p.model().kind == CosmologyModel::Kind::minkowski);
  CHECK(p.delta_eta_over_T() == 3.0);
  CHECK(light_cone(p) == 1);
  p.d_over_T = 4.0;
  CHECK(light_cone(p) == -1);
  p.HT = 0.1;
  CHECK(p.delta_eta_over_T() == doctest::Approx(10 * (1 - std::exp(-0.3))));
  auto const pair = p.pair();
  CHECK(pair.separation() == 4.0);
  CHECK(pair.a.center == 0.0);
  CHECK(pair.b.center == 3.0);
}

TEST_CASE("CSV layout") {
  CHECK(csv_header(false) ==
        "d_over_T,delta_t_over_T,delta_eta_over_T,HT,OmegaT,sigma_over_T,policy,L_aa,L_bb,re_M,im_M,re_Mplus,im_Mplus,"
        "re_Mminus,im_Mminus,N,N_plus,N_minus,phi,status");
  CHECK(csv_header(true) == csv_header(false) + ",lc");

  std::ostringstream out;
  auto const         rows = run_grid(small_grid(), out);
  auto const         lines = split(out.str(), '\n');
  REQUIRE(lines.size() == 5);
  CHECK(lines[0] == csv_header(true));
  for (std::size_t i = 1; i < lines.size(); ++i) {
    auto const cells = split(lines[i], ',');
    CHECK(cells.size() == 21);
    CHECK(cells[19] == "ok");
    CHECK(cells[0].find('e') != std::string::npos);
  }
  CHECK(rows.size() == 4);
}

TEST_CASE("output is identical across execution modes and thread counts") {
  SweepSpec spec = small_grid();
  spec.axes[1]   = parse_range(Axis::delta_t_over_T, "-2:2:3");

  std::ostringstream serial;
  spec.quadrature.execution = quadrature::Execution::serial;
  run_grid(spec, serial);

  spec.quadrature.execution = quadrature::Execution::parallel;
  for (int threads : {1, 2, 3}) {
    spec.threads = threads;
    std::ostringstream par;
    run_grid(spec, par);
    CAPTURE(threads);
    CHECK(par.str() == serial.str());
  }
}

TEST_CASE("shared local terms equal direct evaluation") {
  SweepSpec spec;
  spec.mode  = Mode::line;
  spec.axes  = {parse_range(Axis::delta_t_over_T, "-1:1:3")};
  auto const rows = evaluate_all(spec, quadrature::Execution::serial);
  for (auto const &row : rows) {
    auto const direct = evaluate(row.params.pair(), row.params.model(), spec.quadrature);
    CHECK(row.result.L_aa == direct.L_aa);
    CHECK(row.result.L_bb == direct.L_bb);
    CHECK(row.result.M == direct.M);
    CHECK(row.result.N_minus == direct.N_minus);
  }
}

TEST_CASE("default point matches the stored golden row") {
  std::ifstream golden(COSMOHARVEST_GOLDEN_DIR "/point_default.csv");
  REQUIRE(golden.good());
  std::string header, row;
  std::getline(golden, header);
  std::getline(golden, row);

  std::ostringstream out;
  SweepSpec          spec;
  auto const         r = run_point(spec, out);
  CHECK(r.ok());
  auto const lines = split(out.str(), '\n');
  REQUIRE(lines.size() == 2);
  CHECK(lines[0] == header);

  auto const want = split(row, ',');
  auto const got  = split(lines[1], ',');
  REQUIRE(want.size() == got.size());
  for (std::size_t i = 0; i < want.size(); ++i) {
    CAPTURE(i);
    if (i == 6 || i == 19) {
      CHECK(got[i] == want[i]);
      continue;
    }
    double const w = std::stod(want[i]), g = std::stod(got[i]);
    CHECK(std::abs(g - w) <= 1e-9 * std::abs(w) + 1e-25);
  }
}

TEST_CASE("all-spacelike flat-space grid has no communication part in N") {
  SweepSpec spec;
  spec.mode     = Mode::grid;
  spec.fixed.HT = 0.0;
  spec.axes     = {parse_range(Axis::d_over_T, "10:12:2"), parse_range(Axis::delta_t_over_T, "-1:1:3")};
  for (auto const &row : evaluate_all(spec, quadrature::Execution::parallel)) {
    CAPTURE(row.params.d_over_T);
    CAPTURE(row.params.t_b_over_T);
    CHECK(row.ok());
    CHECK(light_cone(row.params) == -1);
    CHECK(std::abs(row.result.N - row.result.N_plus) <= 1e-8 * std::abs(row.result.N_plus));
  }
}

TEST_CASE("failed points are recorded and the sweep continues") {
  SweepSpec spec = small_grid();
  spec.quadrature.max_cells = 10;
  auto const rows           = evaluate_all(spec, quadrature::Execution::serial);
  REQUIRE(rows.size() == 4);
  for (auto const &row : rows) {
    CHECK_FALSE(row.ok());
    CHECK(row.status.find("budget_exhausted") != std::string::npos);
    CHECK(row.status.find(',') == std::string::npos);
  }
}

TEST_CASE("delay line at HT = 0.4: harvesting and communication cancel") {
  SweepSpec spec;
  spec.mode  = Mode::line;
  spec.fixed = {6.0, 0.4, 0.1, 2.0, 0.0};
  spec.axes  = {parse_range(Axis::delta_t_over_T, "-6:6:61")};
  double max_n = 0.0, max_m = 0.0, max_minus = 0.0;
  for (auto const &row : evaluate_all(spec, quadrature::Execution::parallel)) {
    REQUIRE(row.ok());
    max_n     = std::max(max_n, row.result.N);
    max_minus = std::max(max_minus, std::abs(row.result.M_minus));
    max_m     = std::max({max_m, std::abs(row.result.M_plus), max_minus});
  }
  CHECK(max_minus > 0.0);
  CHECK(max_n < 0.01 * max_m);
}

TEST_CASE("wide separation around zero delay is pure harvesting") {
  SweepSpec spec;
  spec.mode  = Mode::line;
  spec.fixed = {6.0, 0.1, 0.1, 4.0, 0.0};
  spec.axes  = {parse_range(Axis::delta_t_over_T, "-0.5:0.5:3")};
  for (auto const &row : evaluate_all(spec, quadrature::Execution::parallel)) {
    REQUIRE(row.ok());
    CHECK(std::abs(row.result.M_minus) < 0.05 * std::abs(row.result.M_plus));
  }
}
