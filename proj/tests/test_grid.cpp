#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "serre/grid.hpp"

using namespace serre;

TEST_CASE("make_grid computes dx once and validates inputs") {
  const Grid g = make_grid(0.0, 1000.0, 10000);
  CHECK(g.dx == Catch::Approx(0.1).margin(1e-15));
  CHECK(g.cell_center(0) == Catch::Approx(0.05));

  const Grid wide = make_grid(-500.0, 1500.0, 20000);
  CHECK(wide.dx == Catch::Approx(0.1).margin(1e-15));

  CHECK_THROWS_AS(make_grid(0.0, 1.0, 1), std::invalid_argument);
  CHECK_THROWS_AS(make_grid(1.0, 1.0, 100), std::invalid_argument);
  CHECK_THROWS_AS(make_grid(2.0, 1.0, 100), std::invalid_argument);
}

TEST_CASE("fill_ghosts imposes the constant far field") {
  const Grid g = make_grid(0.0, 10.0, 10);
  BoundarySpec bc{10.0, 0.0, 1.0, 0.0};

  CellField h = make_cell_field(g, Quantity::depth_h);
  for (int j = 0; j < 10; ++j) h.at(j) = (j < 5) ? 10.0 : 1.0;
  fill_ghosts(h, bc);
  CHECK(h.at(-1) == 10.0);
  CHECK(h.at(-2) == 10.0);
  CHECK(h.at(10) == 1.0);
  CHECK(h.at(11) == 1.0);

  // G ghosts follow u h with zero far-field velocity gradient.
  CellField G = make_cell_field(g, Quantity::momentum_G);
  fill_ghosts(G, bc);
  CHECK(G.at(-1) == 0.0);
  CHECK(G.at(10) == 0.0);

  BoundarySpec moving{0.192, 0.199, 0.22, 0.0};
  fill_ghosts(G, moving);
  CHECK(G.at(-1) == Catch::Approx(0.199 * 0.192));
  CHECK(G.at(11) == 0.0);

  // idempotent
  CellField again = G;
  fill_ghosts(again, moving);
  CHECK(again.values == G.values);
}

TEST_CASE("averages_to_points is exact up to quadratics") {
  const Grid g = make_grid(0.0, 1.0, 10);
  BoundarySpec bc{1.0, 0.0, 1.0, 0.0};

  SECTION("constant") {
    CellField f = make_cell_field(g, Quantity::depth_h);
    for (int j = -2; j < 12; ++j) f.at(j) = 3.5;
    const auto p = averages_to_points(f);
    for (double v : p) CHECK(v == Catch::Approx(3.5).margin(1e-15));
  }
  SECTION("linear") {
    CellField f = make_cell_field(g, Quantity::depth_h);
    for (int j = -2; j < 12; ++j) f.at(j) = g.cell_center(j);
    const auto p = averages_to_points(f);
    for (int j = 0; j < g.n_cells; ++j)
      CHECK(p[(size_t)j] == Catch::Approx(g.cell_center(j)).margin(1e-14));
  }
  SECTION("quadratic: averages x_j^2 + dx^2/12 give back x_j^2") {
    CellField f = make_cell_field(g, Quantity::depth_h);
    for (int j = -2; j < 12; ++j) {
      const double x = g.cell_center(j);
      f.at(j) = x * x + g.dx * g.dx / 12.0;
    }
    const auto p = averages_to_points(f);
    for (int j = 0; j < g.n_cells; ++j) {
      const double x = g.cell_center(j);
      CHECK(p[(size_t)j] == Catch::Approx(x * x).margin(1e-14));
    }
  }
  (void)bc;
}

TEST_CASE("function_to_averages uses degree-5-exact quadrature") {
  SECTION("constant and linear") {
    const Grid g = make_grid(0.0, 0.5, 5);  // dx = 0.1
    auto ones = function_to_averages([](double) { return 1.0; }, g,
                                     Quantity::depth_h);
    CHECK(ones.at(2) == Catch::Approx(1.0).margin(1e-15));
    auto lin =
        function_to_averages([](double x) { return x; }, g, Quantity::depth_h);
    CHECK(lin.at(0) == Catch::Approx(0.05).margin(1e-15));  // cell [0, 0.1]
  }
  SECTION("x^2 over a unit cell") {
    const Grid g = make_grid(0.0, 5.0, 5);  // first cell [0, 1]
    auto sq = function_to_averages([](double x) { return x * x; }, g,
                                   Quantity::depth_h);
    CHECK(sq.at(0) == Catch::Approx(1.0 / 3.0).margin(1e-15));
  }
  SECTION("quintic is still exact (analytic antiderivative oracle)") {
    const Grid g = make_grid(0.0, 2.0, 8);
    auto f = function_to_averages([](double x) { return std::pow(x, 5); }, g,
                                  Quantity::depth_h);
    for (int j = 0; j < g.n_cells; ++j) {
      const double a = g.interface_pos(j), b = g.interface_pos(j + 1);
      const double exact = (std::pow(b, 6) - std::pow(a, 6)) / (6.0 * g.dx);
      CHECK(f.at(j) == Catch::Approx(exact).epsilon(1e-13));
    }
  }
}

TEST_CASE("round trip averages->points reproduces quadratics exactly") {
  std::mt19937 rng(1234);
  std::uniform_real_distribution<double> coef(-3.0, 3.0);
  for (int trial = 0; trial < 20; ++trial) {
    const double a = coef(rng), b = coef(rng), c = coef(rng);
    const double lo = -1.0 + coef(rng);
    const Grid g = make_grid(lo, lo + 4.0 + std::abs(coef(rng)), 17);
    auto poly = [&](double x) { return a * x * x + b * x + c; };
    CellField f = make_cell_field(g, Quantity::depth_h);
    // fill interior and ghosts from exact averages
    for (int j = -2; j < g.n_cells + 2; ++j) {
      const double x = g.cell_center(j);
      f.at(j) = poly(x) + a * g.dx * g.dx / 12.0;
    }
    const auto p = averages_to_points(f);
    for (int j = 0; j < g.n_cells; ++j)
      CHECK(p[(size_t)j] ==
            Catch::Approx(poly(g.cell_center(j))).margin(1e-11));
  }
}

TEST_CASE("points_to_averages inverts averages_to_points") {
  std::mt19937 rng(777);
  std::uniform_real_distribution<double> val(0.5, 5.0);
  const Grid g = make_grid(-2.0, 3.0, 25);
  const double left = val(rng), right = val(rng);

  CellField f = make_cell_field(g, Quantity::depth_h);
  for (int j = 0; j < g.n_cells; ++j) f.at(j) = val(rng);
  for (int k = 1; k <= ghost_width; ++k) {
    f.at(-k) = left;
    f.at(g.n_cells - 1 + k) = right;
  }
  const auto pts = averages_to_points(f);
  const CellField back =
      points_to_averages(pts, g, Quantity::depth_h, left, right);
  for (int j = 0; j < g.n_cells; ++j)
    CHECK(back.at(j) == Catch::Approx(f.at(j)).margin(1e-12));

  SECTION("constant data with matching far field is a fixed point") {
    std::vector<double> flat(static_cast<size_t>(g.n_cells), 2.25);
    const CellField c = points_to_averages(flat, g, Quantity::depth_h,
                                           2.25, 2.25);
    for (int j = 0; j < g.n_cells; ++j)
      CHECK(c.at(j) == Catch::Approx(2.25).margin(1e-13));
  }
  SECTION("size mismatch throws") {
    std::vector<double> bad(3, 1.0);
    CHECK_THROWS_AS(points_to_averages(bad, g, Quantity::depth_h, 1.0, 1.0),
                    std::invalid_argument);
  }
}

TEST_CASE("interior_total is the mass functional") {
  const Grid g = make_grid(0.0, 1.0, 10);
  CellField f = make_cell_field(g, Quantity::depth_h);
  for (int j = 0; j < 10; ++j) f.at(j) = 2.0;
  CHECK(interior_total(f, g) == Catch::Approx(2.0));
}
