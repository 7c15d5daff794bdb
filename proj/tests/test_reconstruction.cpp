#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "serre/grid.hpp"
#include "serre/reconstruction.hpp"

using namespace serre;
using namespace serre::limiter;

TEST_CASE("slope_ratio") {
  CHECK(slope_ratio(0.0, 1.0, 2.0) == Catch::Approx(1.0));
  CHECK(slope_ratio(0.0, 1.0, 0.0) == Catch::Approx(-1.0));
  CHECK(slope_ratio(5.0, 5.0, 5.0) == 1.0);  // regularized constant data
  // tiny denominator, large numerator: sign-consistent large ratio
  CHECK(slope_ratio(1.0, 1.0, 2.0) > 1e6);
  CHECK(slope_ratio(1.0 + 1e-15, 1.0, 2.0) < -1e6);
}

TEST_CASE("Koren limiters") {
  CHECK(koren_minus(-1.0) == 0.0);
  CHECK(koren_minus(1.0) == Catch::Approx(1.0));
  CHECK(koren_minus(0.5) == Catch::Approx(2.0 / 3.0));
  CHECK(koren_minus(100.0) == 2.0);

  CHECK(koren_plus(1.0) == Catch::Approx(1.0));
  CHECK(koren_plus(4.0) == 2.0);
  CHECK(koren_plus(-0.1) == 0.0);
  for (double r : {-2.0, -0.5, 0.0, 0.3, 1.0, 2.5, 10.0}) {
    CHECK(koren_minus(r) >= 0.0);
    CHECK(koren_minus(r) <= 2.0);
    CHECK(koren_plus(r) >= 0.0);
    CHECK(koren_plus(r) <= 2.0);
  }
}

namespace {

CellField field_from(const Grid& g, const std::vector<double>& padded) {
  CellField f = make_cell_field(g, Quantity::depth_h);
  REQUIRE(padded.size() == f.values.size());
  f.values = padded;
  return f;
}

}  // namespace

TEST_CASE("reconstruct: constant and linear data") {
  const Grid g = make_grid(0.0, 6.0, 6);

  SECTION("constant") {
    CellField f = field_from(g, std::vector<double>(10, 4.2));
    const EdgeStates e = reconstruct(f, g);
    for (int i = 0; i <= 6; ++i) {
      CHECK(e.minus[(size_t)i] == Catch::Approx(4.2));
      CHECK(e.plus[(size_t)i] == Catch::Approx(4.2));
    }
  }
  SECTION("linear averages reproduce interface values") {
    CellField f = make_cell_field(g, Quantity::depth_h);
    for (int j = -2; j < 8; ++j) f.at(j) = static_cast<double>(j);
    const EdgeStates e = reconstruct(f, g);
    // between cells valued 1 and 2, both sides give 1.5
    CHECK(e.minus[2] == Catch::Approx(1.5).margin(1e-14));
    CHECK(e.plus[2] == Catch::Approx(1.5).margin(1e-14));
    for (int i = 1; i < 6; ++i) {
      CHECK(e.minus[(size_t)i] == Catch::Approx(i - 0.5).margin(1e-13));
      CHECK(e.plus[(size_t)i] == Catch::Approx(i - 0.5).margin(1e-13));
    }
  }
}

TEST_CASE("reconstruct: step stays within the jump") {
  const Grid g = make_grid(0.0, 6.0, 6);
  CellField f = make_cell_field(g, Quantity::depth_h);
  for (int j = -2; j < 8; ++j) f.at(j) = (j < 3) ? 1.0 : 10.0;
  const EdgeStates e = reconstruct(f, g);
  for (int i = 0; i <= 6; ++i) {
    CHECK(e.minus[(size_t)i] >= 1.0);
    CHECK(e.minus[(size_t)i] <= 10.0);
    CHECK(e.plus[(size_t)i] >= 1.0);
    CHECK(e.plus[(size_t)i] <= 10.0);
  }
  // at the jump the limiter reverts to piecewise constant
  CHECK(e.minus[3] == Catch::Approx(1.0));
  CHECK(e.plus[3] == Catch::Approx(10.0));
}

TEST_CASE("boundedness: random data never leaves the stencil range") {
  const int n = 2000;
  const Grid g = make_grid(0.0, 1.0, n);
  CellField f = make_cell_field(g, Quantity::depth_h);
  std::mt19937 rng(77);
  std::uniform_real_distribution<double> val(0.1, 10.0);
  for (int j = -2; j < n + 2; ++j) f.at(j) = val(rng);
  const EdgeStates e = reconstruct(f, g);
  for (int i = 0; i <= n; ++i) {
    {
      const int j = i - 1;
      const double lo =
          std::min({f.at(j - 1), f.at(j), f.at(j + 1)});
      const double hi =
          std::max({f.at(j - 1), f.at(j), f.at(j + 1)});
      CHECK(e.minus[(size_t)i] >= lo - 1e-12);
      CHECK(e.minus[(size_t)i] <= hi + 1e-12);
    }
    {
      const int j = i;
      const double lo =
          std::min({f.at(j - 1), f.at(j), f.at(j + 1)});
      const double hi =
          std::max({f.at(j - 1), f.at(j), f.at(j + 1)});
      CHECK(e.plus[(size_t)i] >= lo - 1e-12);
      CHECK(e.plus[(size_t)i] <= hi + 1e-12);
    }
  }
}

TEST_CASE("third-order accuracy on smooth monotone stretches") {
  // The limiter clips at extrema, so measure the max interface error away
  // from them; there it should fall as dx^3.
  std::vector<double> dxs, errs;
  for (int n : {40, 80, 160, 320}) {
    const Grid g = make_grid(0.0, 1.0, n);
    CellField f = make_cell_field(g, Quantity::depth_h);
    const double w = 2.0 * M_PI;
    for (int j = -2; j < n + 2; ++j) {
      // exact cell average of sin(w x)
      const double a = g.interface_pos(j), b = g.interface_pos(j + 1);
      f.at(j) = (std::cos(w * a) - std::cos(w * b)) / (w * g.dx);
    }
    const EdgeStates e = reconstruct(f, g);
    double err = 0.0;
    for (int i = 2; i <= n - 2; ++i) {
      if (std::abs(std::cos(w * g.interface_pos(i))) < 0.3) continue;
      const double exact = std::sin(w * g.interface_pos(i));
      err = std::max(err, std::abs(e.minus[(size_t)i] - exact));
    }
    dxs.push_back(g.dx);
    errs.push_back(err);
  }
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (size_t i = 0; i < dxs.size(); ++i) {
    const double lx = std::log(dxs[i]), ly = std::log(errs[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  const double n_pts = static_cast<double>(dxs.size());
  const double slope = (n_pts * sxy - sx * sy) / (n_pts * sxx - sx * sx);
  CHECK(slope >= 2.7);
}

TEST_CASE("mirror symmetry swaps minus and plus") {
  const int n = 12;
  const Grid g = make_grid(0.0, 1.0, n);
  CellField f = make_cell_field(g, Quantity::depth_h);
  std::mt19937 rng(5);
  std::uniform_real_distribution<double> val(1.0, 2.0);
  for (int j = -2; j < n + 2; ++j) f.at(j) = val(rng);

  CellField m = make_cell_field(g, Quantity::depth_h);
  for (int j = -2; j < n + 2; ++j) m.at(j) = f.at(n - 1 - j);

  const EdgeStates ef = reconstruct(f, g);
  const EdgeStates em = reconstruct(m, g);
  for (int i = 0; i <= n; ++i) {
    CHECK(em.minus[(size_t)i] ==
          Catch::Approx(ef.plus[(size_t)(n - i)]).margin(1e-13));
    CHECK(em.plus[(size_t)i] ==
          Catch::Approx(ef.minus[(size_t)(n - i)]).margin(1e-13));
  }
}
