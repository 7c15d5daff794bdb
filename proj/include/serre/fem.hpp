#pragma once

#include <array>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "serre/flux.hpp"
#include "serre/grid.hpp"
#include "serre/reconstruction.hpp"

namespace serre {

/// Per-element data for the elliptic solve. Edge values are the element's
/// own one-sided reconstructions (h and G may be discontinuous across
/// interfaces), the mid values are cell-center point values.
struct ElementCoefficients {
  double h_left = 0.0;   // h^+_{j-1/2}
  double h_mid = 0.0;    // h_j
  double h_right = 0.0;  // h^-_{j+1/2}
  double G_left = 0.0;
  double G_mid = 0.0;
  double G_right = 0.0;
  double dx = 0.0;
};

using Matrix3 = std::array<std::array<double, 3>, 3>;
using Vector3 = std::array<double, 3>;

/// Stiffness matrix Q_e of int (h^3/3) u' v' over the element, quadratic
/// basis, with h itself quadratic through (h_left, h_mid, h_right). The
/// cubic-in-h coefficients are tabulated data; the constant-h oracle
/// h0^3/(9 dx) [[7,-8,1],[-8,16,-8],[1,-8,7]] pins the transcription.
inline Matrix3 element_stiffness(const ElementCoefficients& c) {
  const double a = c.h_left, b = c.h_mid, d = c.h_right;
  const double a2 = a * a, b2 = b * b, d2 = d * d;
  const double a3 = a2 * a, b3 = b2 * b, d3 = d2 * d;
  const double s = 1.0 / (3780.0 * c.dx);

  const double q11 = 912 * a * b2 + 948 * a2 * b + 61 * d3 + 21 * a * d2 -
                     195 * a2 * d - 240 * b2 * d - 336 * a * b * d + 832 * b3 +
                     853 * a3 + 84 * b * d2;
  const double q12 = -240 * b * d2 - 284 * d3 - 1104 * a2 * b +
                     384 * a * b * d - 1076 * a3 - 512 * b3 - 960 * a * b2 +
                     228 * a2 * d + 12 * a * d2 + 192 * b2 * d;
  const double q13 = 156 * a2 * b - 33 * a2 * d - 33 * a * d2 + 156 * b * d2 +
                     48 * b2 * d - 48 * a * b * d + 223 * d3 - 320 * b3 +
                     223 * a3 + 48 * a * b2;
  const double q22 = 1344 * a2 * b - 240 * a2 * d + 768 * a * b2 -
                     240 * a * d2 + 768 * b2 * d + 1344 * b * d2 + 1360 * a3 +
                     1024 * b3 + 1360 * d3 - 768 * a * b * d;
  const double q23 = 12 * a2 * d - 240 * a2 * b - 1104 * b * d2 +
                     192 * a * b2 - 960 * b2 * d - 512 * b3 - 1076 * d3 +
                     228 * a * d2 - 284 * a3 + 384 * a * b * d;
  const double q33 = -336 * a * b * d - 195 * a * d2 + 912 * b2 * d +
                     948 * b * d2 + 832 * b3 + 853 * d3 + 61 * a3 +
                     84 * a2 * b + 21 * a2 * d - 240 * a * b2;

  return Matrix3{{{s * q11, s * q12, s * q13},
                  {s * q12, s * q22, s * q23},
                  {s * q13, s * q23, s * q33}}};
}

/// Mass-like matrix P_e of int u h v over the element.
inline Matrix3 element_mass(const ElementCoefficients& c) {
  const double a = c.h_left, b = c.h_mid, d = c.h_right;
  const double s = c.dx / 420.0;
  const double p11 = 39 * a + 20 * b - 3 * d;
  const double p12 = 20 * a + 16 * b - 8 * d;
  const double p13 = -3 * a - 8 * b - 3 * d;
  const double p22 = 16 * a + 192 * b + 16 * d;
  const double p23 = -8 * a + 16 * b + 20 * d;
  const double p33 = -3 * a + 20 * b + 39 * d;
  return Matrix3{{{s * p11, s * p12, s * p13},
                  {s * p12, s * p22, s * p23},
                  {s * p13, s * p23, s * p33}}};
}

/// Load vector R_e of int G v over the element.
inline Vector3 element_load(const ElementCoefficients& c) {
  const double s = c.dx / 30.0;
  return Vector3{s * (4 * c.G_left + 2 * c.G_mid - c.G_right),
                 s * (2 * c.G_left + 16 * c.G_mid + 2 * c.G_right),
                 s * (-c.G_left + 2 * c.G_mid + 4 * c.G_right)};
}

/// Pentadiagonal system in LAPACK-style band storage with room for the
/// pivoting fill (kl = ku = 2, two extra superdiagonals).
struct BandedSystem {
  static constexpr int kl = 2;
  static constexpr int ku = 2;
  static constexpr int ldab = 2 * kl + ku + 1;  // 7

  int n = 0;
  std::vector<double> ab;  // column-major, row = kl + ku + i - j
  std::vector<double> rhs;

  explicit BandedSystem(int dim)
      : n(dim),
        ab(static_cast<size_t>(ldab) * static_cast<size_t>(dim), 0.0),
        rhs(static_cast<size_t>(dim), 0.0) {}

  double& entry(int i, int j) {
    return ab[static_cast<size_t>(kl + ku + i - j) +
              static_cast<size_t>(j) * ldab];
  }
  double entry(int i, int j) const {
    return ab[static_cast<size_t>(kl + ku + i - j) +
              static_cast<size_t>(j) * ldab];
  }
};

/// Assemble the global (2 n_cells + 1)-dimensional system from per-element
/// Q_e + P_e blocks and loads. Element e couples global nodes 2e, 2e+1,
/// 2e+2 (half, integer, half); shared half-node rows accumulate both
/// neighbours. The first and last rows are replaced by Dirichlet identity
/// rows u = alpha, u = beta.
inline BandedSystem assemble(const std::vector<ElementCoefficients>& elements,
                             double alpha, double beta) {
  const int n_el = static_cast<int>(elements.size());
  BandedSystem sys(2 * n_el + 1);
  for (int e = 0; e < n_el; ++e) {
    const Matrix3 Q = element_stiffness(elements[static_cast<size_t>(e)]);
    const Matrix3 P = element_mass(elements[static_cast<size_t>(e)]);
    const Vector3 R = element_load(elements[static_cast<size_t>(e)]);
    const int base = 2 * e;
    for (int a = 0; a < 3; ++a) {
      for (int b = 0; b < 3; ++b)
        sys.entry(base + a, base + b) +=
            Q[static_cast<size_t>(a)][static_cast<size_t>(b)] +
            P[static_cast<size_t>(a)][static_cast<size_t>(b)];
      sys.rhs[static_cast<size_t>(base + a)] += R[static_cast<size_t>(a)];
    }
  }
  // Dirichlet rows.
  for (int j = 0; j <= std::min(BandedSystem::ku, sys.n - 1); ++j)
    sys.entry(0, j) = (j == 0) ? 1.0 : 0.0;
  for (int j = std::max(0, sys.n - 1 - BandedSystem::kl); j < sys.n; ++j)
    sys.entry(sys.n - 1, j) = (j == sys.n - 1) ? 1.0 : 0.0;
  sys.rhs.front() = alpha;
  sys.rhs.back() = beta;
  return sys;
}

/// Banded Gaussian elimination with partial pivoting confined to the band.
/// Destroys the system. Throws on a vanishing pivot, naming the row.
inline std::vector<double> solve_banded(BandedSystem sys) {
  const int n = sys.n;
  const int kl = BandedSystem::kl;
  const int width = BandedSystem::kl + BandedSystem::ku;  // fill extent
  for (int k = 0; k < n; ++k) {
    const int last_row = std::min(k + kl, n - 1);
    int piv = k;
    double piv_val = std::abs(sys.entry(k, k));
    for (int i = k + 1; i <= last_row; ++i) {
      const double v = std::abs(sys.entry(i, k));
      if (v > piv_val) {
        piv = i;
        piv_val = v;
      }
    }
    if (piv_val < 1e-300)
      throw std::runtime_error("solve_banded: singular pivot at row " +
                               std::to_string(k));
    const int last_col = std::min(k + width, n - 1);
    if (piv != k) {
      for (int j = k; j <= last_col; ++j)
        std::swap(sys.entry(k, j), sys.entry(piv, j));
      std::swap(sys.rhs[static_cast<size_t>(k)],
                sys.rhs[static_cast<size_t>(piv)]);
    }
    const double d = sys.entry(k, k);
    for (int i = k + 1; i <= last_row; ++i) {
      const double m = sys.entry(i, k) / d;
      if (m == 0.0) continue;
      for (int j = k + 1; j <= last_col; ++j)
        sys.entry(i, j) -= m * sys.entry(k, j);
      sys.rhs[static_cast<size_t>(i)] -= m * sys.rhs[static_cast<size_t>(k)];
    }
  }
  std::vector<double> x(static_cast<size_t>(n));
  for (int i = n - 1; i >= 0; --i) {
    double s = sys.rhs[static_cast<size_t>(i)];
    const int last_col = std::min(i + width, n - 1);
    for (int j = i + 1; j <= last_col; ++j)
      s -= sys.entry(i, j) * x[static_cast<size_t>(j)];
    x[static_cast<size_t>(i)] = s / sys.entry(i, i);
  }
  return x;
}

/// Recover the nodal velocity from (h, G) cell averages: cell-center point
/// values, limited edge reconstruction, then the quadratic-Galerkin solve
/// with Dirichlet data from bc.
inline NodalField recover_velocity(CellField h_bar, CellField G_bar,
                                   const Grid& grid, const BoundarySpec& bc) {
  fill_ghosts(h_bar, bc);
  fill_ghosts(G_bar, bc);
  const std::vector<double> h_pts = averages_to_points(h_bar);
  const std::vector<double> G_pts = averages_to_points(G_bar);
  const EdgeStates eh = reconstruct(h_bar, grid);
  const EdgeStates eG = reconstruct(G_bar, grid);

  std::vector<ElementCoefficients> elements(
      static_cast<size_t>(grid.n_cells));
  for (int j = 0; j < grid.n_cells; ++j) {
    const size_t sj = static_cast<size_t>(j);
    ElementCoefficients& c = elements[sj];
    c.h_left = eh.plus[sj];
    c.h_mid = h_pts[sj];
    c.h_right = eh.minus[sj + 1];
    c.G_left = eG.plus[sj];
    c.G_mid = G_pts[sj];
    c.G_right = eG.minus[sj + 1];
    c.dx = grid.dx;
    if (c.h_left <= 0.0 || c.h_mid <= 0.0 || c.h_right <= 0.0)
      throw PositivityError("non-positive depth in element " +
                            std::to_string(j));
  }

  const std::vector<double> sol =
      solve_banded(assemble(elements, bc.left_u, bc.right_u));

  NodalField u;
  u.half_nodes.resize(static_cast<size_t>(grid.n_cells + 1));
  u.integer_nodes.resize(static_cast<size_t>(grid.n_cells));
  for (int i = 0; i <= grid.n_cells; ++i)
    u.half_nodes[static_cast<size_t>(i)] = sol[static_cast<size_t>(2 * i)];
  for (int j = 0; j < grid.n_cells; ++j)
    u.integer_nodes[static_cast<size_t>(j)] =
        sol[static_cast<size_t>(2 * j + 1)];
  return u;
}

}  // namespace serre
