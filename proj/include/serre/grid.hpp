#pragma once

#include <cmath>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace serre {

/// Ghost layer width on each side of the domain. Two cells are required:
/// the limited reconstruction of a cell uses both neighbours, and the flux
/// at a domain-edge interface needs the reconstruction of the first ghost.
inline constexpr int ghost_width = 2;

enum class Quantity { depth_h, momentum_G };

/// Uniform 1D cell partition of [x_min, x_max]. dx is computed once in
/// make_grid and stored.
struct Grid {
  double x_min = 0.0;
  double x_max = 0.0;
  int n_cells = 0;
  double dx = 0.0;

  double cell_center(int j) const { return x_min + (j + 0.5) * dx; }
  double interface_pos(int i) const { return x_min + i * dx; }
  int n_interfaces() const { return n_cells + 1; }
  int padded_size() const { return n_cells + 2 * ghost_width; }
};

inline Grid make_grid(double x_min, double x_max, int n_cells) {
  if (!(x_max > x_min))
    throw std::invalid_argument("make_grid: x_max must exceed x_min");
  if (n_cells < 5)
    throw std::invalid_argument("make_grid: need at least 5 cells");
  Grid g;
  g.x_min = x_min;
  g.x_max = x_max;
  g.n_cells = n_cells;
  g.dx = (x_max - x_min) / n_cells;
  return g;
}

/// Ghost-padded cell averages of one conserved quantity. Interior cells are
/// indexed 0..n_cells-1 through at(); ghosts live at -2,-1 and n, n+1.
struct CellField {
  std::vector<double> values;
  Quantity quantity = Quantity::depth_h;

  double& at(int j) { return values[static_cast<size_t>(j + ghost_width)]; }
  double at(int j) const { return values[static_cast<size_t>(j + ghost_width)]; }
  int interior_size() const {
    return static_cast<int>(values.size()) - 2 * ghost_width;
  }
};

inline CellField make_cell_field(const Grid& grid, Quantity q) {
  CellField f;
  f.values.assign(static_cast<size_t>(grid.padded_size()), 0.0);
  f.quantity = q;
  return f;
}

/// Continuous piecewise-quadratic quantity sampled at cell centers
/// (integer_nodes, length n_cells) and interfaces (half_nodes, length
/// n_cells + 1).
struct NodalField {
  std::vector<double> integer_nodes;
  std::vector<double> half_nodes;
};

/// Constant-in-time Dirichlet far-field values.
struct BoundarySpec {
  double left_h = 1.0;
  double left_u = 0.0;
  double right_h = 1.0;
  double right_u = 0.0;
};

/// Far-field ghost values. For G the far field has zero velocity gradient,
/// so G_ghost = u*h on that side.
inline void fill_ghosts(CellField& field, const BoundarySpec& bc) {
  double left, right;
  if (field.quantity == Quantity::depth_h) {
    left = bc.left_h;
    right = bc.right_h;
  } else {
    left = bc.left_u * bc.left_h;
    right = bc.right_u * bc.right_h;
  }
  const int n = field.interior_size();
  field.at(-2) = left;
  field.at(-1) = left;
  field.at(n) = right;
  field.at(n + 1) = right;
}

/// Point values at cell centers from cell averages, third-order:
/// q_j = (-q_{j+1} + 26 q_j - q_{j-1}) / 24. Requires ghosts filled.
inline std::vector<double> averages_to_points(const CellField& field) {
  const int n = field.interior_size();
  std::vector<double> p(static_cast<size_t>(n));
  for (int j = 0; j < n; ++j)
    p[static_cast<size_t>(j)] =
        (-field.at(j + 1) + 26.0 * field.at(j) - field.at(j - 1)) / 24.0;
  return p;
}

/// Cell averages from point values at cell centers: invert the tridiagonal
/// relation q_j = (-qbar_{j+1} + 26 qbar_j - qbar_{j-1}) / 24 (Thomas
/// algorithm; the matrix is strictly diagonally dominant). The ghost
/// averages on each side are the given constant far-field values and are
/// folded into the first and last rows.
inline CellField points_to_averages(const std::vector<double>& pts,
                                    const Grid& grid, Quantity q, double left,
                                    double right) {
  const int n = grid.n_cells;
  if (static_cast<int>(pts.size()) != n)
    throw std::invalid_argument(
        "points_to_averages: size mismatch with grid");
  std::vector<double> diag(static_cast<size_t>(n), 26.0);
  std::vector<double> rhs(static_cast<size_t>(n));
  for (int j = 0; j < n; ++j)
    rhs[static_cast<size_t>(j)] = 24.0 * pts[static_cast<size_t>(j)];
  rhs.front() += left;
  rhs.back() += right;
  for (int j = 1; j < n; ++j) {
    const double m = -1.0 / diag[static_cast<size_t>(j - 1)];
    diag[static_cast<size_t>(j)] += m;
    rhs[static_cast<size_t>(j)] -= m * rhs[static_cast<size_t>(j - 1)];
  }
  CellField out = make_cell_field(grid, q);
  out.at(n - 1) = rhs[static_cast<size_t>(n - 1)] / diag[static_cast<size_t>(n - 1)];
  for (int j = n - 2; j >= 0; --j)
    out.at(j) = (rhs[static_cast<size_t>(j)] + out.at(j + 1)) /
                diag[static_cast<size_t>(j)];
  return out;
}

/// Cell averages of f via 3-point Gauss-Legendre quadrature per cell
/// (exact for degree 5). Ghosts are left untouched.
inline CellField function_to_averages(const std::function<double(double)>& f,
                                      const Grid& grid, Quantity q) {
  CellField out = make_cell_field(grid, q);
  const double r = std::sqrt(3.0 / 5.0);
  const double w0 = 8.0 / 9.0, w1 = 5.0 / 9.0;
  for (int j = 0; j < grid.n_cells; ++j) {
    const double xc = grid.cell_center(j);
    const double hw = 0.5 * grid.dx;
    out.at(j) = 0.5 * (w1 * f(xc - r * hw) + w0 * f(xc) + w1 * f(xc + r * hw));
  }
  return out;
}

/// Total of the interior averages times dx (mass for h, total G otherwise).
inline double interior_total(const CellField& field, const Grid& grid) {
  double s = 0.0;
  for (int j = 0; j < grid.n_cells; ++j) s += field.at(j);
  return s * grid.dx;
}

}  // namespace serre
