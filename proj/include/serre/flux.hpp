#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "serre/grid.hpp"
#include "serre/reconstruction.hpp"

namespace serre {

struct ConservedPair {
  double h = 0.0;
  double G = 0.0;
};

struct FluxPair {
  double f_h = 0.0;
  double f_G = 0.0;
};

struct WaveSpeeds {
  double a_plus = 0.0;   // >= 0
  double a_minus = 0.0;  // <= 0
};

/// A reconstructed depth dropped to or below zero.
class PositivityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Physical flux of the reformulated system:
///   f1 = u h
///   f2 = G u + g h^2 / 2 - (2 h^3 / 3) (du/dx)^2
inline FluxPair physical_flux(double h, double G, double u, double du_dx,
                              double g) {
  FluxPair f;
  f.f_h = u * h;
  f.f_G = G * u + 0.5 * g * h * h - (2.0 * h * h * h / 3.0) * du_dx * du_dx;
  return f;
}

enum class EdgeSide { left, right };

/// One-sided derivative of the cell's interpolating quadratic at an edge,
/// from the samples (u_{j-1/2}, u_j, u_{j+1/2}):
///   left edge:  (-u_{j+1/2} + 4 u_j - 3 u_{j-1/2}) / dx
///   right edge: ( 3 u_{j+1/2} - 4 u_j + u_{j-1/2}) / dx
inline double edge_du_dx(double u_left_half, double u_center,
                         double u_right_half, double dx, EdgeSide side) {
  if (side == EdgeSide::left)
    return (-u_right_half + 4.0 * u_center - 3.0 * u_left_half) / dx;
  return (3.0 * u_right_half - 4.0 * u_center + u_left_half) / dx;
}

/// Shallow-water eigenvalue bounds, clamped so a_plus >= 0 >= a_minus.
inline WaveSpeeds local_speeds(double h_minus, double u_minus, double h_plus,
                               double u_plus, double g) {
  const double cm = std::sqrt(g * h_minus);
  const double cp = std::sqrt(g * h_plus);
  WaveSpeeds s;
  s.a_plus = std::max({u_minus + cm, u_plus + cp, 0.0});
  s.a_minus = std::min({u_minus - cm, u_plus - cp, 0.0});
  return s;
}

/// Central-upwind numerical flux:
///   F = [a+ f(q-) - a- f(q+)]/(a+ - a-) + a+ a- /(a+ - a-) (q+ - q-)
/// Degenerate a+ = a- = 0 (identical quiescent states) gives zero flux.
inline FluxPair central_upwind_flux(const ConservedPair& qm,
                                    const ConservedPair& qp, const FluxPair& fm,
                                    const FluxPair& fp, const WaveSpeeds& s) {
  const double spread = s.a_plus - s.a_minus;
  if (spread <= 0.0) return FluxPair{};
  const double w = s.a_plus * s.a_minus / spread;
  FluxPair f;
  f.f_h = (s.a_plus * fm.f_h - s.a_minus * fp.f_h) / spread + w * (qp.h - qm.h);
  f.f_G = (s.a_plus * fm.f_G - s.a_minus * fp.f_G) / spread + w * (qp.G - qm.G);
  return f;
}

/// Semi-discrete tendencies plus the boundary fluxes needed for
/// conservation accounting.
struct SpatialDerivative {
  std::vector<double> dh_dt;
  std::vector<double> dG_dt;
  FluxPair left_boundary_flux;
  FluxPair right_boundary_flux;
};

/// L(q) = -(F_{j+1/2} - F_{j-1/2})/dx for every interior cell. The velocity
/// must already be the elliptic-solve result for the same (h, G). Ghosts of
/// both fields are filled here from bc. Each interface pairs the left cell's
/// reconstruction with the derivative of that cell's velocity quadratic, and
/// likewise on the right; the FEM velocity itself is continuous across the
/// interface. Ghost cells carry the constant far field (du/dx = 0).
///
/// The velocity gradient feeding f2 is taken from the cell's FEM quadratic
/// only while the cell's h and G limiters sit on their smooth third-order
/// branch. Where they do not (fronts, grid-scale oscillations), the
/// gradient is rebuilt from the cell's limited reconstruction of the
/// velocity averages instead. The elliptic solve responds to a grid-scale
/// G oscillation with a velocity oscillation whose one-sided quadratic
/// gradient feeds back into f2 through -(2h^3/3)(du/dx)^2; in locally
/// supercritical flow the central-upwind dissipation vanishes and that
/// feedback grows without bound. The limited reconstruction collapses at
/// grid-scale extrema, which caps the gradient there and removes the
/// feedback while leaving smooth regions untouched.
inline SpatialDerivative spatial_operator(CellField h_bar, CellField G_bar,
                                          const NodalField& u,
                                          const Grid& grid,
                                          const BoundarySpec& bc, double g) {
  fill_ghosts(h_bar, bc);
  fill_ghosts(G_bar, bc);
  const EdgeStates eh = reconstruct(h_bar, grid);
  const EdgeStates eG = reconstruct(G_bar, grid);
  const int ni = grid.n_interfaces();
  const int n = grid.n_cells;

  for (int i = 0; i < ni; ++i) {
    if (eh.minus[static_cast<size_t>(i)] <= 0.0 ||
        eh.plus[static_cast<size_t>(i)] <= 0.0)
      throw PositivityError("non-positive reconstructed depth at interface " +
                            std::to_string(i));
  }

  CellField u_bar = points_to_averages(u.integer_nodes, grid,
                                       Quantity::depth_h, bc.left_u,
                                       bc.right_u);
  for (int k = 1; k <= ghost_width; ++k) {
    u_bar.at(-k) = bc.left_u;
    u_bar.at(n - 1 + k) = bc.right_u;
  }
  const EdgeStates eu = reconstruct(u_bar, grid);

  std::vector<char> smooth(static_cast<size_t>(n + 2));  // cells -1..n
  for (int j = -1; j <= n; ++j) {
    const double rh =
        limiter::slope_ratio(h_bar.at(j - 1), h_bar.at(j), h_bar.at(j + 1));
    const double rG =
        limiter::slope_ratio(G_bar.at(j - 1), G_bar.at(j), G_bar.at(j + 1));
    smooth[static_cast<size_t>(j + 1)] =
        limiter::third_order_branch(rh) && limiter::third_order_branch(rG);
  }

  std::vector<FluxPair> F(static_cast<size_t>(ni));
  for (int i = 0; i < ni; ++i) {
    const size_t si = static_cast<size_t>(i);
    const ConservedPair qm{eh.minus[si], eG.minus[si]};
    const ConservedPair qp{eh.plus[si], eG.plus[si]};

    double u_m, du_m;
    if (i == 0) {
      u_m = bc.left_u;
      du_m = 0.0;
    } else {
      const int j = i - 1;  // cell left of the interface
      u_m = u.half_nodes[si];
      if (smooth[static_cast<size_t>(j + 1)])
        du_m = edge_du_dx(u.half_nodes[si - 1], u.integer_nodes[si - 1],
                          u.half_nodes[si], grid.dx, EdgeSide::right);
      else
        du_m = edge_du_dx(eu.plus[si - 1], u.integer_nodes[si - 1],
                          eu.minus[si], grid.dx, EdgeSide::right);
    }
    double u_p, du_p;
    if (i == n) {
      u_p = bc.right_u;
      du_p = 0.0;
    } else {
      const int j = i;  // cell right of the interface
      u_p = u.half_nodes[si];
      if (smooth[static_cast<size_t>(j + 1)])
        du_p = edge_du_dx(u.half_nodes[si], u.integer_nodes[si],
                          u.half_nodes[si + 1], grid.dx, EdgeSide::left);
      else
        du_p = edge_du_dx(eu.plus[si], u.integer_nodes[si], eu.minus[si + 1],
                          grid.dx, EdgeSide::left);
    }

    const FluxPair fm = physical_flux(qm.h, qm.G, u_m, du_m, g);
    const FluxPair fp = physical_flux(qp.h, qp.G, u_p, du_p, g);
    const WaveSpeeds s = local_speeds(qm.h, u_m, qp.h, u_p, g);
    F[si] = central_upwind_flux(qm, qp, fm, fp, s);
  }

  SpatialDerivative d;
  d.dh_dt.resize(static_cast<size_t>(n));
  d.dG_dt.resize(static_cast<size_t>(n));
  for (int j = 0; j < n; ++j) {
    const size_t sj = static_cast<size_t>(j);
    d.dh_dt[sj] = -(F[sj + 1].f_h - F[sj].f_h) / grid.dx;
    d.dG_dt[sj] = -(F[sj + 1].f_G - F[sj].f_G) / grid.dx;
  }
  d.left_boundary_flux = F.front();
  d.right_boundary_flux = F.back();
  return d;
}

}  // namespace serre
