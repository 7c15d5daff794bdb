#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

#include "serre/grid.hpp"
#include "serre/scenarios.hpp"
#include "serre/simulation.hpp"

namespace serre {

/// Relative L1 norm: sum |sim - exact| / sum |exact|.
inline double l1_norm(const std::vector<double>& sim,
                      const std::vector<double>& exact) {
  if (sim.size() != exact.size())
    throw std::invalid_argument("l1_norm: length mismatch");
  double num = 0.0, den = 0.0;
  for (size_t i = 0; i < sim.size(); ++i) {
    num += std::abs(sim[i] - exact[i]);
    den += std::abs(exact[i]);
  }
  if (den == 0.0) throw std::invalid_argument("l1_norm: zero reference");
  return num / den;
}

struct DispersionResult {
  double omega_plus = 0.0;
  double omega_minus = 0.0;
  double v_phase = 0.0;  // + branch
  double v_group = 0.0;  // + branch
  double mu = 0.0;       // h0 k
};

/// Linearized dispersion relation about (h0, u0):
///   omega = u0 k +- k sqrt(g h0) sqrt(3/(mu^2 + 3)),  mu = h0 k,
/// with the group velocity of the + branch
///   v_g = u0 + sqrt(g h0) (sqrt(3/(mu^2+3)) - mu^2 sqrt(3/(mu^2+3)^3)).
inline DispersionResult dispersion(double k, double h0, double u0, double g) {
  if (!(h0 > 0.0) || !(k > 0.0))
    throw std::invalid_argument("dispersion: need h0 > 0, k > 0");
  DispersionResult r;
  r.mu = h0 * k;
  const double m2 = r.mu * r.mu;
  const double c0 = std::sqrt(g * h0);
  const double root = std::sqrt(3.0 / (m2 + 3.0));
  r.omega_plus = u0 * k + k * c0 * root;
  r.omega_minus = u0 * k - k * c0 * root;
  r.v_phase = u0 + c0 * root;
  r.v_group =
      u0 + c0 * (root - m2 * std::sqrt(3.0 / std::pow(m2 + 3.0, 3)));
  return r;
}

/// Pressure at depth xi below the surface:
///   p = p_a + rho g xi + (rho/2) xi (2h - xi) (u_x^2 - u u_xx - u_xt).
inline double pressure_profile(double h, double u_x, double u_xx, double u_xt,
                               double u, double xi, double rho, double g,
                               double p_a) {
  const double accel = u_x * u_x - u * u_xx - u_xt;
  return p_a + rho * g * xi + 0.5 * rho * xi * (2.0 * h - xi) * accel;
}

struct ConservationRow {
  double t = 0.0;
  double total_mass = 0.0;        // sum h dx over interior cells
  double total_G = 0.0;           // sum G dx
  double boundary_mass_influx = 0.0;
  double boundary_G_influx = 0.0;
  double mass_defect = 0.0;  // total - initial - influx
  double G_defect = 0.0;
};

inline std::vector<ConservationRow> conservation_report(
    const Trajectory& traj, const Grid& grid) {
  if (traj.empty())
    throw std::invalid_argument("conservation_report: empty trajectory");
  std::vector<ConservationRow> rows;
  const double m0 = interior_total(traj.front().h, grid);
  const double g0 = interior_total(traj.front().G, grid);
  for (const Snapshot& s : traj) {
    ConservationRow r;
    r.t = s.t;
    r.total_mass = interior_total(s.h, grid);
    r.total_G = interior_total(s.G, grid);
    r.boundary_mass_influx = s.boundary_mass_influx;
    r.boundary_G_influx = s.boundary_G_influx;
    r.mass_defect = r.total_mass - m0 - r.boundary_mass_influx;
    r.G_defect = r.total_G - g0 - r.boundary_G_influx;
    rows.push_back(r);
  }
  return rows;
}

struct ConvergenceRow {
  double dx = 0.0;
  double l1_h = 0.0;
  double l1_u = 0.0;
};

struct ConvergenceResult {
  std::vector<ConvergenceRow> rows;
  double slope_h = 0.0;
  double slope_u = 0.0;
};

/// Least-squares slope of log10(y) against log10(x).
inline double fit_log_slope(const std::vector<double>& x,
                            const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2)
    throw std::invalid_argument("fit_log_slope: need >= 2 matching points");
  const double n = static_cast<double>(x.size());
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (size_t i = 0; i < x.size(); ++i) {
    const double lx = std::log10(x[i]);
    const double ly = std::log10(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

/// Run the soliton scenario across a dx ladder and fit the L1 convergence
/// slopes. Errors compare cell-center point values (third-order consistent)
/// against the analytic solution at t_end.
inline ConvergenceResult convergence_study(const ScenarioConfig& base,
                                           const std::vector<double>& dx_ladder,
                                           double cr, double t_end) {
  if (base.tag != ScenarioTag::soliton)
    throw std::invalid_argument(
        "convergence_study: analytic reference requires the soliton scenario");
  ConvergenceResult res;
  for (double dx : dx_ladder) {
    ScenarioConfig cfg = base;
    cfg.n_cells =
        static_cast<int>(std::llround((base.x_max - base.x_min) / dx));
    cfg.controls.cr = cr;
    cfg.controls.t_end = t_end;
    cfg.output_times.clear();
    const Grid grid = make_grid(cfg.x_min, cfg.x_max, cfg.n_cells);
    const Trajectory traj = run(cfg);
    const Snapshot& fin = traj.back();

    CellField h = fin.h;
    fill_ghosts(h, BoundarySpec{cfg.a0, 0.0, cfg.a0, 0.0});
    const std::vector<double> h_sim = averages_to_points(h);

    const SolitonParams p{cfg.a0, cfg.a1, cfg.g, cfg.x0};
    std::vector<double> h_exact(static_cast<size_t>(grid.n_cells));
    std::vector<double> u_exact(static_cast<size_t>(grid.n_cells));
    for (int j = 0; j < grid.n_cells; ++j) {
      const PrimitiveState st = soliton_state(p, grid.cell_center(j), t_end);
      h_exact[static_cast<size_t>(j)] = st.h;
      u_exact[static_cast<size_t>(j)] = st.u;
    }
    ConvergenceRow row;
    row.dx = grid.dx;
    row.l1_h = l1_norm(h_sim, h_exact);
    row.l1_u = l1_norm(fin.u.integer_nodes, u_exact);
    res.rows.push_back(row);
  }
  std::vector<double> dxs, eh, eu;
  for (const ConvergenceRow& r : res.rows) {
    dxs.push_back(r.dx);
    eh.push_back(r.l1_h);
    eu.push_back(r.l1_u);
  }
  res.slope_h = fit_log_slope(dxs, eh);
  res.slope_u = fit_log_slope(dxs, eu);
  return res;
}

}  // namespace serre
