#pragma once

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "serre/grid.hpp"
#include "serre/time_stepper.hpp"

namespace serre {

// ---------------------------------------------------------------------------
// Solitary wave
// ---------------------------------------------------------------------------

struct SolitonParams {
  double a0 = 10.0;  // still-water depth (m)
  double a1 = 1.0;   // amplitude (m)
  double g = 9.81;
  double x0 = 0.0;  // initial crest position (m)

  double celerity() const { return std::sqrt(g * (a0 + a1)); }
  double decay() const {
    return std::sqrt(3.0 * a1) / (2.0 * a0 * std::sqrt(a0 + a1));
  }
};

struct PrimitiveState {
  double h = 0.0;
  double u = 0.0;
  double G = 0.0;
};

/// Travelling soliton:
///   h = a0 + a1 sech^2(kappa (x - x0 - c t)),  u = c (1 - a0/h).
/// G = u h - (h^3/3 u_x)_x collapses to u h - (c a0 / 3)(h_x^2 + h h_xx)
/// for this profile.
inline PrimitiveState soliton_state(const SolitonParams& p, double x,
                                    double t) {
  const double c = p.celerity();
  const double k = p.decay();
  const double th = k * (x - p.x0 - c * t);
  const double sech = 1.0 / std::cosh(th);
  const double s2 = sech * sech;
  const double tnh = std::tanh(th);

  PrimitiveState st;
  st.h = p.a0 + p.a1 * s2;
  st.u = c * (1.0 - p.a0 / st.h);
  const double hx = -2.0 * p.a1 * k * s2 * tnh;
  const double hxx = -2.0 * p.a1 * k * k * (s2 * s2 - 2.0 * s2 * tnh * tnh);
  st.G = st.u * st.h - (c * p.a0 / 3.0) * (hx * hx + st.h * hxx);
  return st;
}

// ---------------------------------------------------------------------------
// Stoker dam-break reference (shallow water, not Serre)
// ---------------------------------------------------------------------------

struct StokerSolution {
  double h1 = 0.0, h0 = 0.0, g = 9.81, x_dam = 0.0;
  double h_m = 0.0;        // depth between rarefaction and shock
  double u_m = 0.0;        // velocity of the intermediate state
  double shock_speed = 0.0;

  /// Profile at (x, t), t > 0: rarefaction - constant - shock.
  void sample(double x, double t, double& h, double& u) const {
    const double xi = (x - x_dam) / t;
    const double c1 = std::sqrt(g * h1);
    const double c_m = std::sqrt(g * h_m);
    if (xi <= -c1) {
      h = h1;
      u = 0.0;
    } else if (xi <= u_m - c_m) {
      const double c = (2.0 * c1 - xi) / 3.0;
      h = c * c / g;
      u = xi + c;
    } else if (xi <= shock_speed) {
      h = h_m;
      u = u_m;
    } else {
      h = h0;
      u = 0.0;
    }
  }
};

/// Intermediate state of the wet dam break: match the left rarefaction
/// invariant u = 2(sqrt(g h1) - sqrt(g hm)) against the Rankine-Hugoniot
/// shock relation into still water of depth h0. Bisection on (h0, h1) to
/// 1e-12.
inline StokerSolution sww_dam_break_exact(double h1, double h0, double g,
                                          double x_dam) {
  if (!(h1 > 0.0) || !(h0 > 0.0) || h1 < h0)
    throw std::invalid_argument("sww_dam_break_exact: need h1 >= h0 > 0");
  StokerSolution sol;
  sol.h1 = h1;
  sol.h0 = h0;
  sol.g = g;
  sol.x_dam = x_dam;
  if (h1 == h0) {
    sol.h_m = h1;
    sol.u_m = 0.0;
    sol.shock_speed = 0.0;
    return sol;
  }
  const auto residual = [&](double hm) {
    return 2.0 * (std::sqrt(g * h1) - std::sqrt(g * hm)) -
           (hm - h0) * std::sqrt(g * (hm + h0) / (2.0 * hm * h0));
  };
  double lo = h0, hi = h1;
  for (int it = 0; it < 200 && (hi - lo) > 1e-12 * h1; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (residual(mid) > 0.0)
      lo = mid;
    else
      hi = mid;
  }
  sol.h_m = 0.5 * (lo + hi);
  sol.u_m = 2.0 * (std::sqrt(g * h1) - std::sqrt(g * sol.h_m));
  sol.shock_speed = sol.h_m * sol.u_m / (sol.h_m - sol.h0);
  return sol;
}

// ---------------------------------------------------------------------------
// Scenario configuration
// ---------------------------------------------------------------------------

enum class ScenarioTag {
  soliton,
  dam_break,
  rectangular_wave,
  undular_bore,
  custom
};

inline std::string to_string(ScenarioTag t) {
  switch (t) {
    case ScenarioTag::soliton: return "soliton";
    case ScenarioTag::dam_break: return "dam_break";
    case ScenarioTag::rectangular_wave: return "rectangular_wave";
    case ScenarioTag::undular_bore: return "undular_bore";
    case ScenarioTag::custom: return "custom";
  }
  return "?";
}

struct ScenarioConfig {
  ScenarioTag tag = ScenarioTag::custom;
  double x_min = 0.0;
  double x_max = 1.0;
  int n_cells = 0;
  double g = 9.81;
  StepControls controls;
  std::vector<double> output_times;

  // soliton
  double a0 = 0.0, a1 = 0.0, x0 = 0.0;
  // dam break
  double h1 = 0.0, h0 = 0.0, x_dam = 0.0;
  // rectangular wave
  double drop = 0.0, b = 0.0;
  // undular bore
  double upstream_h = 0.0, upstream_u = 0.0;
  double downstream_h = 0.0, downstream_u = 0.0;
};

struct InitialState {
  CellField h;
  CellField G;
  BoundarySpec bc;
  // Discontinuity positions after snapping to the nearest interface; empty
  // for smooth scenarios.
  std::vector<double> snapped_positions;
};

inline double snap_to_interface(double x, const Grid& grid) {
  const double i = std::round((x - grid.x_min) / grid.dx);
  return grid.x_min + i * grid.dx;
}

/// Piecewise-constant cell averages of a step profile whose jumps are
/// already aligned with interfaces.
inline CellField step_averages(const Grid& grid,
                               const std::function<double(double)>& value) {
  CellField f = make_cell_field(grid, Quantity::depth_h);
  for (int j = 0; j < grid.n_cells; ++j) f.at(j) = value(grid.cell_center(j));
  return f;
}

inline InitialState dam_break_ic(double h1, double h0, double x_dam,
                                 const Grid& grid) {
  if (!(h1 > 0.0) || !(h0 > 0.0))
    throw std::invalid_argument("dam_break_ic: depths must be positive");
  const double xd = snap_to_interface(x_dam, grid);
  InitialState s;
  s.h = step_averages(grid, [&](double x) { return x < xd ? h1 : h0; });
  s.G = make_cell_field(grid, Quantity::momentum_G);
  s.bc = BoundarySpec{h1, 0.0, h0, 0.0};
  s.snapped_positions = {xd};
  return s;
}

inline InitialState rectangular_wave_ic(double h1, double drop, double b,
                                        const Grid& grid) {
  if (!(h1 > drop))
    throw std::invalid_argument("rectangular_wave_ic: drop must be < h1");
  const double bl = snap_to_interface(-b, grid);
  const double br = snap_to_interface(b, grid);
  InitialState s;
  s.h = step_averages(
      grid, [&](double x) { return (x > bl && x < br) ? h1 - drop : h1; });
  s.G = make_cell_field(grid, Quantity::momentum_G);
  s.bc = BoundarySpec{h1, 0.0, h1, 0.0};
  s.snapped_positions = {bl, br};
  return s;
}

/// Flume configuration for the gate-closure bore: steady upstream inflow on
/// the left, closed gate state on the right. The upstream discharge figure
/// is read as a depth-averaged velocity in m/s (the flow is described as
/// subcritical, which only the velocity reading satisfies).
inline ScenarioConfig undular_bore_config() {
  ScenarioConfig c;
  c.tag = ScenarioTag::undular_bore;
  c.x_min = 0.0;
  c.x_max = 11.15;
  c.n_cells = 1000;  // dx = 0.01115 m
  c.g = 9.81;
  c.controls.cr = 0.2;
  c.upstream_h = 0.192;
  c.upstream_u = 0.199;
  c.downstream_h = 0.22;
  c.downstream_u = 0.0;
  return c;
}

/// Build the initial (h, G) averages and boundary values for a configured
/// scenario. Smooth scenarios get third-order cell averages of the analytic
/// fields; step scenarios are exact after interface snapping.
inline InitialState initial_state(const ScenarioConfig& cfg, const Grid& grid) {
  switch (cfg.tag) {
    case ScenarioTag::soliton: {
      SolitonParams p{cfg.a0, cfg.a1, cfg.g, cfg.x0};
      InitialState s;
      s.h = function_to_averages(
          [&](double x) { return soliton_state(p, x, 0.0).h; }, grid,
          Quantity::depth_h);
      s.G = function_to_averages(
          [&](double x) { return soliton_state(p, x, 0.0).G; }, grid,
          Quantity::momentum_G);
      s.bc = BoundarySpec{cfg.a0, 0.0, cfg.a0, 0.0};
      return s;
    }
    case ScenarioTag::dam_break:
      return dam_break_ic(cfg.h1, cfg.h0, cfg.x_dam, grid);
    case ScenarioTag::rectangular_wave:
      return rectangular_wave_ic(cfg.h1, cfg.drop, cfg.b, grid);
    case ScenarioTag::undular_bore: {
      InitialState s;
      s.h = step_averages(grid, [&](double) { return cfg.upstream_h; });
      s.G = make_cell_field(grid, Quantity::momentum_G);
      for (int j = 0; j < grid.n_cells; ++j)
        s.G.at(j) = cfg.upstream_u * cfg.upstream_h;
      s.bc = BoundarySpec{cfg.upstream_h, cfg.upstream_u, cfg.downstream_h,
                          cfg.downstream_u};
      return s;
    }
    case ScenarioTag::custom:
      throw std::invalid_argument(
          "initial_state: custom scenarios supply their own fields");
  }
  throw std::logic_error("initial_state: unreachable");
}

}  // namespace serre
