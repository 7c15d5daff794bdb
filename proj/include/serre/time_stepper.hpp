#pragma once

#include <algorithm>
#include <cmath>
#include <utility>
#include <vector>

#include "serre/fem.hpp"
#include "serre/flux.hpp"
#include "serre/grid.hpp"

namespace serre {

struct StepControls {
  double cr = 0.2;       // Courant number, in (0, 1]
  double t_end = 0.0;    // s
  long max_steps = 50'000'000;
};

/// CFL bound dt = cr * dx / (2 max_j (|u_j| + sqrt(g h_j))), clipped so the
/// step lands exactly on t_target.
inline double cfl_dt(const CellField& h_bar, const NodalField& u,
                     const Grid& grid, double g, double cr, double t,
                     double t_target) {
  double max_speed = 0.0;
  for (int j = 0; j < grid.n_cells; ++j) {
    const double s = std::abs(u.integer_nodes[static_cast<size_t>(j)]) +
                     std::sqrt(g * h_bar.at(j));
    max_speed = std::max(max_speed, s);
  }
  double dt = cr * grid.dx / (2.0 * max_speed);
  if (t + dt > t_target) dt = t_target - t;
  return dt;
}

/// Conserved cell-average pair with the vector-space operations the SSP
/// stages need.
struct ConservedState {
  CellField h;
  CellField G;

  friend ConservedState operator+(const ConservedState& a,
                                  const ConservedState& b) {
    ConservedState r = a;
    for (size_t i = 0; i < r.h.values.size(); ++i) {
      r.h.values[i] += b.h.values[i];
      r.G.values[i] += b.G.values[i];
    }
    return r;
  }
  friend ConservedState operator*(double s, const ConservedState& a) {
    ConservedState r = a;
    for (size_t i = 0; i < r.h.values.size(); ++i) {
      r.h.values[i] *= s;
      r.G.values[i] *= s;
    }
    return r;
  }
};

/// One forward-Euler step q + dt L(q). The state type needs operator+ and
/// scalar operator*; rhs maps a state to its tendency.
template <class State, class Rhs>
State euler_step(const State& q, double dt, Rhs&& rhs) {
  return q + dt * rhs(q);
}

/// Three-stage SSP Runge-Kutta step:
///   q1 = q + dt L(q); q2 = q1 + dt L(q1); q3 = 3/4 q + 1/4 q2;
///   q4 = q3 + dt L(q3); q' = 1/3 q + 2/3 q4.
/// rhs is invoked exactly three times, on q, q1 and q3 in that order.
template <class State, class Rhs>
State ssp_rk3_step(const State& q, double dt, Rhs&& rhs) {
  const State q1 = q + dt * rhs(q);
  const State q2 = q1 + dt * rhs(q1);
  const State q3 = 0.75 * q + 0.25 * q2;
  const State q4 = q3 + dt * rhs(q3);
  return (1.0 / 3.0) * q + (2.0 / 3.0) * q4;
}

/// Quadrature weights of the three rhs evaluations inside ssp_rk3_step;
/// used to integrate boundary fluxes consistently with the update.
inline constexpr double ssp_rk3_stage_weights[3] = {1.0 / 6.0, 1.0 / 6.0,
                                                    2.0 / 3.0};

}  // namespace serre
