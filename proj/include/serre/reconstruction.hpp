#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "serre/grid.hpp"

namespace serre {

/// Limited interface values. minus[i] is extrapolated from the cell left of
/// interface i, plus[i] from the cell right of it.
struct EdgeStates {
  std::vector<double> minus;
  std::vector<double> plus;
};

namespace limiter {

inline constexpr double kappa = 1.0 / 3.0;
inline constexpr double epsilon_ratio = 1e-12;

/// r_j = (q_{j+1} - q_j)/(q_j - q_{j-1}) with a scale-aware guard on the
/// denominator. Both differences below the guard means locally constant
/// data; return 1 so the limiters see a smooth region.
inline double slope_ratio(double qm, double q0, double qp) {
  const double num = qp - q0;
  const double den = q0 - qm;
  const double eps = epsilon_ratio * std::max(1.0, std::abs(q0));
  if (std::abs(den) < eps) {
    if (std::abs(num) < eps) return 1.0;
    const double s = (den < 0.0) ? -1.0 : 1.0;
    return s * num / eps;
  }
  return num / den;
}

/// phi^-(r) = max[0, min(2r, (1 + 2r)/3, 2)]
inline double koren_minus(double r) {
  return std::max(0.0, std::min({2.0 * r, (1.0 + 2.0 * r) / 3.0, 2.0}));
}

/// phi^+(r) = max[0, min(2r, (2 + r)/3, 2)]
inline double koren_plus(double r) {
  return std::max(0.0, std::min({2.0 * r, (2.0 + r) / 3.0, 2.0}));
}

/// True when both limiters sit on their third-order kappa = 1/3 branch,
/// i.e. the data around the cell is smooth and monotone enough that the
/// limited reconstruction coincides with the unlimited quadratic:
/// phi^-(r) = (1 + 2r)/3 requires r in [1/4, 5/2] and
/// phi^+(r) = (2 + r)/3 requires r in [2/5, 4].
inline bool third_order_branch(double r) { return r >= 0.4 && r <= 2.5; }

}  // namespace limiter

/// Koren-limited kappa = 1/3 reconstruction of interface values from cell
/// averages. For cell j:
///   q^-_{j+1/2} = q_j + 1/2 phi^-(r_j) (q_j - q_{j-1})
///   q^+_{j-1/2} = q_j - 1/2 phi^+(r_j) (q_j - q_{j-1})
/// Ghosts must be filled; interfaces 0..n_cells are produced, the outermost
/// ones from ghost-cell stencils.
inline EdgeStates reconstruct(const CellField& field, const Grid& grid) {
  const int ni = grid.n_interfaces();
  EdgeStates e;
  e.minus.resize(static_cast<size_t>(ni));
  e.plus.resize(static_cast<size_t>(ni));
  for (int i = 0; i < ni; ++i) {
    {
      const int j = i - 1;  // cell left of interface i
      const double d = field.at(j) - field.at(j - 1);
      const double r = limiter::slope_ratio(field.at(j - 1), field.at(j),
                                            field.at(j + 1));
      e.minus[static_cast<size_t>(i)] =
          field.at(j) + 0.5 * limiter::koren_minus(r) * d;
    }
    {
      const int j = i;  // cell right of interface i
      const double d = field.at(j) - field.at(j - 1);
      const double r = limiter::slope_ratio(field.at(j - 1), field.at(j),
                                            field.at(j + 1));
      e.plus[static_cast<size_t>(i)] =
          field.at(j) - 0.5 * limiter::koren_plus(r) * d;
    }
  }
  return e;
}

}  // namespace serre
