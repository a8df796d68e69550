#pragma once

// Random bounded polytopes for property tests: the probability simplex cut by
// extra half-spaces that all keep a common interior point.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "reconf/polytope_lp.hpp"

namespace reconf::testing {

inline Polytope random_simplex_polytope(int n, int extra_cuts, std::mt19937_64& gen) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::uniform_real_distribution<double> margin(0.05, 0.3);
  std::gamma_distribution<double> gamma(2.0, 1.0);

  Polytope p;
  p.A = Eigen::MatrixXd::Zero(n + extra_cuts, n);
  p.b = Eigen::VectorXd::Zero(n + extra_cuts);
  for (int i = 0; i < n; ++i) p.A(i, i) = -1.0;

  Eigen::VectorXd center(n);
  for (int i = 0; i < n; ++i) center(i) = gamma(gen);
  center /= center.sum();
  for (int k = 0; k < extra_cuts; ++k) {
    Eigen::VectorXd row(n);
    for (int i = 0; i < n; ++i) row(i) = u(gen);
    p.A.row(n + k) = row.transpose();
    p.b(n + k) = row.dot(center) + margin(gen);
  }
  p.A_eq = Eigen::MatrixXd::Ones(1, n);
  p.b_eq = Eigen::VectorXd::Ones(1);
  return p;
}

inline Eigen::VectorXd random_objective(int n, std::mt19937_64& gen) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Eigen::VectorXd c(n);
  for (int i = 0; i < n; ++i) c(i) = u(gen);
  return c;
}

// Best c.x over simplex grid points (step h) inside lo..hi on the first n-1
// coordinates; the last coordinate is 1 - sum. -inf when none is feasible.
inline double grid_max(const Polytope& p, const Eigen::VectorXd& c, double h,
                       const Eigen::VectorXd& lo, const Eigen::VectorXd& hi,
                       Eigen::VectorXd* argmax = nullptr) {
  const int n = static_cast<int>(c.size());
  double best = -std::numeric_limits<double>::infinity();
  Eigen::VectorXd x = Eigen::VectorXd::Zero(n);
  auto steps = [&](int i) { return static_cast<long>(std::floor((hi(i) - lo(i)) / h + 1e-9)); };
  auto visit = [&](auto&& self, int i, double used) -> void {
    if (i == n - 1) {
      x(i) = 1.0 - used;
      if (x(i) < -1e-12) return;
      if (p.contains(x, 1e-12)) {
        const double v = c.dot(x);
        if (v > best) {
          best = v;
          if (argmax) *argmax = x;
        }
      }
      return;
    }
    const long k = steps(i);
    for (long s = 0; s <= k; ++s) {
      x(i) = lo(i) + s * h;
      if (used + x(i) > 1.0 + 1e-12) break;
      self(self, i + 1, used + x(i));
    }
  };
  visit(visit, 0, 0.0);
  return best;
}

// Coarse grid, then a 1e-3 grid around the best coarse points.
inline double refined_grid_max(const Polytope& p, const Eigen::VectorXd& c) {
  const int n = static_cast<int>(c.size());
  const double coarse = 0.02;
  Eigen::VectorXd lo = Eigen::VectorXd::Zero(n), hi = Eigen::VectorXd::Ones(n);
  Eigen::VectorXd arg;
  double best = grid_max(p, c, coarse, lo, hi, &arg);
  if (!std::isfinite(best)) return best;
  // Refine twice around the running best, each time in a box two coarse
  // steps wide; the LP optimum is a vertex so the box follows it quickly.
  for (double h : {4e-3, 1e-3}) {
    for (int round = 0; round < 3; ++round) {
      const double half = 2.0 * (h == 4e-3 ? coarse : 4e-3);
      for (int i = 0; i < n; ++i) {
        lo(i) = std::max(0.0, std::round((arg(i) - half) / h) * h);
        hi(i) = std::min(1.0, arg(i) + half);
      }
      Eigen::VectorXd a2;
      const double v = grid_max(p, c, h, lo, hi, &a2);
      if (v > best) {
        best = v;
        arg = a2;
      }
    }
  }
  return best;
}

}  // namespace reconf::testing
