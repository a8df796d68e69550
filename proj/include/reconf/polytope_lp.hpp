#pragma once

#include <Eigen/Dense>

#include <vector>

namespace reconf {

// {x : A x <= b, A_eq x = b_eq}
struct Polytope {
  Eigen::MatrixXd A;
  Eigen::VectorXd b;
  Eigen::MatrixXd A_eq;
  Eigen::VectorXd b_eq;

  Eigen::Index dim() const { return A.cols() > 0 ? A.cols() : A_eq.cols(); }
  // Throws InvalidInput on inconsistent shapes or n < 1.
  void validate() const;
  // Appends the inequality row . x <= rhs.
  void add_inequality(const Eigen::VectorXd& row, double rhs);
  bool contains(const Eigen::VectorXd& x, double tol = 1e-9) const;
};

struct Vertex {
  Eigen::VectorXd x;
  std::vector<int> active_set;  // rows of A tight at x
  double objective = 0.0;       // filled in by solve_lp
};

enum class Sense { Maximize, Minimize };

struct LpOptions {
  // Rank cutoff relative to the largest singular value.
  double rank_cutoff = 1e-10;
  // Constraint satisfaction and active-set tolerance.
  double feasibility_tol = 1e-9;
  // Componentwise distance under which two vertices are the same.
  double duplicate_tol = 1e-9;
  // Objective values closer than this (relative) are ties.
  double tie_tol = 1e-12;
};

struct LpSolution {
  Vertex optimal_vertex;
  double objective_value = 0.0;
  // Every vertex, best objective first (descending for maximization).
  std::vector<Vertex> all_vertices;
};

// Numerical rank with a cutoff relative to the largest singular value.
Eigen::Index numerical_rank(const Eigen::MatrixXd& m, double rel_cutoff);

// Exhaustive corner enumeration: every choice of n - rank(A_eq) inequality
// rows that, stacked under A_eq, has full column rank is solved and kept if
// feasible. Output is sorted lexicographically and deduplicated. An empty
// result means the polytope is empty.
std::vector<Vertex> enumerate_vertices(const Polytope& p, const LpOptions& options = {});

// Optimizes c.x over the vertices. Ties go to the lexicographically largest x.
// Throws Infeasible when there are no vertices.
LpSolution solve_lp(const Polytope& p, const Eigen::VectorXd& objective, Sense sense,
                    const LpOptions& options = {});

}  // namespace reconf
