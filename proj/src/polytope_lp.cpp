#include "reconf/polytope_lp.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "reconf/error.hpp"

namespace reconf {

void Polytope::validate() const {
  const Eigen::Index n = dim();
  if (n < 1) throw InvalidInput("polytope has no variables");
  if (A.rows() > 0 && A.cols() != n) throw InvalidInput("inequality matrix has wrong width");
  if (A_eq.rows() > 0 && A_eq.cols() != n) throw InvalidInput("equality matrix has wrong width");
  if (b.size() != A.rows()) throw InvalidInput("inequality rhs length mismatch");
  if (b_eq.size() != A_eq.rows()) throw InvalidInput("equality rhs length mismatch");
}

void Polytope::add_inequality(const Eigen::VectorXd& row, double rhs) {
  const Eigen::Index n = dim();
  if (row.size() != n) throw InvalidInput("inequality row has wrong width");
  A.conservativeResize(A.rows() + 1, n);
  A.row(A.rows() - 1) = row.transpose();
  b.conservativeResize(b.size() + 1);
  b(b.size() - 1) = rhs;
}

bool Polytope::contains(const Eigen::VectorXd& x, double tol) const {
  if (A.rows() > 0 && ((A * x - b).array() > tol).any()) return false;
  if (A_eq.rows() > 0 && ((A_eq * x - b_eq).array().abs() > tol).any()) return false;
  return true;
}

Eigen::Index numerical_rank(const Eigen::MatrixXd& m, double rel_cutoff) {
  if (m.rows() == 0 || m.cols() == 0) return 0;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
  const auto& sv = svd.singularValues();
  if (sv.size() == 0 || sv(0) == 0.0) return 0;
  Eigen::Index r = 0;
  for (Eigen::Index k = 0; k < sv.size(); ++k) {
    if (sv(k) > rel_cutoff * sv(0)) ++r;
  }
  return r;
}

namespace {

bool lex_less(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    if (a(i) < b(i)) return true;
    if (a(i) > b(i)) return false;
  }
  return false;
}

// Calls visit(indices) for every k-subset of {0..m-1} in lexicographic order.
template <class Visit>
void for_each_subset(int m, int k, Visit visit) {
  if (k > m) return;
  std::vector<int> idx(static_cast<std::size_t>(k));
  std::iota(idx.begin(), idx.end(), 0);
  while (true) {
    visit(idx);
    int i = k - 1;
    while (i >= 0 && idx[static_cast<std::size_t>(i)] == m - k + i) --i;
    if (i < 0) return;
    ++idx[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < k; ++j) {
      idx[static_cast<std::size_t>(j)] = idx[static_cast<std::size_t>(j - 1)] + 1;
    }
  }
}

}  // namespace

std::vector<Vertex> enumerate_vertices(const Polytope& p, const LpOptions& options) {
  p.validate();
  const Eigen::Index n = p.dim();
  const Eigen::Index p_rows = p.A_eq.rows();
  const int m = static_cast<int>(p.A.rows());
  const Eigen::Index eq_rank = numerical_rank(p.A_eq, options.rank_cutoff);
  const int pick = static_cast<int>(n - eq_rank);

  std::vector<Vertex> found;
  auto try_subset = [&](const std::vector<int>& subset) {
    Eigen::MatrixXd M(p_rows + pick, n);
    Eigen::VectorXd rho(p_rows + pick);
    if (p_rows > 0) {
      M.topRows(p_rows) = p.A_eq;
      rho.head(p_rows) = p.b_eq;
    }
    for (int k = 0; k < pick; ++k) {
      M.row(p_rows + k) = p.A.row(subset[static_cast<std::size_t>(k)]);
      rho(p_rows + k) = p.b(subset[static_cast<std::size_t>(k)]);
    }
    if (numerical_rank(M, options.rank_cutoff) < n) return;
    // M has full column rank; the least-squares solution is the unique
    // solution when the stacked system is consistent.
    Eigen::VectorXd x = M.colPivHouseholderQr().solve(rho);
    if (!p.contains(x, options.feasibility_tol)) return;
    found.push_back(Vertex{std::move(x), {}, 0.0});
  };

  if (pick == 0) {
    // The equalities alone pin the point.
    try_subset({});
  } else {
    for_each_subset(m, pick, try_subset);
  }

  std::sort(found.begin(), found.end(),
            [](const Vertex& a, const Vertex& b) { return lex_less(a.x, b.x); });
  std::vector<Vertex> unique;
  for (auto& v : found) {
    const bool dup = std::any_of(unique.begin(), unique.end(), [&](const Vertex& u) {
      return ((u.x - v.x).array().abs() <= options.duplicate_tol).all();
    });
    if (!dup) unique.push_back(std::move(v));
  }
  for (auto& v : unique) {
    for (int i = 0; i < m; ++i) {
      if (std::abs(p.A.row(i).dot(v.x) - p.b(i)) <= options.feasibility_tol) v.active_set.push_back(i);
    }
  }
  return unique;
}

LpSolution solve_lp(const Polytope& p, const Eigen::VectorXd& objective, Sense sense,
                    const LpOptions& options) {
  if (objective.size() != p.dim()) throw InvalidInput("objective length does not match polytope");
  auto vertices = enumerate_vertices(p, options);
  if (vertices.empty()) throw Infeasible("no vertices found; the feasible set is empty");

  const double sign = sense == Sense::Maximize ? 1.0 : -1.0;
  for (auto& v : vertices) v.objective = objective.dot(v.x);

  std::stable_sort(vertices.begin(), vertices.end(), [&](const Vertex& a, const Vertex& b) {
    const double sa = sign * a.objective, sb = sign * b.objective;
    if (sa != sb) return sa > sb;
    return lex_less(b.x, a.x);
  });

  // Objective ties within tolerance go to the lexicographically larger x.
  const double best = sign * vertices.front().objective;
  const double tol = options.tie_tol * std::max(1.0, std::abs(best));
  std::size_t pick = 0;
  for (std::size_t i = 1; i < vertices.size(); ++i) {
    if (best - sign * vertices[i].objective > tol) break;
    if (lex_less(vertices[pick].x, vertices[i].x)) pick = i;
  }
  std::rotate(vertices.begin(), vertices.begin() + static_cast<std::ptrdiff_t>(pick),
              vertices.begin() + static_cast<std::ptrdiff_t>(pick) + 1);

  LpSolution sol;
  sol.optimal_vertex = vertices.front();
  sol.objective_value = sol.optimal_vertex.objective;
  sol.all_vertices = std::move(vertices);
  return sol;
}

}  // namespace reconf
