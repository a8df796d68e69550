#include <doctest.h>

#include <random>

#include "reconf/error.hpp"
#include "reconf/offline_planner.hpp"
#include "reconf/polytope_lp.hpp"
#include "support/random_polytope.hpp"

using namespace reconf;

namespace {

Polytope simplex(int n) {
  Polytope p;
  p.A = -Eigen::MatrixXd::Identity(n, n);
  p.b = Eigen::VectorXd::Zero(n);
  p.A_eq = Eigen::MatrixXd::Ones(1, n);
  p.b_eq = Eigen::VectorXd::Ones(1);
  return p;
}

Eigen::VectorXd vec(std::initializer_list<double> v) {
  Eigen::VectorXd out(static_cast<Eigen::Index>(v.size()));
  Eigen::Index i = 0;
  for (double x : v) out(i++) = x;
  return out;
}

const std::array<double, 3> kPaperU{0.2624, 0.4082, 0.9121};

}  // namespace

TEST_CASE("2-simplex vertices") {
  const auto vs = enumerate_vertices(simplex(2));
  REQUIRE(vs.size() == 2);
  CHECK(vs[0].x.isApprox(vec({0, 1})));
  CHECK(vs[1].x.isApprox(vec({1, 0})));
  const auto sol = solve_lp(simplex(2), vec({1, 0}), Sense::Maximize);
  CHECK(sol.objective_value == 1.0);
  CHECK(sol.optimal_vertex.x.isApprox(vec({1, 0})));
}

TEST_CASE("ties go to the lexicographically largest vertex") {
  const auto sol = solve_lp(simplex(3), vec({1, 1, 1}), Sense::Maximize);
  CHECK(sol.optimal_vertex.x.isApprox(vec({1, 0, 0})));
  const auto low = solve_lp(simplex(3), vec({1, 1, 0}), Sense::Minimize);
  CHECK(low.optimal_vertex.x.isApprox(vec({0, 0, 1})));
}

TEST_CASE("share polytope with the reference bounds") {
  const auto p = share_polytope(kPaperU);
  const auto vs = enumerate_vertices(p);
  bool found = false;
  for (const auto& v : vs) {
    CHECK(p.contains(v.x));
    if ((v.x - vec({0.2624, 0.1458, 0.5039, 0.0879})).cwiseAbs().maxCoeff() < 1e-9) found = true;
  }
  CHECK(found);

  const auto cat = SchemeCatalog::loco23();
  const Eigen::Map<const Eigen::Vector4d> r(cat.rates.data());
  const auto sol = solve_lp(p, r, Sense::Maximize);
  CHECK(sol.objective_value == doctest::Approx(0.8544).epsilon(1e-4));
  for (std::size_t i = 1; i < sol.all_vertices.size(); ++i) {
    CHECK(sol.all_vertices[i - 1].objective >= sol.all_vertices[i].objective - 1e-12);
  }
}

TEST_CASE("a budget below the cheapest vertex empties the polytope") {
  auto p = share_polytope(kPaperU);
  const auto cat = SchemeCatalog::loco23();
  p.add_inequality(Eigen::Map<const Eigen::Vector4d>(cat.adder_sizes.data()), 20.0);
  CHECK(enumerate_vertices(p).empty());
  CHECK_THROWS_AS(solve_lp(p, Eigen::Vector4d::Ones(), Sense::Maximize), Infeasible);
}

TEST_CASE("shape validation") {
  Polytope p = simplex(3);
  p.b = Eigen::VectorXd::Zero(2);
  CHECK_THROWS_AS(p.validate(), InvalidInput);
}

TEST_CASE("random 3-d polytopes agree with a full 1e-3 grid") {
  std::mt19937_64 gen(2024);
  for (int trial = 0; trial < 8; ++trial) {
    const auto p = testing::random_simplex_polytope(3, 4, gen);
    const auto c = testing::random_objective(3, gen);
    const double lp = solve_lp(p, c, Sense::Maximize).objective_value;
    const double grid = testing::grid_max(p, c, 1e-3, Eigen::Vector3d::Zero(), Eigen::Vector3d::Ones());
    CHECK(lp >= grid - 1e-9);
    CHECK(lp - grid <= 2e-3);
  }
}

TEST_CASE("objective is invariant under row permutations") {
  std::mt19937_64 gen(7);
  for (int trial = 0; trial < 20; ++trial) {
    auto p = testing::random_simplex_polytope(4, 5, gen);
    const auto c = testing::random_objective(4, gen);
    const double base = solve_lp(p, c, Sense::Maximize).objective_value;
    Eigen::PermutationMatrix<Eigen::Dynamic> perm(p.A.rows());
    perm.setIdentity();
    std::shuffle(perm.indices().data(), perm.indices().data() + perm.indices().size(), gen);
    p.A = perm * p.A;
    p.b = perm * p.b;
    CHECK(solve_lp(p, c, Sense::Maximize).objective_value == doctest::Approx(base).epsilon(1e-12));
  }
}

TEST_CASE("optimum dominates rejection-sampled feasible points") {
  std::mt19937_64 gen(99);
  std::gamma_distribution<double> gamma(1.0, 1.0);
  for (int trial = 0; trial < 10; ++trial) {
    const auto p = testing::random_simplex_polytope(4, 6, gen);
    const auto c = testing::random_objective(4, gen);
    const double best = solve_lp(p, c, Sense::Maximize).objective_value;
    const double worst = solve_lp(p, c, Sense::Minimize).objective_value;
    int accepted = 0;
    for (int k = 0; k < 5000; ++k) {
      Eigen::Vector4d x;
      for (int i = 0; i < 4; ++i) x(i) = gamma(gen);
      x /= x.sum();
      if (!p.contains(x)) continue;
      ++accepted;
      CHECK(c.dot(x) <= best + 1e-9);
      CHECK(c.dot(x) >= worst - 1e-9);
    }
    CHECK(accepted > 0);
  }
}
