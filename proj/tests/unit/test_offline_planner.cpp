#include <doctest.h>

#include <cmath>
#include <random>

#include "reconf/error.hpp"
#include "reconf/offline_planner.hpp"

using namespace reconf;

namespace {

const DensityRange kRange(0.8, 1.5);
const SchemeCatalog kCat = SchemeCatalog::loco23();

ShareBounds paper_bounds() {
  ShareBounds b;
  b.u = {0.2624, 0.4082, 0.9121};
  return b;
}

// Straight lines reaching `a` exactly where the reference shares put the
// switches; ST reaches it past d1.
CurveSet linear_curves(double a = 1e-3) {
  const std::array<double, 4> cross{kRange.at_share(0.2624), kRange.at_share(0.4082),
                                    kRange.at_share(0.9121), 1.528};
  CurveSet out;
  for (std::size_t i = 0; i < 4; ++i) {
    const double slope = 0.01;
    out[i] = BerCurve(kSchemeOrder[i], {slope, a - slope * cross[i]}, {0.8, 1.5});
  }
  return out;
}

void check_shares(const Shares& got, const Shares& want, double tol) {
  for (std::size_t i = 0; i < 4; ++i) {
    CAPTURE(i);
    CHECK(std::abs(got[i] - want[i]) <= tol);
  }
}

}  // namespace

TEST_CASE("catalog") {
  CHECK(kCat.rates[0] == 0.9306);
  CHECK(kCat.adder_sizes[3] == 30);
  SchemeCatalog bad = kCat;
  bad.rates[1] = 1.2;
  CHECK_THROWS_AS(bad.validate(), InvalidInput);
}

TEST_CASE("make_plan derives switches and metrics") {
  const auto plan = make_plan({0.25, 0.25, 0.25, 0.25}, kCat, 1e-3, kRange);
  CHECK(plan.switch_densities[0] == doctest::Approx(0.975));
  CHECK(plan.switch_densities[2] == doctest::Approx(1.325));
  CHECK(plan.capacity == doctest::Approx(0.845225));
  CHECK(plan.avg_adder == doctest::Approx(43.25));
}

TEST_CASE("problem 1 with the reference bounds") {
  const auto res = solve_problem1(kCat, paper_bounds(), 1e-3, kRange);
  check_shares(res.plan.shares, {0.2624, 0.1458, 0.5039, 0.0879}, 1e-9);
  CHECK(res.plan.capacity == doctest::Approx(0.8544).epsilon(1e-4));
  CHECK(res.plan.avg_adder == doctest::Approx(52.4265).epsilon(1e-6));
}

TEST_CASE("problem 1 from curves crossing at the reference points") {
  const auto res = solve_problem1(kCat, linear_curves(), 1e-3, kRange);
  check_shares(res.plan.shares, {0.2624, 0.1458, 0.5039, 0.0879}, 1e-6);
  CHECK(res.plan.switch_densities[0] == doctest::Approx(0.98368).epsilon(1e-6));
}

TEST_CASE("c regions") {
  const auto [c12, c34] = c_region_boundaries(kCat);
  CHECK(c12 == doctest::Approx(988.1395).epsilon(1e-5));
  CHECK(c34 == doctest::Approx(348.9772).epsilon(1e-5));
  CHECK(c_region(kCat, 100) == CRegion::SkipOPOT);
  CHECK(c_region(kCat, 500) == CRegion::SkipOP);
  CHECK(c_region(kCat, 2000) == CRegion::AllSchemes);
  CHECK_THROWS_AS(objective_k(kCat, 0.0), InvalidInput);
  SchemeCatalog tied = kCat;
  tied.rates[1] = tied.rates[0];
  CHECK_THROWS_AS(c_region_boundaries(tied), InvalidInput);
}

TEST_CASE("problem 2 region optima") {
  const auto b = paper_bounds();
  const auto low = solve_problem2(kCat, b, 1e-3, kRange, 100);
  CHECK(low.region == "skip-OP-OT");
  check_shares(low.plan.shares, {0, 0.4082, 0, 0.5918}, 1e-9);
  CHECK(low.plan.capacity == doctest::Approx(0.7993).epsilon(1e-4));

  const auto mid = solve_problem2(kCat, b, 1e-3, kRange, 500);
  CHECK(mid.region == "skip-OP");
  check_shares(mid.plan.shares, {0, 0.4082, 0.5039, 0.0879}, 1e-9);
  CHECK(mid.plan.capacity == doctest::Approx(0.8412).epsilon(1e-4));

  const auto high = solve_problem2(kCat, b, 1e-3, kRange, 2000);
  CHECK(high.region == "all-schemes");
  check_shares(high.plan.shares, {0.2624, 0.1458, 0.5039, 0.0879}, 1e-9);
}

TEST_CASE("problem 2 with a huge c is problem 1") {
  for (const auto& curves : {linear_curves(), fixture("paper-offline-mt")}) {
    const auto p1 = solve_problem1(kCat, curves, 1e-3, kRange);
    const auto p2 = solve_problem2(kCat, curves, 1e-3, kRange, 1e9);
    check_shares(p2.plan.shares, p1.plan.shares, 1e-9);
  }
}

TEST_CASE("problem 3 at the reference budgets") {
  const auto b = paper_bounds();
  const auto bp = z_breakpoints(kCat, b);
  REQUIRE(bp.size() == 3);
  CHECK(bp[0] == doctest::Approx(24.6934).epsilon(1e-6));
  CHECK(bp[1] == doctest::Approx(39.3065).epsilon(1e-6));
  CHECK(bp[2] == doctest::Approx(52.4265).epsilon(1e-6));

  const auto z35 = solve_problem3(kCat, b, 1e-3, kRange, 35);
  check_shares(z35.plan.shares, {0, 0.4082, 0.3554, 0.2364}, 1e-4);
  CHECK(z35.plan.capacity == doctest::Approx(0.8288).epsilon(2e-4));
  CHECK(z35.plan.avg_adder == doctest::Approx(35).epsilon(1e-9));

  const auto z45 = solve_problem3(kCat, b, 1e-3, kRange, 45);
  check_shares(z45.plan.shares, {0.1139, 0.2943, 0.5039, 0.0879}, 1e-4);
  CHECK(z45.plan.capacity == doctest::Approx(0.8469).epsilon(2e-4));

  const auto z100 = solve_problem3(kCat, b, 1e-3, kRange, 100);
  CHECK(z100.region == "nonbinding");
  check_shares(z100.plan.shares, solve_problem1(kCat, b, 1e-3, kRange).plan.shares, 1e-9);

  CHECK_THROWS_AS(solve_problem3(kCat, b, 1e-3, kRange, 20), Infeasible);
  CHECK(z_region(20, bp) == ZRegion::Infeasible);
  CHECK(z_region(35, bp) == ZRegion::LowerPiece);
  CHECK(z_region(100, bp) == ZRegion::Nonbinding);
}

TEST_CASE("problem 3 closed forms on each piece") {
  const auto b = paper_bounds();
  const auto bp = z_breakpoints(kCat, b);
  std::mt19937_64 gen(3);
  std::uniform_real_distribution<double> lower(bp[0], bp[1]), upper(bp[1], bp[2]);
  for (int k = 0; k < 10; ++k) {
    const double z = lower(gen);
    const auto x = solve_problem3(kCat, b, 1e-3, kRange, z).plan.shares;
    CHECK(x[2] == doctest::Approx((z - bp[0]) / 29.0).epsilon(1e-9));
    CHECK(x[3] == doctest::Approx(1 - 0.4082 - x[2]).epsilon(1e-9));
  }
  for (int k = 0; k < 10; ++k) {
    const double z = upper(gen);
    const auto x = solve_problem3(kCat, b, 1e-3, kRange, z).plan.shares;
    CHECK(x[0] == doctest::Approx((z - bp[1]) / 50.0).epsilon(1e-9));
  }
}

TEST_CASE("problem 3 capacity never falls as the budget grows") {
  const auto b = paper_bounds();
  double prev = 0.0;
  for (double z = 25.0; z <= 60.0; z += 0.5) {
    const double cap = solve_problem3(kCat, b, 1e-3, kRange, z).plan.capacity;
    CHECK(cap >= prev - 1e-12);
    prev = cap;
  }
}

TEST_CASE("bounds from the shipped offline table") {
  const auto b = compute_bounds(fixture("paper-offline-mt"), 1e-3, kRange);
  CHECK(b.u[0] == 0.0);
  CHECK(b.u[1] == 0.0);
  CHECK(b.u[2] == doctest::Approx(0.8204492).epsilon(1e-6));
  CHECK(b.fresh_violation[1]);
  CHECK_FALSE(b.diagnostics.empty());
}

TEST_CASE("end-of-life infeasibility") {
  auto curves = linear_curves();
  curves[3] = BerCurve(Scheme::ST, {0.01, 1e-3 - 0.01 * 1.2}, {0.8, 1.5});
  try {
    compute_bounds(curves, 1e-3, kRange);
    FAIL("expected EndOfLifeInfeasible");
  } catch (const EndOfLifeInfeasible& e) {
    CHECK(e.last_ok_density() == doctest::Approx(1.2).epsilon(1e-6));
  }
  CHECK_THROWS_AS(solve_problem1(kCat, curves, 1e-3, kRange), Infeasible);
}

TEST_CASE("KKT certificates") {
  const auto curves = linear_curves();
  const auto r = objective_r(kCat);

  SUBCASE("problem 1 optimum is certified") {
    const auto p1 = solve_problem1(kCat, curves, 1e-3, kRange);
    const auto cert = kkt_verify(p1.plan, r, kCat, curves, 1e-3, kRange);
    CHECK(cert.valid);
    CHECK(cert.stationarity_residual < 1e-6);
    CHECK(cert.min_lambda >= -1e-8);
  }
  SUBCASE("problem 2 and 3 optima are certified") {
    const auto p2 = solve_problem2(kCat, curves, 1e-3, kRange, 500);
    CHECK(kkt_verify(p2.plan, objective_k(kCat, 500), kCat, curves, 1e-3, kRange).valid);
    const auto p3 = solve_problem3(kCat, curves, 1e-3, kRange, 45);
    KktOptions opt;
    opt.adder_budget = 45;
    CHECK(kkt_verify(p3.plan, r, kCat, curves, 1e-3, kRange, opt).valid);
  }
  SUBCASE("shipped table optimum is certified") {
    const auto off = fixture("paper-offline-mt");
    const auto p1 = solve_problem1(kCat, off, 1e-3, kRange);
    CHECK(kkt_verify(p1.plan, r, kCat, off, 1e-3, kRange).valid);
  }
  SUBCASE("a feasible but suboptimal point is rejected") {
    const auto plan = make_plan({0.2, 0.2, 0.5, 0.1}, kCat, 1e-3, kRange);
    CHECK_FALSE(kkt_verify(plan, r, kCat, curves, 1e-3, kRange).valid);
  }
  SUBCASE("an infeasible point is an error") {
    const auto plan = make_plan({0.5, 0.1, 0.3, 0.1}, kCat, 1e-3, kRange);
    CHECK_THROWS_AS(kkt_verify(plan, r, kCat, curves, 1e-3, kRange), InvalidInput);
  }
  SUBCASE("flat active constraint") {
    auto flat = curves;
    // a + (d - s)^3 reaches the threshold at s with zero slope.
    const double s = kRange.at_share(0.2624);
    flat[0] = BerCurve(Scheme::OP, {1.0, -3 * s, 3 * s * s, 1e-3 - s * s * s}, {0.8, 1.5});
    const auto plan = make_plan({0.2624, 0.1458, 0.5039, 0.0879}, kCat, 1e-3, kRange);
    CHECK_THROWS_AS(kkt_verify(plan, r, kCat, flat, 1e-3, kRange), DegenerateCertificate);
  }
}
