#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "reconf/bermodel.hpp"
#include "reconf/polytope_lp.hpp"

namespace reconf {

using Shares = std::array<double, 4>;

// Rates r and adder sizes b, in OP, SP, OT, ST order.
struct SchemeCatalog {
  Shares rates{};
  Shares adder_sizes{};

  // Length-23 LOCO parameters.
  static SchemeCatalog loco23();
  // Throws InvalidInput unless 0 < r <= 1 and b > 0.
  void validate() const;
};

// Normalized lifetime shares with the quantities derived from them.
struct Plan {
  Shares shares{};
  std::array<double, 3> switch_densities{};
  double capacity = 0.0;
  double avg_adder = 0.0;
  double threshold = 0.0;
  DensityRange range;
  std::vector<std::string> diagnostics;
};

// Derives switch densities, capacity r.x and average adder size b.x.
Plan make_plan(const Shares& shares, const SchemeCatalog& catalog, double a,
               const DensityRange& range);

// Cumulative share limits x1 <= u1, x1+x2 <= u2, x1+x2+x3 <= u3.
struct ShareBounds {
  std::array<double, 3> u{1.0, 1.0, 1.0};
  // Schemes that already exceed the threshold on a fresh device.
  std::array<bool, 3> fresh_violation{false, false, false};
  std::vector<std::string> diagnostics;
};

// The share polytope {sum x = 1, x >= 0, cumulative sums <= u}.
Polytope share_polytope(const std::array<double, 3>& u);

// Crossing-derived bounds. Throws EndOfLifeInfeasible when the last scheme
// exceeds `a` at d1.
ShareBounds compute_bounds(const CurveSet& curves, double a, const DensityRange& range,
                           const CrossingOptions& options = {});

struct SharePolytope {
  Polytope polytope;
  ShareBounds bounds;
};

SharePolytope build_polytope(const CurveSet& curves, double a, const DensityRange& range,
                             const CrossingOptions& options = {});

enum class CRegion { AllSchemes, SkipOP, SkipOT, SkipOPOT };
std::string_view to_string(CRegion r);

enum class ZRegion { Infeasible, LowerPiece, MiddlePiece, UpperPiece, Nonbinding };
std::string_view to_string(ZRegion r);

struct OfflineResult {
  Plan plan;
  LpSolution lp;
  ShareBounds bounds;
  std::string region;  // empty for problem 1
};

// Maximize capacity r.x.
OfflineResult solve_problem1(const SchemeCatalog& catalog, const ShareBounds& bounds, double a,
                             const DensityRange& range);
OfflineResult solve_problem1(const SchemeCatalog& catalog, const CurveSet& curves, double a,
                             const DensityRange& range);

// Maximize k.x with k = r - b/c. Capacity stays r.x. Throws InvalidInput for c <= 0.
OfflineResult solve_problem2(const SchemeCatalog& catalog, const ShareBounds& bounds, double a,
                             const DensityRange& range, double c);
OfflineResult solve_problem2(const SchemeCatalog& catalog, const CurveSet& curves, double a,
                             const DensityRange& range, double c);

// Maximize r.x subject to b.x <= z. Throws Infeasible below the minimum
// achievable average adder size.
OfflineResult solve_problem3(const SchemeCatalog& catalog, const ShareBounds& bounds, double a,
                             const DensityRange& range, double z);
OfflineResult solve_problem3(const SchemeCatalog& catalog, const CurveSet& curves, double a,
                             const DensityRange& range, double z);

// c at which k1 = k2 and c at which k3 = k4. Throws InvalidInput if a rate pair ties.
std::pair<double, double> c_region_boundaries(const SchemeCatalog& catalog);
CRegion c_region(const SchemeCatalog& catalog, double c);

// Ascending adder-size breakpoints of the capacity-vs-budget frontier: the
// first is the smallest feasible b.x, the last is b.x of the problem-1
// optimum. Throws Infeasible on an empty polytope.
std::vector<double> z_breakpoints(const SchemeCatalog& catalog, const ShareBounds& bounds);
ZRegion z_region(double z, const std::vector<double>& breakpoints);

Shares objective_r(const SchemeCatalog& catalog);
Shares objective_k(const SchemeCatalog& catalog, double c);

// Lagrange multipliers for a candidate optimum. lambdas[0..3] belong to
// x_i >= 0 and lambdas[4..6] to the three BER constraints.
struct KktCertificate {
  std::array<double, 7> lambdas{};
  double nu = 0.0;
  double budget_lambda = 0.0;  // only meaningful with an adder budget
  double stationarity_residual = 0.0;
  double max_slackness_violation = 0.0;
  double min_lambda = 0.0;
  std::array<bool, 7> active{};
  bool valid = false;
};

struct KktOptions {
  double tol = 1e-6;
  double dual_tol = 1e-8;
  double share_active_tol = 1e-9;
  // BER constraints within this fraction of `a` count as active.
  double ber_active_rel_tol = 1e-6;
  // Adds the b.x <= z constraint of problem 3.
  std::optional<double> adder_budget;
};

// Checks stationarity, complementary slackness and dual feasibility at the
// candidate. The multipliers minimize the stationarity residual over
// lambda >= 0 with inactive constraints held at zero. A scheme that already
// exceeds `a` at d0 contributes the linear constraint (cumulative share <= 0)
// in place of its BER constraint. Throws InvalidInput for an infeasible
// candidate and DegenerateCertificate when an active BER constraint has
// zero slope.
KktCertificate kkt_verify(const Plan& candidate, const Shares& objective,
                          const SchemeCatalog& catalog, const CurveSet& curves, double a,
                          const DensityRange& range, const KktOptions& options = {});

}  // namespace reconf
