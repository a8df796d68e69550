#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "reconf/error.hpp"
#include "reconf/offline_planner.hpp"

namespace reconf {

namespace {

// Variables of the multiplier fit: lambda_1..7, the budget multiplier, nu.
constexpr int kBudget = 7;
constexpr int kNu = 8;
constexpr int kVars = 9;

struct Fit {
  Eigen::VectorXd y;
  double residual = std::numeric_limits<double>::infinity();
};

// min ||G y - w|| over y with y[j] >= 0 for j in `signed_vars` and y[nu] free,
// by trying every zero pattern of the sign-constrained variables. At most
// eight of them exist, so this is at most 256 tiny least-squares solves.
Fit nonneg_least_squares(const Eigen::MatrixXd& G, const Eigen::VectorXd& w,
                         const std::vector<int>& signed_vars, const std::vector<int>& free_vars) {
  Fit best;
  const int k = static_cast<int>(signed_vars.size());
  for (unsigned mask = 0; mask < (1u << k); ++mask) {
    std::vector<int> cols = free_vars;
    for (int j = 0; j < k; ++j) {
      if (mask & (1u << j)) cols.push_back(signed_vars[static_cast<std::size_t>(j)]);
    }
    Eigen::VectorXd y = Eigen::VectorXd::Zero(kVars);
    if (!cols.empty()) {
      Eigen::MatrixXd sub(G.rows(), static_cast<Eigen::Index>(cols.size()));
      for (std::size_t c = 0; c < cols.size(); ++c) sub.col(static_cast<Eigen::Index>(c)) = G.col(cols[c]);
      const Eigen::VectorXd part = sub.completeOrthogonalDecomposition().solve(w);
      bool ok = true;
      for (std::size_t c = 0; c < cols.size(); ++c) {
        y(cols[c]) = part(static_cast<Eigen::Index>(c));
        if (cols[c] != kNu && part(static_cast<Eigen::Index>(c)) < -1e-12) ok = false;
      }
      if (!ok) continue;
    }
    const double res = (G * y - w).lpNorm<Eigen::Infinity>();
    if (res < best.residual - 1e-15) best = {y, res};
  }
  return best;
}

}  // namespace

KktCertificate kkt_verify(const Plan& candidate, const Shares& objective,
                          const SchemeCatalog& catalog, const CurveSet& curves, double a,
                          const DensityRange& range, const KktOptions& options) {
  const auto& x = candidate.shares;
  const double feas = 1e-9;
  double sum = 0.0;
  for (double xi : x) {
    if (xi < -feas) throw InvalidInput("kkt_verify: candidate has a negative share");
    sum += xi;
  }
  if (std::abs(sum - 1.0) > feas) throw InvalidInput("kkt_verify: candidate shares do not sum to 1");

  // Constraint i in 0..2 acts on the cumulative share s_i = x_1 + .. + x_{i+1}.
  // Its slope with respect to s_i is gamma_i; slack_i >= 0 when satisfied.
  std::array<double, 3> gamma{}, slack{};
  std::array<bool, 3> ber_active{};
  double cum = 0.0;
  for (std::size_t i = 0; i < 3; ++i) {
    cum += x[i];
    const BerCurve& f = curves[i];
    const bool fresh_violation = f.eval(range.d0()) >= a;
    if (fresh_violation) {
      gamma[i] = 1.0;
      slack[i] = -cum;
      ber_active[i] = std::abs(cum) <= options.share_active_tol;
      if (cum > feas) throw InvalidInput("kkt_verify: candidate uses a scheme that is never usable");
    } else {
      const double d = range.at_share(cum);
      gamma[i] = eval_g(f, d, range);
      slack[i] = a - f.eval(d);
      const double tol = options.ber_active_rel_tol * a;
      if (slack[i] < -tol) throw InvalidInput("kkt_verify: candidate violates a BER constraint");
      ber_active[i] = std::abs(slack[i]) <= tol;
      if (ber_active[i] && std::abs(gamma[i]) <= 1e-14) {
        throw DegenerateCertificate("kkt_verify: BER slope of " + std::string(to_string(f.scheme())) +
                                    " vanishes at an active constraint");
      }
    }
  }
  double budget_slack = 0.0;
  bool budget_active = false;
  if (options.adder_budget) {
    budget_slack = *options.adder_budget - candidate.avg_adder;
    if (budget_slack < -1e-9 * std::max(1.0, *options.adder_budget)) {
      throw InvalidInput("kkt_verify: candidate exceeds the adder budget");
    }
    budget_active = std::abs(budget_slack) <= 1e-9 * std::max(1.0, *options.adder_budget);
  }

  // Stationarity of L = -w.x - sum lambda_j x_j + sum lambda_{4+i} c_i(s_i)
  //   + mu (b.x - z) + nu (1.x - 1), row j:
  //   -lambda_j + sum_{i >= j} gamma_i lambda_{4+i} + mu b_j + nu = w_j.
  Eigen::MatrixXd G = Eigen::MatrixXd::Zero(4, kVars);
  Eigen::VectorXd w(4);
  for (int j = 0; j < 4; ++j) {
    G(j, j) = -1.0;
    for (int i = j; i < 3; ++i) G(j, 4 + i) = gamma[static_cast<std::size_t>(i)];
    G(j, kBudget) = catalog.adder_sizes[static_cast<std::size_t>(j)];
    G(j, kNu) = 1.0;
    w(j) = objective[static_cast<std::size_t>(j)];
  }

  KktCertificate cert;
  std::vector<int> signed_vars;
  for (int j = 0; j < 4; ++j) {
    cert.active[static_cast<std::size_t>(j)] = x[static_cast<std::size_t>(j)] <= options.share_active_tol;
    if (cert.active[static_cast<std::size_t>(j)]) signed_vars.push_back(j);
  }
  for (int i = 0; i < 3; ++i) {
    cert.active[static_cast<std::size_t>(4 + i)] = ber_active[static_cast<std::size_t>(i)];
    if (ber_active[static_cast<std::size_t>(i)]) signed_vars.push_back(4 + i);
  }
  if (budget_active) signed_vars.push_back(kBudget);

  const Fit fit = nonneg_least_squares(G, w, signed_vars, {kNu});
  for (int j = 0; j < 7; ++j) cert.lambdas[static_cast<std::size_t>(j)] = fit.y(j);
  cert.budget_lambda = fit.y(kBudget);
  cert.nu = fit.y(kNu);

  const double scale = std::max(1.0, w.lpNorm<Eigen::Infinity>());
  cert.stationarity_residual = fit.residual / scale;

  double slackness = 0.0;
  for (std::size_t j = 0; j < 4; ++j) slackness = std::max(slackness, std::abs(cert.lambdas[j] * x[j]));
  for (std::size_t i = 0; i < 3; ++i) {
    slackness = std::max(slackness, std::abs(cert.lambdas[4 + i] * slack[i]));
  }
  slackness = std::max(slackness, std::abs(cert.budget_lambda * budget_slack));
  cert.max_slackness_violation = slackness;

  cert.min_lambda = *std::min_element(cert.lambdas.begin(), cert.lambdas.end());
  if (options.adder_budget) cert.min_lambda = std::min(cert.min_lambda, cert.budget_lambda);

  cert.valid = cert.stationarity_residual <= options.tol &&
               cert.max_slackness_violation <= options.tol && cert.min_lambda >= -options.dual_tol;
  return cert;
}

}  // namespace reconf
