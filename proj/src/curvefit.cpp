#include "reconf/curvefit.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <string>

#include "reconf/error.hpp"

namespace reconf {

double polyval(std::span<const double> coefficients, double x) {
  double acc = 0.0;
  for (double c : coefficients) acc = acc * x + c;
  return acc;
}

std::vector<double> polyder(std::span<const double> coefficients) {
  const std::size_t n = coefficients.size();
  if (n <= 1) return {0.0};
  std::vector<double> out(n - 1);
  for (std::size_t j = 0; j + 1 < n; ++j) {
    out[j] = coefficients[j] * static_cast<double>(n - 1 - j);
  }
  return out;
}

FitReport fit_polynomial(std::span<const Sample> samples, int degree,
                         const FitOptions& options) {
  if (samples.empty()) throw InvalidInput("fit_polynomial: empty sample list");
  if (degree < 0) throw InvalidInput("fit_polynomial: negative degree " + std::to_string(degree));
  for (const auto& s : samples) {
    if (!std::isfinite(s.density) || !std::isfinite(s.ber)) {
      throw InvalidInput("fit_polynomial: non-finite sample value");
    }
  }

  const Eigen::Index rows = static_cast<Eigen::Index>(samples.size());
  const Eigen::Index cols = degree + 1;
  Eigen::MatrixXd vander(rows, cols);
  Eigen::VectorXd rhs(rows);
  for (Eigen::Index i = 0; i < rows; ++i) {
    const double x = samples[static_cast<std::size_t>(i)].density;
    double p = 1.0;
    for (Eigen::Index j = cols - 1; j >= 0; --j) {
      vander(i, j) = p;
      p *= x;
    }
    rhs(i) = samples[static_cast<std::size_t>(i)].ber;
  }

  // Rank and conditioning come from the singular values; the solve itself
  // goes through the orthogonal decomposition.
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(vander);
  const auto& sv = svd.singularValues();
  const double smax = sv.size() > 0 ? sv(0) : 0.0;
  Eigen::Index rank = 0;
  for (Eigen::Index k = 0; k < sv.size(); ++k) {
    if (sv(k) > options.rank_cutoff * smax) ++rank;
  }

  Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod;
  cod.setThreshold(options.rank_cutoff);
  cod.compute(vander);
  Eigen::VectorXd coef = cod.solve(rhs);

  FitReport report;
  report.degree = degree;
  report.coefficients.assign(coef.data(), coef.data() + coef.size());

  const Eigen::VectorXd resid = vander * coef - rhs;
  report.mse = resid.squaredNorm() / static_cast<double>(rows);

  const bool underdetermined = rows <= degree;
  const bool deficient = rank < cols;
  const double smin = sv.size() > 0 ? sv(sv.size() - 1) : 0.0;
  const bool ill = smin <= 0.0 || smax / smin > options.condition_limit;
  report.condition_flag = underdetermined || deficient || ill;
  return report;
}

std::vector<FitReport> rank_degrees(std::span<const Sample> samples,
                                    std::span<const int> degrees,
                                    const FitOptions& options) {
  if (degrees.empty()) throw InvalidInput("rank_degrees: no degrees given");
  std::vector<FitReport> out;
  out.reserve(degrees.size());
  for (int d : degrees) out.push_back(fit_polynomial(samples, d, options));

  // Residuals at round-off level count as exact so that an exact fit at a
  // low degree is not outranked by noise from a higher one.
  double scale = 0.0;
  for (const auto& s : samples) scale = std::max(scale, std::abs(s.ber));
  const double floor = (1e-12 * scale) * (1e-12 * scale);
  auto key = [floor](const FitReport& r) { return r.mse <= floor ? 0.0 : r.mse; };
  std::stable_sort(out.begin(), out.end(), [&](const FitReport& a, const FitReport& b) {
    const double ka = key(a), kb = key(b);
    if (ka != kb) return ka < kb;
    return a.degree < b.degree;
  });
  return out;
}

}  // namespace reconf
