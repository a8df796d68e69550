#pragma once

#include <span>
#include <vector>

namespace reconf {

// One BER observation at a given TD density.
struct Sample {
  double density = 0.0;
  double ber = 0.0;
};

// Least-squares polynomial fit. Coefficients are highest power first.
struct FitReport {
  int degree = 0;
  std::vector<double> coefficients;
  double mse = 0.0;
  // Set when the Vandermonde system is rank deficient or badly conditioned,
  // which includes every fit with no more samples than coefficients.
  bool condition_flag = false;
};

struct FitOptions {
  // Singular values below this fraction of the largest are treated as zero.
  double rank_cutoff = 1e-12;
  // Condition numbers above this raise condition_flag.
  double condition_limit = 1e10;
};

// Fits a polynomial by complete orthogonal decomposition, giving the
// minimum-norm solution when the system is underdetermined.
// Throws InvalidInput on empty input, negative degree or non-finite values.
FitReport fit_polynomial(std::span<const Sample> samples, int degree,
                         const FitOptions& options = {});

// One report per degree, sorted by ascending mse; ties go to the lower degree.
std::vector<FitReport> rank_degrees(std::span<const Sample> samples,
                                    std::span<const int> degrees,
                                    const FitOptions& options = {});

// Horner evaluation of highest-power-first coefficients.
double polyval(std::span<const double> coefficients, double x);

// Derivative coefficients, highest power first. A constant yields {0}.
std::vector<double> polyder(std::span<const double> coefficients);

}  // namespace reconf
