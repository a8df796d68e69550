#include <doctest.h>

#include <algorithm>
#include <random>
#include <vector>

#include "reconf/curvefit.hpp"
#include "reconf/error.hpp"

using namespace reconf;

namespace {

std::vector<Sample> sample_poly(const std::vector<double>& coeffs, double lo, double hi, int n) {
  std::vector<Sample> out;
  for (int i = 0; i < n; ++i) {
    const double d = lo + (hi - lo) * i / (n - 1);
    out.push_back({d, polyval(coeffs, d)});
  }
  return out;
}

}  // namespace

TEST_CASE("polyval and polyder") {
  const std::vector<double> c{2.0, -3.0, 0.5};  // 2x^2 - 3x + 0.5
  CHECK(polyval(c, 0.0) == doctest::Approx(0.5));
  CHECK(polyval(c, 2.0) == doctest::Approx(2.5));
  const auto d = polyder(c);
  REQUIRE(d.size() == 2);
  CHECK(d[0] == 4.0);
  CHECK(d[1] == -3.0);
  CHECK(polyder(std::vector<double>{7.0}) == std::vector<double>{0.0});
}

TEST_CASE("exact data is interpolated") {
  const std::vector<double> truth{1e-3, -2e-3, 5e-4, 1e-4};
  const auto samples = sample_poly(truth, 0.8, 1.5, 12);
  const auto rep = fit_polynomial(samples, 3);
  REQUIRE(rep.coefficients.size() == 4);
  for (std::size_t i = 0; i < truth.size(); ++i) CHECK(rep.coefficients[i] == doctest::Approx(truth[i]).epsilon(1e-6));
  CHECK(rep.mse < 1e-24);
  CHECK_FALSE(rep.condition_flag);
}

TEST_CASE("six samples, degree five: square system") {
  const std::vector<double> truth{0.3, -1.0, 0.2, 0.7, -0.1, 0.05};
  const auto samples = sample_poly(truth, 0.9487, 0.9837, 6);
  const auto rep = fit_polynomial(samples, 5);
  CHECK(rep.degree == 5);
  for (const auto& s : samples) CHECK(polyval(rep.coefficients, s.density) == doctest::Approx(s.ber).epsilon(1e-6));
}

TEST_CASE("underdetermined fits are flagged and still interpolate") {
  const auto samples = sample_poly({1.0, 0.0, 1.0}, 0.8, 1.5, 4);
  const auto rep = fit_polynomial(samples, 7);
  CHECK(rep.condition_flag);
  for (const auto& s : samples) CHECK(polyval(rep.coefficients, s.density) == doctest::Approx(s.ber).epsilon(1e-8));
}

TEST_CASE("invalid input") {
  CHECK_THROWS_AS(fit_polynomial(std::vector<Sample>{}, 3), InvalidInput);
  CHECK_THROWS_AS(fit_polynomial(std::vector<Sample>{{1.0, 1.0}}, -1), InvalidInput);
  CHECK_THROWS_AS(fit_polynomial(std::vector<Sample>{{1.0, std::nan("")}}, 1), InvalidInput);
  CHECK_THROWS_AS(rank_degrees(std::vector<Sample>{{1.0, 1.0}}, std::vector<int>{}), InvalidInput);
}

TEST_CASE("mse does not grow with degree on noisy data") {
  std::mt19937_64 gen(11);
  std::normal_distribution<double> noise(0.0, 1e-4);
  auto samples = sample_poly({2e-3, -1e-3, 3e-3, 1e-3}, 0.8, 1.5, 40);
  for (auto& s : samples) s.ber += noise(gen);
  double prev = 1e300;
  for (int deg = 0; deg <= 7; ++deg) {
    const double mse = fit_polynomial(samples, deg).mse;
    CHECK(mse <= prev * (1 + 1e-9));
    prev = mse;
  }
}

TEST_CASE("sample order does not matter") {
  std::mt19937_64 gen(5);
  std::uniform_real_distribution<double> u(-1e-4, 1e-4);
  auto samples = sample_poly({1e-2, -2e-2, 1e-2, 1e-3, 1e-4, 1e-3}, 0.8, 1.5, 30);
  for (auto& s : samples) s.ber += u(gen);
  const auto a = fit_polynomial(samples, 5);
  std::shuffle(samples.begin(), samples.end(), gen);
  const auto b = fit_polynomial(samples, 5);
  for (double d = 0.8; d <= 1.5; d += 0.05) CHECK(polyval(a.coefficients, d) == doctest::Approx(polyval(b.coefficients, d)).epsilon(1e-8));
}

TEST_CASE("rank_degrees orders by mse, ties to the lower degree") {
  const auto samples = sample_poly({1.0, 2.0}, 0.8, 1.5, 20);  // exactly linear
  const std::vector<int> degrees{7, 3, 1, 0};
  const auto ranked = rank_degrees(samples, degrees);
  REQUIRE(ranked.size() == 4);
  CHECK(ranked[0].degree == 1);
  CHECK(ranked[1].degree == 3);
  CHECK(ranked[2].degree == 7);
  CHECK(ranked[3].degree == 0);
}

TEST_CASE("refitting a sampled degree-7 curve recovers it") {
  const std::vector<double> c{-0.01, 0.05, -0.1, 0.1, -0.05, 0.01, 0.002, -0.0005};
  const auto samples = sample_poly(c, 0.8, 1.5, 71);
  const auto rep = fit_polynomial(samples, 7);
  for (double d = 0.8; d <= 1.5; d += 0.01) CHECK(polyval(rep.coefficients, d) == doctest::Approx(polyval(c, d)).epsilon(1e-7).scale(1e-3));
}
