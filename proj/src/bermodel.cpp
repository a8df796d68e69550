#include "reconf/bermodel.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <string>

#include "reconf/curvefit.hpp"
#include "reconf/error.hpp"

namespace reconf {

std::string_view to_string(Scheme s) {
  switch (s) {
    case Scheme::OP: return "OP";
    case Scheme::SP: return "SP";
    case Scheme::OT: return "OT";
    case Scheme::ST: return "ST";
  }
  return "?";
}

Scheme parse_scheme(std::string_view text) {
  std::string t;
  for (char c : text) t.push_back(static_cast<char>(std::toupper(static_cast<unsigned char>(c))));
  if (t.size() > 5 && t.ends_with("-LOCO")) t.resize(t.size() - 5);
  if (t == "OP" || t == "1") return Scheme::OP;
  if (t == "SP" || t == "2") return Scheme::SP;
  if (t == "OT" || t == "3") return Scheme::OT;
  if (t == "ST" || t == "4") return Scheme::ST;
  throw InvalidInput("unknown scheme '" + std::string(text) + "'");
}

DensityRange::DensityRange(double d0, double d1) : d0_(d0), d1_(d1) {
  if (!std::isfinite(d0) || !std::isfinite(d1) || !(d0 < d1)) {
    throw InvalidInput("density range needs finite d0 < d1");
  }
}

BerCurve::BerCurve(Scheme scheme, std::vector<double> coefficients, Interval domain)
    : scheme_(scheme), coefficients_(std::move(coefficients)), domain_(domain) {
  if (coefficients_.empty()) throw InvalidInput("BerCurve: no coefficients");
  for (double c : coefficients_) {
    if (!std::isfinite(c)) throw InvalidInput("BerCurve: non-finite coefficient");
  }
  if (!(domain_.lo < domain_.hi)) throw InvalidInput("BerCurve: empty domain");
  derivative_ = polyder(coefficients_);
}

double BerCurve::eval(double density) const { return polyval(coefficients_, density); }

double BerCurve::eval_derivative(double density) const {
  return polyval(derivative_, density);
}

Evaluation eval(const BerCurve& curve, double density) {
  return {curve.eval(density), curve.extrapolated(density)};
}

double eval_g(const BerCurve& curve, double density, const DensityRange& range) {
  return range.width() * curve.eval_derivative(density);
}

namespace {

// Bisection on [lo, hi] where pred(lo) is false and pred(hi) is true.
template <class Pred>
double bisect(double lo, double hi, double tol, Pred pred) {
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (pred(mid)) hi = mid; else lo = mid;
  }
  return hi;
}

void check_search(Interval search, const CrossingOptions& options) {
  if (!(search.lo < search.hi)) throw InvalidInput("crossing search interval is degenerate");
  if (!(options.scan_step > 0.0) || !(options.tolerance > 0.0)) {
    throw InvalidInput("crossing scan step and tolerance must be positive");
  }
}

}  // namespace

std::optional<Crossing> threshold_crossing(const BerCurve& curve, double a, Interval search,
                                           const CrossingOptions& options) {
  check_search(search, options);
  auto above = [&](double d) { return curve.eval(d) >= a; };
  if (above(search.lo)) return Crossing{search.lo, curve.extrapolated(search.lo)};

  const auto steps = static_cast<long>(std::ceil((search.hi - search.lo) / options.scan_step));
  double prev = search.lo;
  for (long k = 1; k <= steps; ++k) {
    const double d = (k == steps) ? search.hi : search.lo + static_cast<double>(k) * options.scan_step;
    if (above(d)) {
      const double hit = bisect(prev, d, options.tolerance, above);
      return Crossing{hit, curve.extrapolated(hit)};
    }
    prev = d;
  }
  return std::nullopt;
}

std::optional<double> last_density_below(const BerCurve& curve, double a, Interval search,
                                         const CrossingOptions& options) {
  check_search(search, options);
  auto ok = [&](double d) { return curve.eval(d) <= a; };
  if (ok(search.hi)) return search.hi;
  const auto steps = static_cast<long>(std::ceil((search.hi - search.lo) / options.scan_step));
  double prev = search.hi;
  for (long k = 1; k <= steps; ++k) {
    const double d = (k == steps) ? search.lo : search.hi - static_cast<double>(k) * options.scan_step;
    if (ok(d)) {
      // ok(d) holds, ok(prev) does not; find the boundary from the ok side.
      double lo = d, hi = prev;
      while (hi - lo > options.tolerance) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        if (ok(mid)) lo = mid; else hi = mid;
      }
      return lo;
    }
    prev = d;
  }
  return std::nullopt;
}

LifetimeExtension lifetime_extension(const BerCurve& curve, double a, double d1, double search_cap,
                                     const CrossingOptions& options) {
  if (!(search_cap > d1)) throw InvalidInput("lifetime_extension: search cap must exceed d1");
  if (curve.eval(d1) >= a) {
    throw InvalidInput("lifetime_extension: curve already meets the threshold at d1");
  }
  if (auto hit = threshold_crossing(curve, a, {d1, search_cap}, options)) {
    return {hit->density, true, hit->extrapolated};
  }
  return {search_cap, false, curve.extrapolated(search_cap)};
}

}  // namespace reconf
