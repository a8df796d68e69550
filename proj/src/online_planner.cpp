#include "reconf/online_planner.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numeric>
#include <random>
#include <string>

#include "reconf/error.hpp"

namespace reconf {

namespace {

std::uint64_t splitmix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::string fmt_num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

}  // namespace

CurveOracle::CurveOracle(CurveSet truth, double noise_sigma, std::uint64_t seed)
    : truth_(std::move(truth)), sigma_(noise_sigma), seed_(seed) {
  if (!(noise_sigma >= 0.0)) throw InvalidInput("noise sigma must be non-negative");
}

double CurveOracle::query(Scheme scheme, double density) const {
  const double ber = truth_[index_of(scheme)].eval(density);
  if (sigma_ == 0.0) return ber;
  std::uint64_t key = splitmix64(seed_);
  key = splitmix64(key ^ static_cast<std::uint64_t>(index_of(scheme)));
  key = splitmix64(key ^ std::bit_cast<std::uint64_t>(density));
  std::mt19937_64 gen(key);
  std::normal_distribution<double> normal(0.0, sigma_);
  return ber * std::exp(normal(gen));
}

Interval CurveOracle::coverage(Scheme scheme) const { return truth_[index_of(scheme)].domain(); }

LogOracle::LogOracle(const std::vector<LogRecord>& records) {
  for (const auto& r : records) {
    if (!std::isfinite(r.density) || !std::isfinite(r.ber)) {
      throw InvalidInput("oracle log has a non-finite value");
    }
    series_[r.scheme].emplace_back(r.density, r.ber);
  }
  for (auto& [scheme, pts] : series_) {
    std::sort(pts.begin(), pts.end());
    for (std::size_t i = 1; i < pts.size(); ++i) {
      if (pts[i].first == pts[i - 1].first && pts[i].second != pts[i - 1].second) {
        throw InvalidInput("oracle log has conflicting entries for " +
                           std::string(to_string(scheme)) + " at density " + fmt_num(pts[i].first));
      }
    }
  }
}

Interval LogOracle::coverage(Scheme scheme) const {
  auto it = series_.find(scheme);
  if (it == series_.end() || it->second.empty()) return {0.0, 0.0};
  return {it->second.front().first, it->second.back().first};
}

double LogOracle::query(Scheme scheme, double density) const {
  auto it = series_.find(scheme);
  if (it == series_.end() || it->second.empty()) {
    throw InvalidInput("oracle log has no data for " + std::string(to_string(scheme)));
  }
  const auto& pts = it->second;
  const double tol = 1e-12;
  if (density < pts.front().first - tol || density > pts.back().first + tol) {
    throw InvalidInput("oracle log does not cover " + std::string(to_string(scheme)) +
                       " at density " + fmt_num(density));
  }
  auto hi = std::lower_bound(pts.begin(), pts.end(), std::make_pair(density, -std::numeric_limits<double>::infinity()));
  if (hi == pts.end()) return pts.back().second;
  if (std::abs(hi->first - density) <= tol || hi == pts.begin()) return hi->second;
  auto lo = std::prev(hi);
  const double t = (density - lo->first) / (hi->first - lo->first);
  return lo->second + t * (hi->second - lo->second);
}

OnlineSetup OnlineSetup::preset(int setup_id, std::uint64_t seed) {
  OnlineSetup s;
  s.setup_id = setup_id;
  s.rng_seed = seed;
  switch (setup_id) {
    case 1: s.width_fraction = 0.05; s.offset_fraction = 0.0; break;
    case 2: s.width_fraction = 0.05; s.offset_fraction = 0.05; break;
    case 3: s.width_fraction = 0.10; s.offset_fraction = 0.05; break;
    case 4: s.width_fraction = 0.10; s.offset_fraction = 0.0; break;
    default: throw InvalidInput("online setup id must be 1..4, got " + std::to_string(setup_id));
  }
  return s;
}

void OnlineSetup::validate() const {
  if (setup_id < 1 || setup_id > 4) {
    throw InvalidInput("online setup id must be 1..4, got " + std::to_string(setup_id));
  }
  if (!(width_fraction > 0.0)) throw InvalidInput("training region width must be positive");
  if (!(offset_fraction >= 0.0)) throw InvalidInput("training region offset must be non-negative");
  if (!(random_span_fraction >= 0.0)) throw InvalidInput("randomization span must be non-negative");
  if (sample_count < 1) throw InvalidInput("sample count must be at least 1");
  if (setup_id == 4) {
    for (double f : main_fractions) {
      if (!(f > 0.0)) throw InvalidInput("main region widths must be positive");
    }
  }
}

RegionPlan make_regions(const OnlineSetup& setup, const std::array<double, 3>& offline_switches,
                        const DensityRange& range) {
  setup.validate();
  const double span = range.width();
  RegionPlan out;

  auto push = [&](Scheme scheme, double lo, double hi) {
    const auto name = std::string(to_string(scheme));
    if (hi <= range.d0()) {
      // The offline plan skips this scheme; train right after d0 instead.
      out.diagnostics.push_back(name + " training region moved to the start of the range");
      hi = range.d0() + (hi - lo);
      lo = range.d0();
    }
    if (lo < range.d0() || hi > range.d1()) {
      out.diagnostics.push_back(name + " training region [" + fmt_num(lo) + ", " + fmt_num(hi) +
                                "] clipped to the density range");
      lo = std::clamp(lo, range.d0(), range.d1());
      hi = std::clamp(hi, range.d0(), range.d1());
    }
    if (!(hi > lo)) throw InvalidInput(name + " training region has zero width");
    out.regions.push_back({scheme, {lo, hi}, setup.sample_count});
  };

  if (setup.setup_id <= 3) {
    for (std::size_t i = 0; i < 3; ++i) {
      const double s = offline_switches[i];
      if (!(s >= range.d0() && s <= range.d1())) {
        throw InvalidInput("offline switch point " + fmt_num(s) + " is not inside the range");
      }
      const double end = s - setup.offset_fraction * span;
      push(kSchemeOrder[i], end - setup.width_fraction * span, end);
    }
    return out;
  }

  std::mt19937_64 gen(setup.rng_seed);
  std::uniform_real_distribution<double> back(0.0, setup.random_span_fraction * span);
  double main_end = range.d0();
  for (std::size_t i = 0; i < 4; ++i) {
    main_end += setup.main_fractions[i] * span;
    const double end = main_end - back(gen);
    push(kSchemeOrder[i], end - setup.width_fraction * span, end);
  }
  return out;
}

std::vector<Sample> sample_region(const BerOracle& oracle, const TrainingRegion& region) {
  const auto [lo, hi] = region.interval;
  const int n = region.sample_count;
  std::vector<Sample> out;
  out.reserve(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) {
    const double d = n == 1 ? lo : (k == n - 1 ? hi : lo + (hi - lo) * k / (n - 1));
    out.push_back({d, oracle.query(region.scheme, d)});
  }
  return out;
}

OnlineResult decide_switches(std::vector<BerCurve> fits, const std::vector<TrainingRegion>& regions,
                             const SchemeCatalog& catalog, double a, const DensityRange& range) {
  if (fits.size() < 3 || regions.size() < 3) {
    throw InvalidInput("decide_switches needs fits and regions for OP, SP and OT");
  }
  OnlineResult out;
  out.regions = regions;
  std::array<double, 3> sw{};
  std::vector<std::string> notes;
  for (std::size_t i = 0; i < 3; ++i) {
    const auto name = std::string(to_string(kSchemeOrder[i]));
    const double start = std::clamp(regions[i].interval.lo, range.d0(), range.d1());
    std::optional<Crossing> hit;
    if (start < range.d1()) hit = threshold_crossing(fits[i], a, {start, range.d1()});
    if (hit) {
      sw[i] = hit->density;
    } else {
      sw[i] = range.d1();
      out.never_crossed[i] = true;
      notes.push_back(name + " fit never reaches the threshold; kept to d1");
    }
    if (i > 0 && sw[i] < sw[i - 1]) {
      notes.push_back(name + " switch " + fmt_num(sw[i]) + " precedes the previous switch; raised to " +
                      fmt_num(sw[i - 1]));
      sw[i] = sw[i - 1];
      out.clamped[i] = true;
    }
  }
  Shares x{};
  double prev = 0.0;
  for (std::size_t i = 0; i < 3; ++i) {
    const double t = std::clamp(range.share_of(sw[i]), 0.0, 1.0);
    x[i] = t - prev;
    prev = t;
  }
  x[3] = 1.0 - prev;
  out.plan = make_plan(x, catalog, a, range);
  out.plan.diagnostics = std::move(notes);
  out.fitted = std::move(fits);
  return out;
}

OnlineResult run_online(const OnlineSetup& setup, const BerOracle& oracle,
                        const SchemeCatalog& catalog, double a, const DensityRange& range,
                        const std::array<double, 3>& offline_switches, int degree) {
  auto regions = make_regions(setup, offline_switches, range);
  std::vector<FitReport> reports;
  std::vector<BerCurve> fits;
  for (const auto& region : regions.regions) {
    const auto cover = oracle.coverage(region.scheme);
    if (region.interval.lo < cover.lo - 1e-12 || region.interval.hi > cover.hi + 1e-12) {
      throw InvalidInput("oracle does not cover the " + std::string(to_string(region.scheme)) +
                         " training region");
    }
    const auto samples = sample_region(oracle, region);
    auto report = fit_polynomial(samples, degree);
    fits.emplace_back(region.scheme, report.coefficients, region.interval);
    reports.push_back(std::move(report));
  }
  auto out = decide_switches(std::move(fits), regions.regions, catalog, a, range);
  out.fits = std::move(reports);
  out.plan.diagnostics.insert(out.plan.diagnostics.begin(), regions.diagnostics.begin(),
                              regions.diagnostics.end());
  return out;
}

Scheme active_scheme(const Plan& plan, double density) {
  for (std::size_t i = 0; i < 3; ++i) {
    if (density < plan.switch_densities[i]) return kSchemeOrder[i];
  }
  return Scheme::ST;
}

double violation_fraction(const Plan& plan, const CurveSet& truth, double a,
                          const DensityRange& range, double grid_step) {
  if (!(grid_step > 0.0)) throw InvalidInput("grid step must be positive");
  const auto n = std::max<long>(1, std::lround(range.width() / grid_step));
  auto violated = [&](long k) {
    const double d = k == n ? range.d1() : range.d0() + range.width() * static_cast<double>(k) / n;
    return truth[index_of(active_scheme(plan, d))].eval(d) > a ? 1.0 : 0.0;
  };
  double acc = 0.0;
  double prev = violated(0);
  for (long k = 1; k <= n; ++k) {
    const double cur = violated(k);
    acc += 0.5 * (prev + cur);
    prev = cur;
  }
  return acc / static_cast<double>(n);
}

}  // namespace reconf
