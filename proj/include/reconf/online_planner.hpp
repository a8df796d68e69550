#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <vector>

#include "reconf/bermodel.hpp"
#include "reconf/curvefit.hpp"
#include "reconf/offline_planner.hpp"

namespace reconf {

// Device-status source: BER of a scheme at a density.
class BerOracle {
 public:
  virtual ~BerOracle() = default;
  virtual double query(Scheme scheme, double density) const = 0;
  virtual Interval coverage(Scheme scheme) const = 0;
};

// Ground-truth curves, optionally with multiplicative log-normal noise. The
// noise for a query depends only on (seed, scheme, density), so results do
// not depend on query order.
class CurveOracle : public BerOracle {
 public:
  explicit CurveOracle(CurveSet truth, double noise_sigma = 0.0, std::uint64_t seed = 0);
  double query(Scheme scheme, double density) const override;
  Interval coverage(Scheme scheme) const override;

 private:
  CurveSet truth_;
  double sigma_;
  std::uint64_t seed_;
};

struct LogRecord {
  Scheme scheme = Scheme::OP;
  double density = 0.0;
  double ber = 0.0;
};

// Recorded device logs; linear interpolation between logged densities.
// Queries outside a scheme's logged span throw InvalidInput.
class LogOracle : public BerOracle {
 public:
  explicit LogOracle(const std::vector<LogRecord>& records);
  double query(Scheme scheme, double density) const override;
  Interval coverage(Scheme scheme) const override;

 private:
  std::map<Scheme, std::vector<std::pair<double, double>>> series_;
};

struct TrainingRegion {
  Scheme scheme = Scheme::OP;
  Interval interval;
  int sample_count = 6;
};

// Rule parameters for one of the four online setups. Fractions are of the
// density range width.
struct OnlineSetup {
  int setup_id = 1;
  double width_fraction = 0.05;
  // Gap between a training region's end and the offline switch point.
  double offset_fraction = 0.0;
  // Setup 4: how far before its main-region end a region may end.
  double random_span_fraction = 0.20;
  // Setup 4: main-region widths.
  std::array<double, 4> main_fractions{0.25, 0.15, 0.45, 0.15};
  int sample_count = 6;
  std::uint64_t rng_seed = 0;

  static OnlineSetup preset(int setup_id, std::uint64_t seed = 0);
  // Throws InvalidInput on an unknown id, non-positive widths or negative offsets.
  void validate() const;
};

struct RegionPlan {
  std::vector<TrainingRegion> regions;
  std::vector<std::string> diagnostics;
};

// Setups 1-3 give three regions tied to the offline switch points; setup 4
// gives one randomized region per main region.
RegionPlan make_regions(const OnlineSetup& setup, const std::array<double, 3>& offline_switches,
                        const DensityRange& range);

struct OnlineResult {
  Plan plan;
  std::vector<TrainingRegion> regions;
  std::vector<FitReport> fits;
  std::vector<BerCurve> fitted;
  std::array<bool, 3> never_crossed{};
  std::array<bool, 3> clamped{};
};

// Switch i is the first crossing of fitted curve i at or after its region
// start; a missing crossing keeps the scheme to d1. Out-of-order switch
// points are raised to the previous one.
OnlineResult decide_switches(std::vector<BerCurve> fits, const std::vector<TrainingRegion>& regions,
                             const SchemeCatalog& catalog, double a, const DensityRange& range);

// Samples each region from the oracle, fits, and decides sequentially.
OnlineResult run_online(const OnlineSetup& setup, const BerOracle& oracle,
                        const SchemeCatalog& catalog, double a, const DensityRange& range,
                        const std::array<double, 3>& offline_switches, int degree = 5);

// Equally spaced samples including both endpoints.
std::vector<Sample> sample_region(const BerOracle& oracle, const TrainingRegion& region);

// The scheme in use at a density under a plan.
Scheme active_scheme(const Plan& plan, double density);

// Fraction of the range where the active scheme's true BER exceeds `a`,
// trapezoid measure on a uniform grid.
double violation_fraction(const Plan& plan, const CurveSet& truth, double a,
                          const DensityRange& range, double grid_step = 1e-4);

}  // namespace reconf
