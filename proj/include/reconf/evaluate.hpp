#pragma once

#include <optional>
#include <string>
#include <vector>

#include "reconf/bermodel.hpp"
#include "reconf/offline_planner.hpp"

namespace reconf {

// Every scheme gets a quarter of the lifetime.
Plan equal_share_baseline(const SchemeCatalog& catalog, const DensityRange& range, double a);

struct ComparisonEntry {
  std::string name;
  double capacity = 0.0;
  double avg_adder = 0.0;
  std::optional<double> violation_fraction;
  std::optional<double> lifetime_end_density;
  std::optional<Shares> shares;
  // Cited from an external reference rather than computed here.
  bool external = false;
};

// Manually switched OP then OT design: capacity 0.8638 and average adder
// size 61.9 as cited. The OP/OT split implied by the capacity is attached.
ComparisonEntry prior_work_baseline(const SchemeCatalog& catalog);

// Density at which the scheme in use at d1 first reaches `a`, searching from
// its switch-in point up to `search_cap`; search_cap if it never does.
double lifetime_end_density(const Plan& plan, const CurveSet& truth, double a,
                            const DensityRange& range, double search_cap);

// Metrics for a plan against ground-truth curves. The lifetime search runs
// one range width past d1.
ComparisonEntry score_plan(std::string name, const Plan& plan, const CurveSet& truth, double a,
                           const DensityRange& range);

struct Delta {
  std::string name;
  std::string reference;
  double capacity = 0.0;   // entry - reference
  double avg_adder = 0.0;  // entry - reference
};

Delta delta(const ComparisonEntry& entry, const ComparisonEntry& reference);

// (reference.avg_adder - entry.avg_adder) / reference.avg_adder
double complexity_reduction(const ComparisonEntry& entry, const ComparisonEntry& reference);
// (reference.capacity - entry.capacity) / reference.capacity
double capacity_loss(const ComparisonEntry& entry, const ComparisonEntry& reference);

struct Comparison {
  std::vector<ComparisonEntry> entries;
  std::size_t reference = 0;
  std::vector<Delta> deltas;  // one per entry, against entries[reference]
};

Comparison compare(std::vector<ComparisonEntry> entries, std::size_t reference);

struct TraceRow {
  double density = 0.0;
  Scheme scheme = Scheme::OP;
  double ber = 0.0;
};

// Rows d0, d0 + step, ..., d1 with the active scheme and its BER.
std::vector<TraceRow> emit_trace(const Plan& plan, const CurveSet& curves,
                                 const DensityRange& range, double step = 1e-3);

}  // namespace reconf
