#include "reconf/evaluate.hpp"

#include <cmath>

#include "reconf/error.hpp"
#include "reconf/online_planner.hpp"

namespace reconf {

Plan equal_share_baseline(const SchemeCatalog& catalog, const DensityRange& range, double a) {
  return make_plan({0.25, 0.25, 0.25, 0.25}, catalog, a, range);
}

ComparisonEntry prior_work_baseline(const SchemeCatalog& catalog) {
  ComparisonEntry e;
  e.name = "prior-work";
  e.capacity = 0.8638;
  e.avg_adder = 61.9;
  e.external = true;
  const double r_op = catalog.rates[0], r_ot = catalog.rates[2];
  if (r_op != r_ot) {
    const double op = (e.capacity - r_ot) / (r_op - r_ot);
    if (op >= 0.0 && op <= 1.0) e.shares = Shares{op, 0.0, 1.0 - op, 0.0};
  }
  return e;
}

double lifetime_end_density(const Plan& plan, const CurveSet& truth, double a,
                            const DensityRange& range, double search_cap) {
  if (!(search_cap > range.d0())) throw InvalidInput("lifetime search cap must exceed d0");
  const Scheme last = active_scheme(plan, range.d1());
  const std::size_t idx = index_of(last);
  const double start = idx == 0 ? range.d0() : plan.switch_densities[idx - 1];
  if (start >= search_cap) return search_cap;
  const auto hit = threshold_crossing(truth[idx], a, {start, search_cap});
  return hit ? hit->density : search_cap;
}

ComparisonEntry score_plan(std::string name, const Plan& plan, const CurveSet& truth, double a,
                           const DensityRange& range) {
  ComparisonEntry e;
  e.name = std::move(name);
  e.capacity = plan.capacity;
  e.avg_adder = plan.avg_adder;
  e.shares = plan.shares;
  e.violation_fraction = violation_fraction(plan, truth, a, range);
  e.lifetime_end_density = lifetime_end_density(plan, truth, a, range, range.d1() + range.width());
  return e;
}

Delta delta(const ComparisonEntry& entry, const ComparisonEntry& reference) {
  return {entry.name, reference.name, entry.capacity - reference.capacity,
          entry.avg_adder - reference.avg_adder};
}

double complexity_reduction(const ComparisonEntry& entry, const ComparisonEntry& reference) {
  return (reference.avg_adder - entry.avg_adder) / reference.avg_adder;
}

double capacity_loss(const ComparisonEntry& entry, const ComparisonEntry& reference) {
  return (reference.capacity - entry.capacity) / reference.capacity;
}

Comparison compare(std::vector<ComparisonEntry> entries, std::size_t reference) {
  if (reference >= entries.size()) throw InvalidInput("comparison reference index out of range");
  Comparison c;
  c.reference = reference;
  for (const auto& e : entries) c.deltas.push_back(delta(e, entries[reference]));
  c.entries = std::move(entries);
  return c;
}

std::vector<TraceRow> emit_trace(const Plan& plan, const CurveSet& curves,
                                 const DensityRange& range, double step) {
  if (!(step > 0.0)) throw InvalidInput("trace step must be positive");
  const auto n = std::lround(std::floor(range.width() / step + 1e-9));
  std::vector<TraceRow> rows;
  rows.reserve(static_cast<std::size_t>(n) + 2);
  for (long k = 0; k <= n; ++k) {
    const double d = range.d0() + static_cast<double>(k) * step;
    const Scheme s = active_scheme(plan, d);
    rows.push_back({d, s, curves[index_of(s)].eval(d)});
  }
  // Land on d1 exactly when the step does not divide the range.
  if (range.d0() + static_cast<double>(n) * step < range.d1() - 1e-9) {
    const Scheme s = active_scheme(plan, range.d1());
    rows.push_back({range.d1(), s, curves[index_of(s)].eval(range.d1())});
  }
  return rows;
}

}  // namespace reconf
