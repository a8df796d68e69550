#include "reconf/offline_planner.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>

#include "reconf/error.hpp"

namespace reconf {

namespace {

std::string fmt_num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

Eigen::VectorXd to_vec(const Shares& s) { return Eigen::Map<const Eigen::Vector4d>(s.data()); }

// Vertex coordinates come out of a linear solve; snap round-off around zero.
Shares clean_shares(const Eigen::VectorXd& x) {
  Shares s{};
  for (int i = 0; i < 4; ++i) s[static_cast<std::size_t>(i)] = std::abs(x(i)) < 1e-13 ? 0.0 : x(i);
  return s;
}

void check_threshold(double a) {
  if (!(a > 0.0) || !std::isfinite(a)) throw InvalidInput("BER threshold must be positive");
}

OfflineResult finish(const LpSolution& lp, const SchemeCatalog& catalog, const ShareBounds& bounds,
                     double a, const DensityRange& range) {
  OfflineResult out;
  out.plan = make_plan(clean_shares(lp.optimal_vertex.x), catalog, a, range);
  out.plan.diagnostics = bounds.diagnostics;
  out.lp = lp;
  out.bounds = bounds;
  return out;
}

}  // namespace

SchemeCatalog SchemeCatalog::loco23() {
  return {{0.9306, 0.8800, 0.8267, 0.7436}, {67.0, 17.0, 59.0, 30.0}};
}

void SchemeCatalog::validate() const {
  for (std::size_t i = 0; i < 4; ++i) {
    if (!(rates[i] > 0.0 && rates[i] <= 1.0)) throw InvalidInput("rates must lie in (0, 1]");
    if (!(adder_sizes[i] > 0.0)) throw InvalidInput("adder sizes must be positive");
  }
}

Plan make_plan(const Shares& shares, const SchemeCatalog& catalog, double a,
               const DensityRange& range) {
  Plan p;
  p.shares = shares;
  p.threshold = a;
  p.range = range;
  double cum = 0.0;
  for (std::size_t i = 0; i < 3; ++i) {
    cum += shares[i];
    p.switch_densities[i] = std::clamp(range.at_share(cum), range.d0(), range.d1());
  }
  for (std::size_t i = 0; i < 4; ++i) {
    p.capacity += catalog.rates[i] * shares[i];
    p.avg_adder += catalog.adder_sizes[i] * shares[i];
  }
  return p;
}

Polytope share_polytope(const std::array<double, 3>& u) {
  Polytope p;
  p.A = Eigen::MatrixXd::Zero(7, 4);
  p.b = Eigen::VectorXd::Zero(7);
  for (int i = 0; i < 4; ++i) p.A(i, i) = -1.0;
  // Cumulative rows: x1, x1+x2, x1+x2+x3.
  for (int k = 0; k < 3; ++k) {
    for (int j = 0; j <= k; ++j) p.A(4 + k, j) = 1.0;
    p.b(4 + k) = u[static_cast<std::size_t>(k)];
  }
  p.A_eq = Eigen::MatrixXd::Ones(1, 4);
  p.b_eq = Eigen::VectorXd::Ones(1);
  return p;
}

ShareBounds compute_bounds(const CurveSet& curves, double a, const DensityRange& range,
                           const CrossingOptions& options) {
  check_threshold(a);
  const Interval span{range.d0(), range.d1()};
  const BerCurve& last = curves[3];
  if (last.eval(range.d1()) > a) {
    const auto ok = last_density_below(last, a, span, options);
    const double at = ok ? *ok : std::nan("");
    std::string msg = "end-of-life infeasible: " + std::string(to_string(last.scheme())) +
                      " exceeds the threshold at d1=" + fmt_num(range.d1());
    msg += ok ? "; last density meeting it is " + fmt_num(at) : "; it never meets it in range";
    throw EndOfLifeInfeasible(msg, at);
  }

  ShareBounds out;
  for (std::size_t i = 0; i < 3; ++i) {
    const auto name = std::string(to_string(curves[i].scheme()));
    const auto hit = threshold_crossing(curves[i], a, span, options);
    if (!hit) {
      out.u[i] = 1.0;
      out.diagnostics.push_back(name + " stays below the threshold over the whole range");
    } else if (hit->density <= range.d0()) {
      out.u[i] = 0.0;
      out.fresh_violation[i] = true;
      out.diagnostics.push_back(name + " exceeds the threshold at d0; scheme unusable");
    } else {
      out.u[i] = std::clamp(range.share_of(hit->density), 0.0, 1.0);
    }
  }
  for (int i = 1; i >= 0; --i) {
    auto& lo = out.u[static_cast<std::size_t>(i)];
    const double hi = out.u[static_cast<std::size_t>(i) + 1];
    if (lo > hi) {
      out.diagnostics.push_back("bound u" + std::to_string(i + 1) + "=" + fmt_num(lo) +
                                " clamped to u" + std::to_string(i + 2) + "=" + fmt_num(hi));
      lo = hi;
    }
  }
  return out;
}

SharePolytope build_polytope(const CurveSet& curves, double a, const DensityRange& range,
                             const CrossingOptions& options) {
  auto bounds = compute_bounds(curves, a, range, options);
  return {share_polytope(bounds.u), std::move(bounds)};
}

std::string_view to_string(CRegion r) {
  switch (r) {
    case CRegion::AllSchemes: return "all-schemes";
    case CRegion::SkipOP: return "skip-OP";
    case CRegion::SkipOT: return "skip-OT";
    case CRegion::SkipOPOT: return "skip-OP-OT";
  }
  return "?";
}

std::string_view to_string(ZRegion r) {
  switch (r) {
    case ZRegion::Infeasible: return "infeasible";
    case ZRegion::LowerPiece: return "lower-piece";
    case ZRegion::MiddlePiece: return "middle-piece";
    case ZRegion::UpperPiece: return "upper-piece";
    case ZRegion::Nonbinding: return "nonbinding";
  }
  return "?";
}

Shares objective_r(const SchemeCatalog& catalog) { return catalog.rates; }

Shares objective_k(const SchemeCatalog& catalog, double c) {
  if (!(c > 0.0)) throw InvalidInput("scaling constant c must be positive");
  Shares k{};
  for (std::size_t i = 0; i < 4; ++i) k[i] = catalog.rates[i] - catalog.adder_sizes[i] / c;
  return k;
}

std::pair<double, double> c_region_boundaries(const SchemeCatalog& catalog) {
  const auto& r = catalog.rates;
  const auto& b = catalog.adder_sizes;
  if (r[0] == r[1] || r[2] == r[3]) {
    throw InvalidInput("c_region_boundaries: tied rates make the boundary undefined");
  }
  return {(b[0] - b[1]) / (r[0] - r[1]), (b[2] - b[3]) / (r[2] - r[3])};
}

CRegion c_region(const SchemeCatalog& catalog, double c) {
  const auto k = objective_k(catalog, c);
  constexpr double eps = 1e-12;
  const bool keep_op = k[0] >= k[1] - eps;
  const bool keep_ot = k[2] >= k[3] - eps;
  if (keep_op && keep_ot) return CRegion::AllSchemes;
  if (keep_ot) return CRegion::SkipOP;
  if (keep_op) return CRegion::SkipOT;
  return CRegion::SkipOPOT;
}

std::vector<double> z_breakpoints(const SchemeCatalog& catalog, const ShareBounds& bounds) {
  const auto vertices = enumerate_vertices(share_polytope(bounds.u));
  if (vertices.empty()) throw Infeasible("share polytope is empty");

  struct Pt { double z, cap; };
  std::vector<Pt> pts;
  for (const auto& v : vertices) pts.push_back({to_vec(catalog.adder_sizes).dot(v.x),
                                                to_vec(catalog.rates).dot(v.x)});
  std::sort(pts.begin(), pts.end(), [](const Pt& p, const Pt& q) {
    return p.z != q.z ? p.z < q.z : p.cap > q.cap;
  });

  // Upper concave chain from the cheapest vertex; it stops rising at the
  // capacity optimum.
  std::vector<Pt> hull;
  for (const auto& p : pts) {
    if (!hull.empty() && std::abs(p.z - hull.back().z) <= 1e-12) continue;
    while (hull.size() >= 2) {
      const Pt& o = hull[hull.size() - 2];
      const Pt& m = hull.back();
      const double cross = (m.z - o.z) * (p.cap - o.cap) - (m.cap - o.cap) * (p.z - o.z);
      if (cross >= -1e-15) hull.pop_back(); else break;
    }
    hull.push_back(p);
  }
  std::vector<double> out;
  double best = -1.0;
  for (const auto& h : hull) {
    if (!out.empty() && h.cap <= best + 1e-12) break;
    out.push_back(h.z);
    best = h.cap;
  }
  return out;
}

ZRegion z_region(double z, const std::vector<double>& breakpoints) {
  if (breakpoints.empty() || z < breakpoints.front() - 1e-9) return ZRegion::Infeasible;
  if (z >= breakpoints.back()) return ZRegion::Nonbinding;
  std::size_t piece = 0;
  while (piece + 2 < breakpoints.size() && z >= breakpoints[piece + 1]) ++piece;
  const std::size_t pieces = breakpoints.size() - 1;
  if (piece == 0) return ZRegion::LowerPiece;
  if (piece + 1 == pieces) return ZRegion::UpperPiece;
  return ZRegion::MiddlePiece;
}

OfflineResult solve_problem1(const SchemeCatalog& catalog, const ShareBounds& bounds, double a,
                             const DensityRange& range) {
  catalog.validate();
  check_threshold(a);
  const auto lp = solve_lp(share_polytope(bounds.u), to_vec(catalog.rates), Sense::Maximize);
  return finish(lp, catalog, bounds, a, range);
}

OfflineResult solve_problem1(const SchemeCatalog& catalog, const CurveSet& curves, double a,
                             const DensityRange& range) {
  return solve_problem1(catalog, compute_bounds(curves, a, range), a, range);
}

OfflineResult solve_problem2(const SchemeCatalog& catalog, const ShareBounds& bounds, double a,
                             const DensityRange& range, double c) {
  catalog.validate();
  check_threshold(a);
  const auto k = objective_k(catalog, c);
  const auto lp = solve_lp(share_polytope(bounds.u), to_vec(k), Sense::Maximize);
  auto out = finish(lp, catalog, bounds, a, range);
  out.region = std::string(to_string(c_region(catalog, c)));
  return out;
}

OfflineResult solve_problem2(const SchemeCatalog& catalog, const CurveSet& curves, double a,
                             const DensityRange& range, double c) {
  return solve_problem2(catalog, compute_bounds(curves, a, range), a, range, c);
}

OfflineResult solve_problem3(const SchemeCatalog& catalog, const ShareBounds& bounds, double a,
                             const DensityRange& range, double z) {
  catalog.validate();
  check_threshold(a);
  if (!std::isfinite(z)) throw InvalidInput("adder budget z must be finite");
  const auto breakpoints = z_breakpoints(catalog, bounds);
  const auto region = z_region(z, breakpoints);
  if (region == ZRegion::Infeasible) {
    throw Infeasible("infeasible: adder budget z=" + fmt_num(z) +
                     " is below the minimum achievable average adder size " +
                     fmt_num(breakpoints.front()));
  }
  auto poly = share_polytope(bounds.u);
  poly.add_inequality(to_vec(catalog.adder_sizes), z);
  const auto lp = solve_lp(poly, to_vec(catalog.rates), Sense::Maximize);
  auto out = finish(lp, catalog, bounds, a, range);
  out.region = std::string(to_string(region));
  return out;
}

OfflineResult solve_problem3(const SchemeCatalog& catalog, const CurveSet& curves, double a,
                             const DensityRange& range, double z) {
  return solve_problem3(catalog, compute_bounds(curves, a, range), a, range, z);
}

}  // namespace reconf
