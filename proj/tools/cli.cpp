#include "cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>

#include "reconf/error.hpp"
#include "reconf/evaluate.hpp"
#include "reconf/io.hpp"
#include "reconf/offline_planner.hpp"
#include "reconf/online_planner.hpp"

namespace reconf::cli {

namespace {

using io::Json;

// Where BER curves come from: a built-in fixture, curve documents, or raw
// samples fitted on the fly. Exactly one source per scheme.
struct CurveSource {
  std::string fixture;
  std::vector<std::string> curve_files;  // SCHEME=path
  std::vector<std::string> data_files;   // SCHEME=path
  int degree = 7;

  bool empty() const { return fixture.empty() && curve_files.empty() && data_files.empty(); }
};

struct Common {
  double threshold = 1e-3;
  double d0 = 0.8;
  double d1 = 1.5;
  std::string out_dir;
  CurveSource source;
};

void add_common(CLI::App* cmd, Common& c) {
  cmd->add_option("-a,--threshold", c.threshold, "BER threshold a")->capture_default_str();
  cmd->add_option("--d0", c.d0, "start-of-life density")->capture_default_str();
  cmd->add_option("--d1", c.d1, "end-of-life density")->capture_default_str();
  cmd->add_option("-o,--out", c.out_dir, "output directory (default: stdout)");
}

void add_source(CLI::App* cmd, CurveSource& s, int default_degree) {
  s.degree = default_degree;
  cmd->add_option("--fixture", s.fixture, "built-in curve set (paper-offline-mt, paper-online-setup4)");
  cmd->add_option("--curve", s.curve_files, "SCHEME=curve.json, repeatable");
  cmd->add_option("--data", s.data_files, "SCHEME=samples.csv, repeatable");
  cmd->add_option("--degree", s.degree, "fit degree for --data")->capture_default_str();
}

std::pair<Scheme, std::string> split_assignment(const std::string& text) {
  const auto eq = text.find('=');
  if (eq == std::string::npos) throw InvalidInput("expected SCHEME=path, got '" + text + "'");
  return {parse_scheme(text.substr(0, eq)), text.substr(eq + 1)};
}

Json source_json(const CurveSource& s) {
  Json j;
  if (!s.fixture.empty()) j["fixture"] = s.fixture;
  if (!s.curve_files.empty()) j["curve"] = s.curve_files;
  if (!s.data_files.empty()) {
    j["data"] = s.data_files;
    j["degree"] = s.degree;
  }
  return j;
}

CurveSet load_curves(const CurveSource& s, const DensityRange& range) {
  std::map<Scheme, BerCurve> found;
  auto put = [&](Scheme sch, BerCurve c) {
    if (found.count(sch)) {
      throw InvalidInput("scheme " + std::string(to_string(sch)) + " has more than one data source");
    }
    found.emplace(sch, std::move(c));
  };
  if (!s.fixture.empty()) {
    const auto set = fixture(s.fixture);
    for (Scheme sch : kSchemeOrder) put(sch, set[index_of(sch)]);
  }
  for (const auto& item : s.curve_files) {
    auto [sch, path] = split_assignment(item);
    auto c = io::read_curve_file(path);
    if (c.scheme() != sch) throw InvalidInput(path + ": curve is for " + std::string(to_string(c.scheme())));
    put(sch, std::move(c));
  }
  for (const auto& item : s.data_files) {
    auto [sch, path] = split_assignment(item);
    const auto samples = io::read_samples_csv_file(path);
    const auto rep = fit_polynomial(samples, s.degree);
    put(sch, BerCurve(sch, rep.coefficients, {range.d0(), range.d1()}));
  }
  CurveSet out;
  for (Scheme sch : kSchemeOrder) {
    auto it = found.find(sch);
    if (it == found.end()) throw InvalidInput("no BER curve for scheme " + std::string(to_string(sch)));
    out[index_of(sch)] = it->second;
  }
  return out;
}

Json common_config(const std::string& command, const Common& c) {
  Json j;
  j["command"] = command;
  j["threshold"] = c.threshold;
  j["range"] = {c.d0, c.d1};
  return j;
}

// Writes to out_dir/name, or to `out` under a banner when no directory is set.
void emit(const Common& c, const std::string& name, const std::string& text, std::ostream& out) {
  if (c.out_dir.empty()) {
    out << text;
    if (!text.empty() && text.back() != '\n') out << '\n';
    return;
  }
  std::filesystem::create_directories(c.out_dir);
  const auto path = std::filesystem::path(c.out_dir) / name;
  std::ofstream f(path);
  if (!f) throw InvalidInput("cannot write '" + path.string() + "'");
  f << text;
  if (!text.empty() && text.back() != '\n') f << '\n';
}

std::string dump(const Json& j) { return j.dump(2); }

// ---- fit ----

struct FitArgs {
  Common common;
  std::string scheme;
  std::string data;
  std::vector<std::string> data_multi;
  std::string fixture;
  std::vector<int> degrees{7};
};

int cmd_fit(const FitArgs& a, std::ostream& out) {
  if (!a.fixture.empty()) {
    if (!a.data.empty() || !a.data_multi.empty()) throw InvalidInput("use either --fixture or --data");
    const auto set = fixture(a.fixture);
    for (Scheme sch : fixture_schemes(a.fixture)) {
      Json doc;
      doc["config"] = common_config("fit", a.common);
      doc["config"]["fixture"] = a.fixture;
      doc["curve"] = io::curve_json(set[index_of(sch)]);
      emit(a.common, "curve_" + std::string(to_string(sch)) + ".json", dump(doc), out);
    }
    return kOk;
  }

  std::vector<std::pair<Scheme, std::string>> jobs;
  if (!a.data.empty()) {
    if (!a.scheme.empty()) jobs.emplace_back(parse_scheme(a.scheme), a.data);
    else if (a.data.find('=') != std::string::npos) jobs.push_back(split_assignment(a.data));
    else throw InvalidInput("--data without SCHEME= needs --scheme");
  }
  for (const auto& item : a.data_multi) jobs.push_back(split_assignment(item));
  if (jobs.empty()) throw InvalidInput("fit needs --data or --fixture");

  for (const auto& [sch, path] : jobs) {
    const auto samples = io::read_samples_csv_file(path);
    const auto ranked = rank_degrees(samples, a.degrees);
    Json doc;
    doc["config"] = common_config("fit", a.common);
    doc["config"]["scheme"] = std::string(to_string(sch));
    doc["config"]["data"] = path;
    doc["config"]["degrees"] = a.degrees;
    Json reports = Json::array();
    for (const auto& r : ranked) reports.push_back(io::fit_report_json(to_string(sch), r));
    doc["reports"] = reports;
    emit(a.common, "fit_" + std::string(to_string(sch)) + ".json", dump(doc), out);
  }
  return kOk;
}

// ---- solve / compare / trace ----

struct SolveArgs {
  Common common;
  int problem = 1;
  std::optional<double> c;
  std::optional<double> z;
};

OfflineResult run_problem(const SolveArgs& a, const CurveSet& curves, const DensityRange& range,
                          const SchemeCatalog& catalog) {
  switch (a.problem) {
    case 1:
      return solve_problem1(catalog, curves, a.common.threshold, range);
    case 2:
      if (!a.c) throw InvalidInput("problem 2 needs --c");
      return solve_problem2(catalog, curves, a.common.threshold, range, *a.c);
    case 3:
      if (!a.z) throw InvalidInput("problem 3 needs --z");
      return solve_problem3(catalog, curves, a.common.threshold, range, *a.z);
    default:
      throw InvalidInput("--problem must be 1, 2 or 3");
  }
}

Json solve_config(const std::string& command, const SolveArgs& a) {
  Json j = common_config(command, a.common);
  j["source"] = source_json(a.common.source);
  j["problem"] = a.problem;
  if (a.c) j["c"] = *a.c;
  if (a.z) j["z"] = *a.z;
  return j;
}

Comparison standard_comparison(const Plan& plan, const std::string& name, const CurveSet& curves,
                               const SchemeCatalog& catalog, const DensityRange& range, double a,
                               std::optional<double> z_extra) {
  std::vector<ComparisonEntry> entries;
  entries.push_back(score_plan(name, plan, curves, a, range));
  entries.push_back(score_plan("equal-share", equal_share_baseline(catalog, range, a), curves, a, range));
  if (z_extra) {
    try {
      const auto p3 = solve_problem3(catalog, curves, a, range, *z_extra);
      entries.push_back(score_plan("problem-3 z=" + io::fixed(*z_extra, 2), p3.plan, curves, a, range));
    } catch (const Infeasible&) {
    }
  }
  entries.push_back(prior_work_baseline(catalog));
  return compare(std::move(entries), 0);
}

int cmd_solve(const SolveArgs& a, std::ostream& out) {
  const DensityRange range(a.common.d0, a.common.d1);
  const auto catalog = SchemeCatalog::loco23();
  const auto curves = load_curves(a.common.source, range);
  const auto res = run_problem(a, curves, range, catalog);

  Json doc;
  doc["config"] = solve_config("solve", a);
  doc["plan"] = io::plan_json(res.plan);
  if (!res.region.empty()) doc["region"] = res.region;
  doc["bounds"] = res.bounds.u;
  if (a.problem == 2) {
    const auto [c12, c34] = c_region_boundaries(catalog);
    doc["c_boundaries"] = {c12, c34};
  }
  if (a.problem == 3) doc["z_breakpoints"] = z_breakpoints(catalog, res.bounds);
  doc["vertices"] = io::vertices_json(res.lp);

  const Shares objective = a.problem == 2 ? objective_k(catalog, *a.c) : objective_r(catalog);
  KktOptions kopt;
  if (a.problem == 3) kopt.adder_budget = *a.z;
  try {
    doc["certificate"] = io::certificate_json(
        kkt_verify(res.plan, objective, catalog, curves, a.common.threshold, range, kopt));
  } catch (const std::exception& e) {
    doc["certificate"] = {{"valid", false}, {"error", e.what()}};
  }
  emit(a.common, "plan.json", dump(doc), out);

  const auto cmp = standard_comparison(res.plan, "problem-" + std::to_string(a.problem), curves, catalog,
                                       range, a.common.threshold, std::nullopt);
  std::string table = "# " + solve_config("solve", a).dump() + "\n" + io::comparison_table(cmp);
  emit(a.common, "comparison.txt", table, out);
  return kOk;
}

struct CompareArgs {
  Common common;
  std::optional<double> z;
};

int cmd_compare(const CompareArgs& a, std::ostream& out) {
  const DensityRange range(a.common.d0, a.common.d1);
  const auto catalog = SchemeCatalog::loco23();
  const auto curves = load_curves(a.common.source, range);
  const auto p1 = solve_problem1(catalog, curves, a.common.threshold, range);
  const auto cmp = standard_comparison(p1.plan, "problem-1", curves, catalog, range, a.common.threshold, a.z);

  Json config = common_config("compare", a.common);
  config["source"] = source_json(a.common.source);
  if (a.z) config["z"] = *a.z;
  std::ostringstream os;
  os << "# " << config.dump() << "\n" << io::comparison_table(cmp);
  const auto prior = prior_work_baseline(catalog);
  os << "\nvs prior-work: complexity reduction " << io::fixed(100.0 * complexity_reduction(cmp.entries[0], prior), 2)
     << "%, capacity loss " << io::fixed(100.0 * capacity_loss(cmp.entries[0], prior), 2) << "%\n";
  emit(a.common, "comparison.txt", os.str(), out);
  return kOk;
}

struct TraceArgs {
  SolveArgs solve;
  bool equal_share = false;
  double step = 1e-3;
};

int cmd_trace(const TraceArgs& a, std::ostream& out) {
  const auto& common = a.solve.common;
  const DensityRange range(common.d0, common.d1);
  const auto catalog = SchemeCatalog::loco23();
  const auto curves = load_curves(common.source, range);
  const Plan plan = a.equal_share ? equal_share_baseline(catalog, range, common.threshold)
                                  : run_problem(a.solve, curves, range, catalog).plan;
  std::ostringstream os;
  Json config = solve_config("trace", a.solve);
  config["equal_share"] = a.equal_share;
  config["step"] = a.step;
  os << "# " << config.dump() << "\n";
  io::write_trace_csv(os, emit_trace(plan, curves, range, a.step));
  emit(common, "trace.csv", os.str(), out);
  return kOk;
}

// ---- online ----

struct OnlineArgs {
  Common common;
  int setup = 0;
  std::string setup_file;
  std::uint64_t seed = 0;
  std::string oracle_log;
  std::string fits;
  std::vector<double> offline_switches;
  double noise_sigma = 0.0;
  int degree = 5;
};

int cmd_online(OnlineArgs a, std::ostream& out) {
  const DensityRange range(a.common.d0, a.common.d1);
  const auto catalog = SchemeCatalog::loco23();
  const double thr = a.common.threshold;

  OnlineSetup setup;
  if (!a.setup_file.empty()) {
    setup = io::read_setup_file(a.setup_file);
  } else {
    if (a.setup < 1 || a.setup > 4) throw InvalidInput("--setup must be 1..4");
    setup = OnlineSetup::preset(a.setup, a.seed);
  }

  // Ground truth doubles as the oracle and as the reference for violations.
  if (a.common.source.empty()) a.common.source.fixture = "paper-offline-mt";
  const auto truth = load_curves(a.common.source, range);

  std::array<double, 3> switches{};
  if (!a.offline_switches.empty()) {
    if (a.offline_switches.size() != 3) throw InvalidInput("--offline-switches takes three densities");
    std::copy(a.offline_switches.begin(), a.offline_switches.end(), switches.begin());
  } else if (setup.setup_id <= 3) {
    switches = solve_problem1(catalog, truth, thr, range).plan.switch_densities;
  }

  OnlineResult res;
  if (!a.fits.empty()) {
    const auto set = fixture(a.fits);
    const auto regions = make_regions(setup, switches, range);
    std::vector<BerCurve> fits(set.begin(), set.begin() + 3);
    res = decide_switches(std::move(fits), regions.regions, catalog, thr, range);
  } else if (!a.oracle_log.empty()) {
    const LogOracle oracle(io::read_oracle_log_csv_file(a.oracle_log));
    res = run_online(setup, oracle, catalog, thr, range, switches, a.degree);
  } else {
    const CurveOracle oracle(truth, a.noise_sigma, setup.rng_seed);
    res = run_online(setup, oracle, catalog, thr, range, switches, a.degree);
  }

  Json config = common_config("online", a.common);
  config["setup"] = io::setup_json(setup);
  config["truth"] = source_json(a.common.source);
  if (!a.fits.empty()) config["fits"] = a.fits;
  if (!a.oracle_log.empty()) config["oracle_log"] = a.oracle_log;
  config["noise_sigma"] = a.noise_sigma;
  config["degree"] = a.degree;
  config["offline_switches"] = switches;

  Json doc;
  doc["config"] = config;
  doc["plan"] = io::plan_json(res.plan);
  Json regions = Json::array();
  for (std::size_t i = 0; i < res.regions.size(); ++i) {
    Json r;
    r["scheme"] = std::string(to_string(res.regions[i].scheme));
    r["interval"] = {res.regions[i].interval.lo, res.regions[i].interval.hi};
    if (i < res.fits.size()) r["fit"] = io::fit_report_json(to_string(res.regions[i].scheme), res.fits[i]);
    regions.push_back(r);
  }
  doc["regions"] = regions;
  doc["never_crossed"] = res.never_crossed;
  doc["violation_fraction"] = violation_fraction(res.plan, truth, thr, range);
  emit(a.common, "online_plan.json", dump(doc), out);
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Coding-scheme reconfiguration planner", "reconf"};
  app.require_subcommand(1);

  FitArgs fit;
  auto* fit_cmd = app.add_subcommand("fit", "fit BER polynomials and rank degrees");
  add_common(fit_cmd, fit.common);
  fit_cmd->add_option("--scheme", fit.scheme, "scheme for a single --data file");
  fit_cmd->add_option("--data", fit.data, "samples CSV (density,ber)");
  fit_cmd->add_option("--data-for", fit.data_multi, "SCHEME=samples.csv, repeatable");
  fit_cmd->add_option("--fixture", fit.fixture, "echo a built-in curve set");
  fit_cmd->add_option("--degrees", fit.degrees, "candidate degrees")->delimiter(',')->capture_default_str();

  SolveArgs solve;
  auto* solve_cmd = app.add_subcommand("solve", "solve an offline planning problem");
  add_common(solve_cmd, solve.common);
  add_source(solve_cmd, solve.common.source, 7);
  solve_cmd->add_option("--problem", solve.problem, "1, 2 or 3")->capture_default_str();
  solve_cmd->add_option("--c", solve.c, "complexity scaling constant (problem 2)");
  solve_cmd->add_option("--z", solve.z, "average adder budget (problem 3)");

  OnlineArgs online;
  auto* online_cmd = app.add_subcommand("online", "simulate an online setup");
  add_common(online_cmd, online.common);
  add_source(online_cmd, online.common.source, 7);
  online_cmd->add_option("--setup", online.setup, "setup id 1..4");
  online_cmd->add_option("--setup-file", online.setup_file, "setup configuration document");
  online_cmd->add_option("--seed", online.seed, "region randomization and noise seed")->capture_default_str();
  online_cmd->add_option("--oracle", online.oracle_log, "device log CSV (scheme,density,ber)");
  online_cmd->add_option("--fits", online.fits, "use a built-in fitted curve set instead of sampling");
  online_cmd->add_option("--offline-switches", online.offline_switches, "three densities")->delimiter(',');
  online_cmd->add_option("--noise-sigma", online.noise_sigma, "log-normal oracle noise")->capture_default_str();
  online_cmd->add_option("--fit-degree", online.degree, "online fit degree")->capture_default_str();

  CompareArgs cmp;
  auto* cmp_cmd = app.add_subcommand("compare", "compare problem 1 with the baselines");
  add_common(cmp_cmd, cmp.common);
  add_source(cmp_cmd, cmp.common.source, 7);
  cmp_cmd->add_option("--z", cmp.z, "also include problem 3 at this budget");

  TraceArgs trace;
  auto* trace_cmd = app.add_subcommand("trace", "emit density,scheme,ber rows for a plan");
  add_common(trace_cmd, trace.solve.common);
  add_source(trace_cmd, trace.solve.common.source, 7);
  trace_cmd->add_option("--problem", trace.solve.problem, "1, 2 or 3")->capture_default_str();
  trace_cmd->add_option("--c", trace.solve.c, "problem 2 constant");
  trace_cmd->add_option("--z", trace.solve.z, "problem 3 budget");
  trace_cmd->add_flag("--equal-share", trace.equal_share, "trace the equal-share baseline");
  trace_cmd->add_option("--step", trace.step, "density step")->capture_default_str();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return kUsage;
  }

  try {
    if (*fit_cmd) return cmd_fit(fit, out);
    if (*solve_cmd) return cmd_solve(solve, out);
    if (*online_cmd) return cmd_online(online, out);
    if (*cmp_cmd) return cmd_compare(cmp, out);
    if (*trace_cmd) return cmd_trace(trace, out);
  } catch (const Infeasible& e) {
    err << "infeasible: " << e.what() << "\n";
    return kInfeasible;
  } catch (const InvalidInput& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}

}  // namespace reconf::cli
