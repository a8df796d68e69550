#include "reconf/io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "reconf/error.hpp"

namespace reconf::io {

namespace {

std::string trim(std::string s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string field;
  while (std::getline(ss, field, ',')) out.push_back(trim(field));
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

double parse_real(const std::string& text, std::size_t line_no) {
  double v = 0.0;
  const char* begin = text.data();
  const char* end = begin + text.size();
  auto [ptr, ec] = std::from_chars(begin, end, v);
  if (ec != std::errc{} || ptr != end || !std::isfinite(v)) {
    throw InvalidInput("line " + std::to_string(line_no) + ": bad number '" + text + "'");
  }
  return v;
}

std::ifstream open_or_throw(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open '" + path + "'");
  return in;
}

// Reads rows after checking the header; calls row(fields, line_no).
template <class Row>
void read_csv(std::istream& in, const std::vector<std::string>& header, Row row) {
  std::string line;
  std::size_t line_no = 0;
  bool seen_header = false;
  while (std::getline(in, line)) {
    ++line_no;
    line = trim(line);
    if (line.empty() || line.front() == '#') continue;
    auto fields = split_csv(line);
    if (!seen_header) {
      if (fields != header) {
        std::string want;
        for (const auto& h : header) want += (want.empty() ? "" : ",") + h;
        throw InvalidInput("line " + std::to_string(line_no) + ": expected header '" + want + "'");
      }
      seen_header = true;
      continue;
    }
    if (fields.size() != header.size()) {
      throw InvalidInput("line " + std::to_string(line_no) + ": expected " +
                         std::to_string(header.size()) + " fields");
    }
    row(fields, line_no);
  }
  if (!seen_header) throw InvalidInput("CSV input is empty");
}

}  // namespace

std::vector<Sample> read_samples_csv(std::istream& in) {
  std::vector<Sample> out;
  read_csv(in, {"density", "ber"}, [&](const std::vector<std::string>& f, std::size_t n) {
    Sample s{parse_real(f[0], n), parse_real(f[1], n)};
    if (!(s.density > 0.0)) throw InvalidInput("line " + std::to_string(n) + ": density must be positive");
    if (s.ber < 0.0 || s.ber > 1.0) throw InvalidInput("line " + std::to_string(n) + ": ber outside [0,1]");
    out.push_back(s);
  });
  return out;
}

std::vector<Sample> read_samples_csv_file(const std::string& path) {
  auto in = open_or_throw(path);
  try {
    return read_samples_csv(in);
  } catch (const InvalidInput& e) {
    throw InvalidInput(path + ": " + e.what());
  }
}

std::vector<LogRecord> read_oracle_log_csv(std::istream& in) {
  std::vector<LogRecord> out;
  read_csv(in, {"scheme", "density", "ber"}, [&](const std::vector<std::string>& f, std::size_t n) {
    out.push_back({parse_scheme(f[0]), parse_real(f[1], n), parse_real(f[2], n)});
  });
  return out;
}

std::vector<LogRecord> read_oracle_log_csv_file(const std::string& path) {
  auto in = open_or_throw(path);
  try {
    return read_oracle_log_csv(in);
  } catch (const InvalidInput& e) {
    throw InvalidInput(path + ": " + e.what());
  }
}

double round_sig(double v, int digits) {
  if (v == 0.0 || !std::isfinite(v)) return v;
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*e", digits - 1, v);
  return std::strtod(buf, nullptr);
}

std::string fixed(double v, int decimals) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
  std::string s = buf;
  if (s.starts_with("-") && s.find_first_not_of("-0.") == std::string::npos) s.erase(0, 1);
  return s;
}

Json fit_report_json(std::string_view scheme, const FitReport& report) {
  Json doc;
  doc["scheme"] = std::string(scheme);
  doc["degree"] = report.degree;
  Json coef = Json::array();
  for (double c : report.coefficients) coef.push_back(round_sig(c, 15));
  doc["coefficients"] = coef;
  doc["mse"] = round_sig(report.mse, 15);
  doc["condition_flag"] = report.condition_flag;
  return doc;
}

Json curve_json(const BerCurve& curve) {
  Json doc;
  doc["scheme_id"] = std::string(to_string(curve.scheme()));
  doc["degree"] = curve.degree();
  Json coef = Json::array();
  for (double c : curve.coefficients()) coef.push_back(round_sig(c, 15));
  doc["coefficients"] = coef;
  doc["domain"] = {curve.domain().lo, curve.domain().hi};
  return doc;
}

BerCurve curve_from_json(const Json& outer) {
  // Documents written by `reconf fit` wrap the curve next to their config.
  const Json& doc = outer.contains("curve") ? outer.at("curve") : outer;
  try {
    const Scheme s = parse_scheme(doc.at("scheme_id").get<std::string>());
    auto coef = doc.at("coefficients").get<std::vector<double>>();
    const auto dom = doc.at("domain").get<std::vector<double>>();
    if (dom.size() != 2) throw InvalidInput("curve domain needs two endpoints");
    if (doc.contains("degree") && doc.at("degree").get<int>() + 1 != static_cast<int>(coef.size())) {
      throw InvalidInput("curve degree does not match its coefficient count");
    }
    return BerCurve(s, std::move(coef), {dom[0], dom[1]});
  } catch (const nlohmann::json::exception& e) {
    throw InvalidInput(std::string("malformed curve document: ") + e.what());
  }
}

BerCurve read_curve_file(const std::string& path) {
  auto in = open_or_throw(path);
  try {
    return curve_from_json(Json::parse(in));
  } catch (const nlohmann::json::exception& e) {
    throw InvalidInput(path + ": " + e.what());
  } catch (const InvalidInput& e) {
    throw InvalidInput(path + ": " + e.what());
  }
}

Json plan_json(const Plan& plan) {
  Json doc;
  doc["shares"] = plan.shares;
  doc["switch_densities"] = plan.switch_densities;
  doc["capacity"] = plan.capacity;
  doc["avg_adder"] = plan.avg_adder;
  doc["threshold"] = plan.threshold;
  doc["range"] = {plan.range.d0(), plan.range.d1()};
  Json rounded;
  Json shares = Json::array();
  for (double x : plan.shares) shares.push_back(fixed(x, 4));
  rounded["shares"] = shares;
  rounded["capacity"] = fixed(plan.capacity, 4);
  rounded["avg_adder"] = fixed(plan.avg_adder, 2);
  doc["report"] = rounded;
  doc["diagnostics"] = plan.diagnostics;
  return doc;
}

Json certificate_json(const KktCertificate& cert) {
  Json doc;
  doc["valid"] = cert.valid;
  doc["lambdas"] = cert.lambdas;
  doc["nu"] = cert.nu;
  doc["stationarity_residual"] = cert.stationarity_residual;
  doc["max_slackness_violation"] = cert.max_slackness_violation;
  doc["min_lambda"] = cert.min_lambda;
  return doc;
}

Json vertices_json(const LpSolution& lp) {
  Json arr = Json::array();
  for (const auto& v : lp.all_vertices) {
    Json row;
    std::vector<double> x(v.x.data(), v.x.data() + v.x.size());
    for (double& xi : x) {
      if (std::abs(xi) < 1e-12) xi = 0.0;  // vertex solves leave round-off zeros
    }
    row["x"] = x;
    row["objective"] = v.objective;
    row["active_set"] = v.active_set;
    arr.push_back(row);
  }
  return arr;
}

Json setup_json(const OnlineSetup& setup) {
  Json doc;
  doc["setup_id"] = setup.setup_id;
  doc["width_fraction"] = setup.width_fraction;
  doc["offset_fraction"] = setup.offset_fraction;
  doc["random_span_fraction"] = setup.random_span_fraction;
  doc["main_fractions"] = setup.main_fractions;
  doc["sample_count"] = setup.sample_count;
  doc["seed"] = setup.rng_seed;
  return doc;
}

OnlineSetup setup_from_json(const Json& doc) {
  try {
    OnlineSetup s = OnlineSetup::preset(doc.at("setup_id").get<int>(), doc.value("seed", std::uint64_t{0}));
    s.width_fraction = doc.value("width_fraction", s.width_fraction);
    s.offset_fraction = doc.value("offset_fraction", s.offset_fraction);
    s.random_span_fraction = doc.value("random_span_fraction", s.random_span_fraction);
    if (doc.contains("main_fractions")) s.main_fractions = doc.at("main_fractions").get<std::array<double, 4>>();
    s.sample_count = doc.value("sample_count", s.sample_count);
    s.validate();
    return s;
  } catch (const nlohmann::json::exception& e) {
    throw InvalidInput(std::string("malformed setup document: ") + e.what());
  }
}

OnlineSetup read_setup_file(const std::string& path) {
  auto in = open_or_throw(path);
  try {
    return setup_from_json(Json::parse(in));
  } catch (const nlohmann::json::exception& e) {
    throw InvalidInput(path + ": " + e.what());
  }
}

std::string comparison_table(const Comparison& cmp) {
  std::ostringstream os;
  char line[256];
  std::snprintf(line, sizeof line, "%-22s %7s %7s %7s %7s %9s %8s %9s %9s\n", "plan", "x1", "x2", "x3",
                "x4", "capacity", "adder", "violation", "life_end");
  os << line;
  for (const auto& e : cmp.entries) {
    auto share = [&](std::size_t i) { return e.shares ? fixed((*e.shares)[i], 4) : std::string("-"); };
    const std::string viol = e.violation_fraction ? fixed(*e.violation_fraction, 4) : "-";
    const std::string life = e.lifetime_end_density ? fixed(*e.lifetime_end_density, 4) : "-";
    const std::string name = e.name + (e.external ? " (external)" : "");
    std::snprintf(line, sizeof line, "%-22s %7s %7s %7s %7s %9s %8s %9s %9s\n", name.c_str(),
                  share(0).c_str(), share(1).c_str(), share(2).c_str(), share(3).c_str(),
                  fixed(e.capacity, 4).c_str(), fixed(e.avg_adder, 2).c_str(), viol.c_str(), life.c_str());
    os << line;
  }
  os << "\ndeltas vs " << cmp.entries[cmp.reference].name << "\n";
  for (const auto& d : cmp.deltas) {
    std::snprintf(line, sizeof line, "%-22s capacity %+.4f  adder %+.2f\n", d.name.c_str(), d.capacity,
                  d.avg_adder);
    os << line;
  }
  return os.str();
}

void write_trace_csv(std::ostream& out, const std::vector<TraceRow>& rows) {
  out << "density,scheme,ber\n";
  char line[128];
  for (const auto& r : rows) {
    std::snprintf(line, sizeof line, "%.6f,%s,%.9e\n", r.density, std::string(to_string(r.scheme)).c_str(),
                  r.ber);
    out << line;
  }
}

}  // namespace reconf::io
