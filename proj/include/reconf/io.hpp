#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "reconf/bermodel.hpp"
#include "reconf/curvefit.hpp"
#include "reconf/evaluate.hpp"
#include "reconf/offline_planner.hpp"
#include "reconf/online_planner.hpp"

namespace reconf::io {

using Json = nlohmann::ordered_json;

// CSV with header `density,ber`. Throws InvalidInput with the line number.
std::vector<Sample> read_samples_csv(std::istream& in);
std::vector<Sample> read_samples_csv_file(const std::string& path);

// CSV with header `scheme,density,ber`.
std::vector<LogRecord> read_oracle_log_csv(std::istream& in);
std::vector<LogRecord> read_oracle_log_csv_file(const std::string& path);

// Rounds to `digits` significant digits; the JSON writer then prints the
// shortest text that round-trips.
double round_sig(double v, int digits);

Json fit_report_json(std::string_view scheme, const FitReport& report);

Json curve_json(const BerCurve& curve);
BerCurve curve_from_json(const Json& doc);
BerCurve read_curve_file(const std::string& path);

Json plan_json(const Plan& plan);
Json certificate_json(const KktCertificate& cert);
Json vertices_json(const LpSolution& lp);

Json setup_json(const OnlineSetup& setup);
OnlineSetup setup_from_json(const Json& doc);
OnlineSetup read_setup_file(const std::string& path);

// Fixed-width table: name, shares, capacity, adder, violation, lifetime end,
// then deltas against the reference row.
std::string comparison_table(const Comparison& cmp);

void write_trace_csv(std::ostream& out, const std::vector<TraceRow>& rows);

std::string fixed(double v, int decimals);

}  // namespace reconf::io
