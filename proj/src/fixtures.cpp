#include <string>

#include "reconf/bermodel.hpp"
#include "reconf/error.hpp"

namespace reconf {

namespace {

constexpr Interval kDomain{0.8, 1.5};

// Degree-7 middle-track fits over [0.8, 1.5], verbatim.
CurveSet offline_mt() {
  return {
      BerCurve(Scheme::OP, {-0.100, 2.082, -10.710, 25.300, -32.100, 22.620, -8.348, 1.258}, kDomain),
      BerCurve(Scheme::SP, {-0.516, 3.952, -12.800, 22.660, -23.610, 14.460, -4.807, 0.670}, kDomain),
      BerCurve(Scheme::OT, {-0.009, 0.076, -0.252, 0.446, -0.462, 0.281, -0.093, 0.013}, kDomain),
      BerCurve(Scheme::ST, {0.112, -0.837, 2.486, -4.048, 3.901, -2.222, 0.6925, -0.091}, kDomain),
  };
}

// Degree-5 fits from the randomized online setup. The table has no ST row.
CurveSet online_setup4() {
  auto set = offline_mt();
  set[0] = BerCurve(Scheme::OP, {-0.276, 1.463, -2.905, 2.783, -1.304, 0.241}, kDomain);
  set[1] = BerCurve(Scheme::SP, {0.150, -0.866, 1.992, -2.256, 1.252, -0.272}, kDomain);
  set[2] = BerCurve(Scheme::OT, {0.019, -0.090, 0.172, -0.167, 0.082, -0.016}, kDomain);
  return set;
}

}  // namespace

std::vector<std::string> fixture_names() { return {"paper-offline-mt", "paper-online-setup4"}; }

CurveSet fixture(std::string_view name) {
  if (name == "paper-offline-mt") return offline_mt();
  if (name == "paper-online-setup4") return online_setup4();
  throw InvalidInput("unknown fixture '" + std::string(name) + "'");
}

std::vector<Scheme> fixture_schemes(std::string_view name) {
  if (name == "paper-offline-mt") return {Scheme::OP, Scheme::SP, Scheme::OT, Scheme::ST};
  if (name == "paper-online-setup4") return {Scheme::OP, Scheme::SP, Scheme::OT};
  throw InvalidInput("unknown fixture '" + std::string(name) + "'");
}

}  // namespace reconf
