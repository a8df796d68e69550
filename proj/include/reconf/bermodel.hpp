#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace reconf {

// Coding schemes in their fixed reconfiguration order.
enum class Scheme { OP = 0, SP = 1, OT = 2, ST = 3 };

inline constexpr std::array<Scheme, 4> kSchemeOrder = {Scheme::OP, Scheme::SP, Scheme::OT,
                                                       Scheme::ST};

std::string_view to_string(Scheme s);
// Accepts "OP", "OP-LOCO" and friends, case-insensitive. Throws InvalidInput.
Scheme parse_scheme(std::string_view text);
inline std::size_t index_of(Scheme s) { return static_cast<std::size_t>(s); }

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
};

// Density span of the device lifetime, d0 (fresh) to d1 (end of life).
class DensityRange {
 public:
  DensityRange() = default;
  // Throws InvalidInput unless d0 < d1, both finite.
  DensityRange(double d0, double d1);

  double d0() const { return d0_; }
  double d1() const { return d1_; }
  double width() const { return d1_ - d0_; }
  // Density reached after a cumulative share t of the lifetime.
  double at_share(double t) const { return d0_ + t * (d1_ - d0_); }
  double share_of(double density) const { return (density - d0_) / (d1_ - d0_); }

 private:
  double d0_ = 0.8;
  double d1_ = 1.5;
};

// A fitted BER-vs-density polynomial for one scheme.
class BerCurve {
 public:
  BerCurve() = default;
  // Coefficients highest power first. Throws InvalidInput on an empty or
  // non-finite coefficient list or a degenerate domain.
  BerCurve(Scheme scheme, std::vector<double> coefficients, Interval domain);

  Scheme scheme() const { return scheme_; }
  int degree() const { return static_cast<int>(coefficients_.size()) - 1; }
  const std::vector<double>& coefficients() const { return coefficients_; }
  const std::vector<double>& derivative() const { return derivative_; }
  Interval domain() const { return domain_; }

  double eval(double density) const;
  double eval_derivative(double density) const;
  bool extrapolated(double density) const {
    return density < domain_.lo || density > domain_.hi;
  }

 private:
  Scheme scheme_ = Scheme::OP;
  std::vector<double> coefficients_{0.0};
  std::vector<double> derivative_{0.0};
  Interval domain_{0.8, 1.5};
};

// A value together with whether it needed evaluation outside the fit domain.
struct Evaluation {
  double value = 0.0;
  bool extrapolated = false;
};

Evaluation eval(const BerCurve& curve, double density);

// Derivative with respect to a normalized share: (d1 - d0) * f'(density).
double eval_g(const BerCurve& curve, double density, const DensityRange& range);

struct CrossingOptions {
  double scan_step = 1e-4;
  double tolerance = 1e-9;
};

struct Crossing {
  double density = 0.0;
  bool extrapolated = false;
};

// Smallest density in `search` where the curve first reaches `a` from below.
// Returns search.lo if the curve already meets `a` there and nullopt if it
// stays below `a` on the whole interval. The returned density d satisfies
// eval(d) >= a with eval < a on [search.lo, d - tolerance].
std::optional<Crossing> threshold_crossing(const BerCurve& curve, double a, Interval search,
                                           const CrossingOptions& options = {});

struct LifetimeExtension {
  double density = 0.0;
  bool reached = false;  // false when search_cap was returned
  bool extrapolated = false;
};

// First density past d1 where the curve reaches `a`, or search_cap.
// Throws InvalidInput if the curve already meets `a` at d1 or search_cap <= d1.
LifetimeExtension lifetime_extension(const BerCurve& curve, double a, double d1, double search_cap,
                                     const CrossingOptions& options = {});

// Largest density in `search` where the curve is at or below `a`, if any.
std::optional<double> last_density_below(const BerCurve& curve, double a, Interval search,
                                         const CrossingOptions& options = {});

using CurveSet = std::array<BerCurve, 4>;

// Built-in coefficient tables, by name: "paper-offline-mt" (degree-7 fits,
// all four schemes) and "paper-online-setup4" (degree-5 fits for OP, SP, OT;
// ST reuses the offline curve so the set stays complete).
std::vector<std::string> fixture_names();
CurveSet fixture(std::string_view name);
// Schemes whose curves come from the named table itself.
std::vector<Scheme> fixture_schemes(std::string_view name);

}  // namespace reconf
