#pragma once

#include <stdexcept>
#include <string>

namespace reconf {

// Bad arguments or malformed input data.
class InvalidInput : public std::invalid_argument {
 public:
  explicit InvalidInput(const std::string& what) : std::invalid_argument(what) {}
};

// The planning problem has no feasible share vector.
class Infeasible : public std::runtime_error {
 public:
  explicit Infeasible(const std::string& what) : std::runtime_error(what) {}
};

// The final scheme already violates the threshold at end of life.
// last_ok_density is the largest density at which it still meets the
// threshold, or NaN if there is none in range.
class EndOfLifeInfeasible : public Infeasible {
 public:
  EndOfLifeInfeasible(const std::string& what, double last_ok_density)
      : Infeasible(what), last_ok_density_(last_ok_density) {}
  double last_ok_density() const noexcept { return last_ok_density_; }

 private:
  double last_ok_density_;
};

// A KKT certificate needs a constraint gradient that vanishes.
class DegenerateCertificate : public std::runtime_error {
 public:
  explicit DegenerateCertificate(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace reconf
