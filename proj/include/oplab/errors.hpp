#ifndef OPLAB_ERRORS_HPP
#define OPLAB_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace oplab {

// Overflow while evaluating a parametric function; carries |z| of the probe
// that triggered it.
class RangeError : public std::range_error {
 public:
  RangeError(const std::string& what, double abs_z)
      : std::range_error(what), abs_z_(abs_z) {}
  double offending_abs() const { return abs_z_; }

 private:
  double abs_z_;
};

// Cholesky failure that survived jitter escalation.
class ConditioningError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A computed quantity failed an internal consistency assertion
// (e.g. a kernel diagonal came out non-real, or two algebraically
// equivalent routes disagreed beyond tolerance).
class ConsistencyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace oplab

#endif
