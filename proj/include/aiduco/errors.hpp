#pragma once

#include <stdexcept>
#include <string>

namespace aiduco {

/// A mass/inertia vector with a non-positive or non-finite entry.
class DegenerateMassError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// An adaptive mass estimate crossed its positivity floor.
class PositivityFloorError : public std::runtime_error {
 public:
  PositivityFloorError(int index, double value, double floor, double time);

  int index() const noexcept { return index_; }
  double value() const noexcept { return value_; }
  double floor() const noexcept { return floor_; }
  // Simulation time of the offending evaluation; NaN when not known.
  double time() const noexcept { return time_; }

 private:
  int index_;
  double value_;
  double floor_;
  double time_;
};

}  // namespace aiduco
