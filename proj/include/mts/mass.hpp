#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace mts {

using Units = std::int64_t;

// A distribution over n points kept in exact integer units: mass(i) counts
// units of 1/units_per_whole and the units always sum to units_per_whole.
// With units_per_whole = k this is exactly the configuration set P_k.
class MassVector {
 public:
  // Trivial single-point distribution; placeholder for default-constructed
  // aggregates that get assigned before use.
  MassVector() : units_(1), mass_{1} {}

  MassVector(Units units_per_whole, std::vector<Units> mass);

  static MassVector point_mass(int n, int point, Units units_per_whole = 1);

  Units units() const { return units_; }
  int size() const { return static_cast<int>(mass_.size()); }
  Units operator[](int i) const { return mass_[i]; }
  const std::vector<Units>& raw() const { return mass_; }
  double fraction(int i) const {
    return static_cast<double>(mass_[i]) / static_cast<double>(units_);
  }
  std::vector<double> fractions() const;

  // Exact change of denominator; new_units must be a positive multiple of
  // units().
  MassVector rescaled(Units new_units) const;

  bool operator==(const MassVector& other) const = default;

  std::string to_string() const;

 private:
  Units units_;
  std::vector<Units> mass_;
};

// Least common multiple with an overflow guard; both arguments positive.
Units lcm_units(Units a, Units b);

}  // namespace mts
