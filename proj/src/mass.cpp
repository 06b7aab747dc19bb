#include "mts/mass.hpp"

#include <numeric>
#include <sstream>
#include <stdexcept>

namespace mts {

MassVector::MassVector(Units units_per_whole, std::vector<Units> mass)
    : units_(units_per_whole), mass_(std::move(mass)) {
  if (units_ < 1) throw std::invalid_argument("units_per_whole must be positive");
  Units sum = 0;
  for (Units v : mass_) {
    if (v < 0) throw std::invalid_argument("negative mass entry");
    sum += v;
  }
  if (sum != units_) {
    std::ostringstream os;
    os << "mass sums to " << sum << " but units_per_whole is " << units_;
    throw std::invalid_argument(os.str());
  }
}

MassVector MassVector::point_mass(int n, int point, Units units_per_whole) {
  if (point < 0 || point >= n) throw std::invalid_argument("point mass index out of range");
  std::vector<Units> mass(n, 0);
  mass[point] = units_per_whole;
  return MassVector(units_per_whole, std::move(mass));
}

std::vector<double> MassVector::fractions() const {
  std::vector<double> out(mass_.size());
  for (std::size_t i = 0; i < mass_.size(); ++i)
    out[i] = static_cast<double>(mass_[i]) / static_cast<double>(units_);
  return out;
}

MassVector MassVector::rescaled(Units new_units) const {
  if (new_units < units_ || new_units % units_ != 0) {
    std::ostringstream os;
    os << "cannot rescale units " << units_ << " to non-multiple " << new_units;
    throw std::invalid_argument(os.str());
  }
  const Units factor = new_units / units_;
  std::vector<Units> mass(mass_.size());
  for (std::size_t i = 0; i < mass_.size(); ++i) mass[i] = mass_[i] * factor;
  return MassVector(new_units, std::move(mass));
}

std::string MassVector::to_string() const {
  std::ostringstream os;
  os << "(";
  for (std::size_t i = 0; i < mass_.size(); ++i)
    os << (i ? " " : "") << mass_[i] << "/" << units_;
  os << ")";
  return os.str();
}

Units lcm_units(Units a, Units b) {
  if (a < 1 || b < 1) throw std::invalid_argument("lcm of non-positive units");
  const Units g = std::gcd(a, b);
  const Units scaled = a / g;
  if (scaled > (Units{1} << 58) / b) throw std::overflow_error("unit lcm overflow");
  return scaled * b;
}

}  // namespace mts
