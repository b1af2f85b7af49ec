#ifndef SUPLOC_INTERVAL_HPP
#define SUPLOC_INTERVAL_HPP

namespace suploc {

// Closed interval [lower, upper].
struct Interval {
  double lower = 0.0;
  double upper = 0.0;

  double length() const noexcept { return upper - lower; }
  bool contains(double x) const noexcept { return lower <= x && x <= upper; }
  bool operator==(const Interval&) const = default;
};

}  // namespace suploc

#endif  // SUPLOC_INTERVAL_HPP
