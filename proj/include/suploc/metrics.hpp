#ifndef SUPLOC_METRICS_HPP
#define SUPLOC_METRICS_HPP

#include <span>
#include <utility>
#include <vector>

#include "suploc/interval.hpp"

namespace suploc {

class MeasureSpec;
struct SupportEstimate;

// Finite union of points and closed intervals in canonical form: intervals
// sorted with overlapping or touching ones merged, points sorted, deduplicated
// and dropped when covered by an interval.
class SupportSet {
 public:
  SupportSet() = default;
  SupportSet(std::vector<double> points, std::vector<Interval> intervals);

  static SupportSet of(const MeasureSpec& spec);
  static SupportSet of(const SupportEstimate& estimate);

  const std::vector<double>& points() const noexcept { return points_; }
  const std::vector<Interval>& intervals() const noexcept { return intervals_; }
  bool empty() const noexcept { return points_.empty() && intervals_.empty(); }

  // Distance from x to the set.
  double distance(double x) const;

 private:
  std::vector<double> points_;
  std::vector<Interval> intervals_;
};

// Merge overlapping or touching intervals, drop empty/reversed ones.
std::vector<Interval> canonical_intervals(std::vector<Interval> intervals);

// Exact Hausdorff distance. Throws Error(empty_set) if either set is empty.
double hausdorff(const SupportSet& a, const SupportSet& b);

// |A n B| / |A u B| by total length. Both empty gives 1, exactly one empty 0.
double interval_iou(std::span<const Interval> a, std::span<const Interval> b);

struct AtomSuccess {
  std::vector<bool> per_atom;  // exactly one found atom within epsilon
  int false_positives = 0;     // found atoms farther than epsilon from every true atom
  bool overall = false;        // every true atom succeeds and no false positives
};

AtomSuccess atom_success(std::span<const double> truth, std::span<const double> found,
                         double epsilon);

struct RateFit {
  double rate = 0.0;  // exp(slope) of log e_n against n
  double r2 = 0.0;
};

// Least-squares fit of log e_n against n over >= 4 samples with e_n > 0
// (non_positive_error otherwise).
RateFit rate_fit(std::span<const std::pair<int, double>> errors);

}  // namespace suploc

#endif  // SUPLOC_METRICS_HPP
