#include "suploc/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "suploc/error.hpp"
#include "suploc/measure.hpp"
#include "suploc/recover.hpp"

namespace suploc {

std::vector<Interval> canonical_intervals(std::vector<Interval> intervals) {
  std::erase_if(intervals, [](const Interval& i) {
    return !(i.lower <= i.upper) || !std::isfinite(i.lower) || !std::isfinite(i.upper);
  });
  std::sort(intervals.begin(), intervals.end(),
            [](const Interval& a, const Interval& b) { return a.lower < b.lower; });
  std::vector<Interval> out;
  for (const Interval& i : intervals) {
    if (!out.empty() && i.lower <= out.back().upper) out.back().upper = std::max(out.back().upper, i.upper);
    else out.push_back(i);
  }
  return out;
}

SupportSet::SupportSet(std::vector<double> points, std::vector<Interval> intervals)
    : intervals_(canonical_intervals(std::move(intervals))) {
  for (double p : points) {
    if (!std::isfinite(p)) throw Error(ErrorKind::invalid_argument, "non-finite support point");
    const bool covered = std::any_of(intervals_.begin(), intervals_.end(),
                                     [p](const Interval& i) { return i.contains(p); });
    if (!covered) points_.push_back(p);
  }
  std::sort(points_.begin(), points_.end());
  points_.erase(std::unique(points_.begin(), points_.end()), points_.end());
}

SupportSet SupportSet::of(const MeasureSpec& spec) {
  std::vector<double> points;
  for (const auto& a : spec.atoms()) points.push_back(a.position);
  std::vector<Interval> intervals;
  for (const auto& i : spec.intervals()) intervals.push_back({i.lower, i.upper});
  return {std::move(points), std::move(intervals)};
}

SupportSet SupportSet::of(const SupportEstimate& estimate) {
  return {estimate.atoms, estimate.intervals};
}

double SupportSet::distance(double x) const {
  double best = std::numeric_limits<double>::infinity();
  for (double p : points_) best = std::min(best, std::abs(x - p));
  for (const Interval& i : intervals_) {
    if (i.contains(x)) return 0.0;
    best = std::min(best, x < i.lower ? i.lower - x : x - i.upper);
  }
  return best;
}

namespace {

// Components of a canonical set as sorted closed intervals (points degenerate).
std::vector<Interval> components(const SupportSet& s) {
  std::vector<Interval> c = s.intervals();
  for (double p : s.points()) c.push_back({p, p});
  std::sort(c.begin(), c.end(), [](const Interval& a, const Interval& b) { return a.lower < b.lower; });
  return c;
}

// sup over a of dist(., b). The distance to b is piecewise linear with local
// maxima only at midpoints of gaps of b, so those plus a's endpoints suffice.
double directed(const SupportSet& a, const SupportSet& b) {
  const auto cb = components(b);
  double worst = 0.0;
  for (const Interval& piece : components(a)) {
    worst = std::max({worst, b.distance(piece.lower), b.distance(piece.upper)});
    for (std::size_t k = 1; k < cb.size(); ++k) {
      const double mid = 0.5 * (cb[k - 1].upper + cb[k].lower);
      if (piece.contains(mid)) worst = std::max(worst, b.distance(mid));
    }
  }
  return worst;
}

double total_length(const std::vector<Interval>& v) {
  double s = 0.0;
  for (const Interval& i : v) s += i.length();
  return s;
}

}  // namespace

double hausdorff(const SupportSet& a, const SupportSet& b) {
  if (a.empty() || b.empty()) throw Error(ErrorKind::empty_set, "Hausdorff distance of an empty set");
  return std::max(directed(a, b), directed(b, a));
}

double interval_iou(std::span<const Interval> a, std::span<const Interval> b) {
  const auto ca = canonical_intervals({a.begin(), a.end()});
  const auto cb = canonical_intervals({b.begin(), b.end()});
  if (ca.empty() && cb.empty()) return 1.0;
  if (ca.empty() || cb.empty()) return 0.0;

  double inter = 0.0;
  std::size_t i = 0, j = 0;
  while (i < ca.size() && j < cb.size()) {
    const double lo = std::max(ca[i].lower, cb[j].lower);
    const double hi = std::min(ca[i].upper, cb[j].upper);
    if (hi > lo) inter += hi - lo;
    if (ca[i].upper < cb[j].upper) ++i;
    else ++j;
  }
  const double uni = total_length(ca) + total_length(cb) - inter;
  return uni > 0.0 ? inter / uni : 0.0;
}

AtomSuccess atom_success(std::span<const double> truth, std::span<const double> found,
                         double epsilon) {
  if (!(epsilon > 0.0)) throw Error(ErrorKind::invalid_argument, "epsilon must be positive");
  AtomSuccess out;
  for (double t : truth) {
    const auto hits = std::count_if(found.begin(), found.end(),
                                    [&](double f) { return std::abs(f - t) <= epsilon; });
    out.per_atom.push_back(hits == 1);
  }
  for (double f : found) {
    const bool matched = std::any_of(truth.begin(), truth.end(),
                                     [&](double t) { return std::abs(f - t) <= epsilon; });
    if (!matched) ++out.false_positives;
  }
  out.overall = out.false_positives == 0 &&
                std::all_of(out.per_atom.begin(), out.per_atom.end(), [](bool b) { return b; });
  return out;
}

RateFit rate_fit(std::span<const std::pair<int, double>> errors) {
  if (errors.size() < 4) throw Error(ErrorKind::invalid_argument, "rate fit needs at least 4 samples");
  double sx = 0, sy = 0;
  for (const auto& [n, e] : errors) {
    if (!(e > 0.0) || !std::isfinite(e))
      throw Error(ErrorKind::non_positive_error, "rate fit needs positive finite errors");
    sx += n;
    sy += std::log(e);
  }
  const double m = static_cast<double>(errors.size());
  const double mx = sx / m, my = sy / m;
  double sxx = 0, sxy = 0, syy = 0;
  for (const auto& [n, e] : errors) {
    const double dx = n - mx, dy = std::log(e) - my;
    sxx += dx * dx;
    sxy += dx * dy;
    syy += dy * dy;
  }
  if (sxx == 0.0) throw Error(ErrorKind::invalid_argument, "rate fit needs distinct degrees");
  const double slope = sxy / sxx;
  const double ss_res = std::max(0.0, syy - slope * sxy);
  RateFit fit;
  fit.rate = std::exp(slope);
  fit.r2 = syy > 0.0 ? 1.0 - ss_res / syy : 1.0;
  return fit;
}

}  // namespace suploc
