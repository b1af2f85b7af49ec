#include "suploc/recover.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <sstream>

#include "suploc/error.hpp"
#include "suploc/orthopoly.hpp"

namespace suploc {

std::string_view to_string(RegimeRequest request) {
  switch (request) {
    case RegimeRequest::flat: return "flat";
    case RegimeRequest::single_interval: return "single";
    case RegimeRequest::atoms_outside: return "outside";
    case RegimeRequest::general: return "general";
    case RegimeRequest::automatic: return "auto";
  }
  return "auto";
}

RegimeRequest parse_regime_request(std::string_view text) {
  if (text == "flat") return RegimeRequest::flat;
  if (text == "single") return RegimeRequest::single_interval;
  if (text == "outside") return RegimeRequest::atoms_outside;
  if (text == "general") return RegimeRequest::general;
  if (text == "auto") return RegimeRequest::automatic;
  throw Error(ErrorKind::invalid_argument, "unknown regime '" + std::string(text) + "'");
}

std::string_view to_string(Warning warning) {
  switch (warning) {
    case Warning::regime_mismatch: return "RegimeMismatch";
    case Warning::low_degree: return "LowDegree";
    case Warning::indefinite_input: return "IndefiniteInput";
    case Warning::degree_capped: return "DegreeCapped";
    case Warning::inconsistent: return "Inconsistent";
  }
  return "Warning";
}

bool SupportEstimate::has_warning(Warning w) const {
  return std::find(warnings.begin(), warnings.end(), w) != warnings.end();
}

ClassifiedRoots classify(const RootList& roots, double epsilon) {
  if (!(epsilon > 0.0)) throw Error(ErrorKind::invalid_argument, "epsilon must be positive");
  const auto& x = roots.roots();
  const std::size_t n = x.size();

  // Neighbours of x[i] strictly within epsilon occupy a contiguous index range.
  std::vector<std::size_t> lo(n), hi(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t a = i;
    while (a > 0 && x[i] - x[a - 1] < epsilon) --a;
    std::size_t b = i;
    while (b + 1 < n && x[b + 1] - x[i] < epsilon) ++b;
    lo[i] = a;
    hi[i] = b;
  }
  auto neighbours = [&](std::size_t i) { return hi[i] - lo[i]; };

  ClassifiedRoots out;
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t count = neighbours(i);
    if (count == 0) {
      out.isolated.push_back(x[i]);
      continue;
    }
    if (count == 1) {
      const std::size_t j = lo[i] == i ? hi[i] : lo[i];
      if (neighbours(j) == 1) {
        if (i < j) out.pairs.emplace_back(x[i], x[j]);
        continue;
      }
    }
    out.clustered.push_back(x[i]);
  }
  return out;
}

std::vector<Interval> bulks_to_intervals(std::span<const double> clustered, double epsilon) {
  std::vector<Interval> out;
  if (clustered.empty()) return out;
  Interval current{clustered.front(), clustered.front()};
  for (std::size_t j = 1; j < clustered.size(); ++j) {
    if (clustered[j] - clustered[j - 1] >= epsilon) {
      out.push_back(current);
      current = {clustered[j], clustered[j]};
    } else {
      current.upper = clustered[j];
    }
  }
  out.push_back(current);
  return out;
}

double rho_threshold(double epsilon, double a_inf) {
  if (!(epsilon > 0.0)) throw Error(ErrorKind::invalid_argument, "epsilon must be positive");
  if (!(a_inf >= 0.0)) throw Error(ErrorKind::invalid_argument, "a_inf must be non-negative");
  return epsilon * epsilon / (epsilon + std::sqrt(2.0) * a_inf);
}

namespace {

bool inside_any(const std::vector<Interval>& intervals, double x) {
  return std::any_of(intervals.begin(), intervals.end(),
                     [x](const Interval& i) { return i.contains(x); });
}

bool has_root_within(const RootList& roots, double x, double radius) {
  const auto& r = roots.roots();
  auto it = std::lower_bound(r.begin(), r.end(), x);
  if (it != r.end() && std::abs(*it - x) < radius) return true;
  return it != r.begin() && std::abs(*std::prev(it) - x) < radius;
}

std::vector<double> bulk_members(const ClassifiedRoots& cl) {
  std::vector<double> all = cl.clustered;
  for (const auto& [a, b] : cl.pairs) {
    all.push_back(a);
    all.push_back(b);
  }
  std::sort(all.begin(), all.end());
  return all;
}

// Structural reading of the roots used for regime checks. Bulks are runs of
// clustered or paired roots. A gap between bulks is filled (same component,
// N below the clustering degree) when it holds two or more isolated roots and
// none of its root-free stretches exceeds three times their median. A
// component made of a single pair is atom-like, not an interval. An isolated
// root in a real gap only counts when P_{N+1} has a root within rho of it;
// outside-regime measures also leave the odd wandering root in their gaps.
struct Structure {
  int components = 0;              // interval-like components
  bool roots_in_real_gaps = false; // atom-like roots between them
};

Structure read_structure(const ClassifiedRoots& cl, double epsilon, const RootList* next, double rho) {
  const auto bulks = bulks_to_intervals(bulk_members(cl), epsilon);
  struct Component {
    Interval span;
    int bulks = 1;
    bool pair = false;
  };
  auto is_pair = [&](const Interval& b) {
    return std::any_of(cl.pairs.begin(), cl.pairs.end(),
                       [&](const auto& p) { return p.first == b.lower && p.second == b.upper; });
  };
  auto isolated_between = [&](double lo, double hi) {
    return static_cast<int>(std::count_if(cl.isolated.begin(), cl.isolated.end(),
                                          [&](double x) { return x > lo && x < hi; }));
  };

  auto filled = [&](double lo, double hi) {
    if (isolated_between(lo, hi) < 2) return false;
    std::vector<double> pts{lo};
    for (double x : cl.isolated)
      if (x > lo && x < hi) pts.push_back(x);
    pts.push_back(hi);
    std::vector<double> stretch;
    for (std::size_t k = 1; k < pts.size(); ++k) stretch.push_back(pts[k] - pts[k - 1]);
    std::vector<double> sorted = stretch;
    std::nth_element(sorted.begin(), sorted.begin() + sorted.size() / 2, sorted.end());
    const double median = sorted[sorted.size() / 2];
    return *std::max_element(stretch.begin(), stretch.end()) <= 3.0 * median;
  };

  std::vector<Component> comps;
  for (const Interval& b : bulks) {
    if (!comps.empty() && filled(comps.back().span.upper, b.lower)) {
      comps.back().span.upper = b.upper;
      ++comps.back().bulks;
    } else {
      comps.push_back({b, 1, is_pair(b)});
    }
  }

  Structure s;
  std::vector<Interval> real;
  for (const Component& c : comps)
    if (!(c.bulks == 1 && c.pair)) real.push_back(c.span);
  s.components = static_cast<int>(real.size());
  for (std::size_t k = 1; k < real.size(); ++k) {
    const double lo = real[k - 1].upper, hi = real[k].lower;
    for (double x : cl.isolated)
      if (x > lo && x < hi && (next == nullptr || has_root_within(*next, x, rho)))
        s.roots_in_real_gaps = true;
    for (const Component& c : comps)
      if (c.bulks == 1 && c.pair && c.span.lower > lo && c.span.upper < hi) s.roots_in_real_gaps = true;
  }
  return s;
}

void sort_estimate(SupportEstimate& est) {
  std::sort(est.atoms.begin(), est.atoms.end());
  std::sort(est.pollution.begin(), est.pollution.end());
  std::sort(est.absorbed.begin(), est.absorbed.end());
}

void classify_single(const ClassifiedRoots& cl, SupportEstimate& est) {
  const auto members = bulk_members(cl);
  if (!members.empty()) est.intervals.push_back({members.front(), members.back()});
  for (double x : cl.isolated) (inside_any(est.intervals, x) ? est.absorbed : est.atoms).push_back(x);
}

void classify_outside(const ClassifiedRoots& cl, double epsilon, SupportEstimate& est) {
  const auto members = bulk_members(cl);
  est.intervals = bulks_to_intervals(members, epsilon);
  for (double x : cl.isolated) {
    if (inside_any(est.intervals, x)) {
      est.absorbed.push_back(x);
    } else if (!est.intervals.empty() && x > est.intervals.front().lower &&
               x < est.intervals.back().upper) {
      est.pollution.push_back(x);
    } else {
      est.atoms.push_back(x);
    }
  }
}

void classify_general(const ClassifiedRoots& cl, const RootList& next, double epsilon,
                      SupportEstimate& est) {
  est.intervals = bulks_to_intervals(cl.clustered, epsilon);
  est.rho = rho_threshold(epsilon, est.a_inf);
  for (const auto& [a, b] : cl.pairs) {
    const double mid = 0.5 * (a + b);
    (inside_any(est.intervals, mid) ? est.absorbed : est.atoms).push_back(mid);
  }
  for (double x : cl.isolated) {
    if (inside_any(est.intervals, x)) est.absorbed.push_back(x);
    else if (has_root_within(next, x, est.rho)) est.atoms.push_back(x);
    else est.pollution.push_back(x);
  }
}

// Non-flat branch shared by both inputs. `rec` must hold at least N + 1
// coefficients when the general regime may be selected.
SupportEstimate classify_roots(const Recurrence& rec, int n, RegimeRequest request,
                               double epsilon, SupportEstimate est) {
  est.degree_used = n;
  est.a_inf = rec.a_inf;
  const bool may_need_next = request == RegimeRequest::general ||
                             request == RegimeRequest::automatic || request == RegimeRequest::flat;
  const bool next_available = rec.degree() >= n + 1;

  RootList current;
  RootList next;
  if (may_need_next && next_available) {
    // J_N and J_{N+1} are independent; merge deterministically.
    auto pending = std::async(std::launch::async, [&] { return eigenvalues(jacobi(rec, n + 1)); });
    current = eigenvalues(jacobi(rec, n));
    next = pending.get();
  } else {
    current = eigenvalues(jacobi(rec, n));
  }

  const ClassifiedRoots cl = classify(current, epsilon);
  const Structure structure = read_structure(cl, epsilon, next.empty() ? nullptr : &next,
                                             rho_threshold(epsilon, rec.a_inf));

  Regime regime = Regime::general;
  switch (request) {
    case RegimeRequest::single_interval:
      regime = Regime::single_interval;
      if (structure.components >= 2) {
        est.warnings.push_back(Warning::regime_mismatch);
        regime = Regime::atoms_outside;
      }
      break;
    case RegimeRequest::atoms_outside: regime = Regime::atoms_outside; break;
    case RegimeRequest::general: regime = Regime::general; break;
    case RegimeRequest::flat:
      est.warnings.push_back(Warning::regime_mismatch);
      [[fallthrough]];
    case RegimeRequest::automatic:
      // No bulk at all says nothing about the structure; assume the least.
      if (structure.components == 0) regime = Regime::general;
      else if (structure.components == 1) regime = Regime::single_interval;
      else if (structure.roots_in_real_gaps) regime = Regime::general;
      else regime = Regime::atoms_outside;
      break;
  }
  if (regime == Regime::general && !next_available)
    throw Error(ErrorKind::degree_budget_exceeded, "general regime needs P_{N+1}");

  est.regime = regime;
  switch (regime) {
    case Regime::single_interval: classify_single(cl, est); break;
    case Regime::atoms_outside: classify_outside(cl, epsilon, est); break;
    case Regime::general: classify_general(cl, next, epsilon, est); break;
    case Regime::flat: break;
  }
  if (est.intervals.empty()) est.warnings.push_back(Warning::low_degree);
  sort_estimate(est);
  return est;
}

SupportEstimate flat_estimate(const Recurrence& rec_r, int flat_n, double epsilon,
                              SupportEstimate est) {
  est.epsilon = epsilon;
  est.regime = Regime::flat;
  est.degree_used = flat_n;
  est.a_inf = rec_r.a_inf;
  est.atoms = eigenvalues(jacobi(rec_r)).roots();
  return est;
}

void validate(const SuplocOptions& options) {
  if (!(options.epsilon > 0.0)) throw Error(ErrorKind::invalid_argument, "epsilon must be positive");
  if (options.degree < 1) throw Error(ErrorKind::invalid_argument, "degree N must be >= 1");
  if (!(options.tau > 0.0)) throw Error(ErrorKind::invalid_argument, "tau must be positive");
}

}  // namespace

SupportEstimate suploc(const MeasureSpec& spec, const SuplocOptions& options) {
  validate(options);
  const int n = options.degree;
  const QuadratureOracle oracle(spec, 2 * n + 2);

  SupportEstimate est;
  est.epsilon = options.epsilon;

  // rank M_k = min(k + 1, r) once pivot r collapses; flat from k = max(1, r - 1).
  const PivotScan scan = scan_pivots(oracle, n + 1, options.tau, std::max(1.0, spec.bound()));
  if (scan.degenerate && std::max(1, scan.rank - 1) <= n)
    return flat_estimate(stieltjes(oracle, scan.rank), std::max(1, scan.rank - 1), options.epsilon,
                         std::move(est));

  return classify_roots(stieltjes(oracle, n + 1), n, options.regime, options.epsilon,
                        std::move(est));
}

SupportEstimate suploc(const MomentData& data, const SuplocOptions& options) {
  validate(options);
  const int available = data.degree();
  if (available < 1) throw Error(ErrorKind::degree_budget_exceeded, "moment data of degree 0");

  const PsdReport psd = psd_check(data, options.tau);
  if (!psd.ok) {
    std::ostringstream os;
    os.precision(17);
    os << "moment matrix is indefinite, min_eig = " << psd.min_eig;
    throw Error(ErrorKind::non_psd, os.str());
  }

  SupportEstimate est;
  est.epsilon = options.epsilon;
  if (psd.indefinite) est.warnings.push_back(Warning::indefinite_input);

  for (int k = 1; k <= std::min(options.degree, available - 1); ++k) {
    const RankReport rank = flatness(data.truncated(k), data.truncated(k + 1), options.tau);
    if (rank.flat) {
      const MomentOracle oracle(data.truncated(k + 1));
      return flat_estimate(stieltjes(oracle, rank.rank_n), k, options.epsilon, std::move(est));
    }
  }

  const bool needs_next = options.regime != RegimeRequest::single_interval &&
                          options.regime != RegimeRequest::atoms_outside;
  const int n = std::min(options.degree, needs_next ? available - 1 : available);
  if (n < options.degree) est.warnings.push_back(Warning::degree_capped);
  if (n < 1) throw Error(ErrorKind::degree_budget_exceeded, "moment data too short for P_{N+1}");

  const MomentOracle oracle(data);
  return classify_roots(stieltjes(oracle, std::min(n + 1, available)), n, options.regime,
                        options.epsilon, std::move(est));
}

bool consistent(const SupportEstimate& a, const SupportEstimate& b, double tolerance) {
  if (a.atoms.size() != b.atoms.size() || a.intervals.size() != b.intervals.size()) return false;
  for (std::size_t i = 0; i < a.atoms.size(); ++i)
    if (!(std::abs(a.atoms[i] - b.atoms[i]) < tolerance)) return false;
  for (std::size_t i = 0; i < a.intervals.size(); ++i) {
    if (!(std::abs(a.intervals[i].lower - b.intervals[i].lower) < tolerance)) return false;
    if (!(std::abs(a.intervals[i].upper - b.intervals[i].upper) < tolerance)) return false;
  }
  return true;
}

SupportEstimate suploc_adaptive(const MeasureSpec& spec, SuplocOptions options, int max_degree) {
  if (max_degree < options.degree)
    throw Error(ErrorKind::invalid_argument, "max_degree below the starting degree");
  SupportEstimate previous = suploc(spec, options);
  if (previous.regime == Regime::flat) return previous;
  while (options.degree + 2 <= max_degree) {
    options.degree += 2;
    SupportEstimate current = suploc(spec, options);
    const bool resolved = !previous.has_warning(Warning::low_degree) &&
                          !current.has_warning(Warning::low_degree);
    if (resolved && consistent(previous, current, options.epsilon)) return current;
    previous = std::move(current);
  }
  previous.warnings.push_back(Warning::inconsistent);
  return previous;
}

}  // namespace suploc
