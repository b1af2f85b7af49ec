#include "suploc/measure.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "suploc/error.hpp"
#include "suploc/orthopoly.hpp"
#include "suploc/spectra.hpp"

namespace suploc {

std::string_view to_string(Regime regime) {
  switch (regime) {
    case Regime::flat: return "flat";
    case Regime::single_interval: return "single";
    case Regime::atoms_outside: return "outside";
    case Regime::general: return "general";
  }
  return "general";
}

namespace {

[[noreturn]] void invalid(const std::string& what) { throw Error(ErrorKind::invalid_spec, what); }

// Closed-set components as (lower, upper); atoms have lower == upper.
std::vector<Interval> components(const MeasureSpec& spec) {
  std::vector<Interval> out;
  for (const auto& a : spec.atoms()) out.push_back({a.position, a.position});
  for (const auto& i : spec.intervals()) out.push_back({i.lower, i.upper});
  std::sort(out.begin(), out.end(),
            [](const Interval& x, const Interval& y) { return x.lower < y.lower; });
  return out;
}

// Monomial coefficients, ascending; degree of the highest nonzero coefficient.
int degree_of(std::span<const double> p) {
  for (std::size_t i = p.size(); i-- > 0;)
    if (p[i] != 0.0) return static_cast<int>(i);
  return 0;
}

double horner(std::span<const double> p, double x) {
  double acc = 0.0;
  for (std::size_t i = p.size(); i-- > 0;) acc = acc * x + p[i];
  return acc;
}

}  // namespace

MeasureSpec::MeasureSpec(std::vector<AtomPart> atoms, std::vector<IntervalPart> intervals,
                         std::optional<double> bound)
    : atoms_(std::move(atoms)), intervals_(std::move(intervals)) {
  if (atoms_.empty() && intervals_.empty()) invalid("measure has no components");

  double total = 0.0;
  for (const auto& a : atoms_) {
    if (!std::isfinite(a.position)) invalid("atom position must be finite");
    if (!(a.weight > 0.0) || !std::isfinite(a.weight)) invalid("atom weight must be positive");
    total += a.weight;
  }
  for (const auto& i : intervals_) {
    if (!std::isfinite(i.lower) || !std::isfinite(i.upper)) invalid("interval ends must be finite");
    if (!(i.lower < i.upper)) invalid("interval needs lower < upper");
    if (!(i.weight > 0.0) || !std::isfinite(i.weight)) invalid("interval weight must be positive");
    total += i.weight;
  }
  mass_scale_ = total;
  for (auto& a : atoms_) a.weight /= total;
  for (auto& i : intervals_) i.weight /= total;

  std::sort(atoms_.begin(), atoms_.end(),
            [](const AtomPart& x, const AtomPart& y) { return x.position < y.position; });
  std::sort(intervals_.begin(), intervals_.end(),
            [](const IntervalPart& x, const IntervalPart& y) { return x.lower < y.lower; });

  const auto parts = components(*this);
  for (std::size_t k = 1; k < parts.size(); ++k) {
    if (!(parts[k].lower > parts[k - 1].upper)) {
      std::ostringstream os;
      os << "components overlap or touch near " << parts[k].lower;
      invalid(os.str());
    }
  }
  support_min_ = parts.front().lower;
  support_max_ = parts.back().upper;
  double radius = 0.0;
  for (const auto& p : parts) radius = std::max({radius, std::abs(p.lower), std::abs(p.upper)});

  if (bound) {
    if (!(*bound > 0.0)) invalid("bound must be positive");
    if (radius > *bound) invalid("support exceeds the declared bound");
    bound_ = *bound;
  } else {
    bound_ = radius > 0.0 ? radius : 1.0;
  }
}

Regime MeasureSpec::regime() const {
  if (intervals_.empty()) return Regime::flat;
  if (intervals_.size() == 1) return Regime::single_interval;
  const double lo = intervals_.front().lower;
  double hi = intervals_.front().upper;
  for (const auto& i : intervals_) hi = std::max(hi, i.upper);
  for (const auto& a : atoms_)
    if (a.position > lo && a.position < hi) return Regime::general;
  return Regime::atoms_outside;
}

double separation_distance(const MeasureSpec& spec) {
  const auto parts = components(spec);
  double gap = std::numeric_limits<double>::infinity();
  for (std::size_t k = 1; k < parts.size(); ++k) gap = std::min(gap, parts[k].lower - parts[k - 1].upper);
  return gap;
}

std::vector<double> moments(const MeasureSpec& spec, int max_degree) {
  if (max_degree < 0) throw Error(ErrorKind::invalid_argument, "max_degree must be >= 0");
  std::vector<double> y(static_cast<std::size_t>(max_degree) + 1, 0.0);
  for (const auto& a : spec.atoms()) {
    double power = 1.0;
    for (int k = 0; k <= max_degree; ++k) {
      y[k] += a.weight * power;
      power *= a.position;
    }
  }
  for (const auto& i : spec.intervals()) {
    // w (b^{k+1} - a^{k+1}) / ((k + 1)(b - a))
    double pa = i.lower;
    double pb = i.upper;
    for (int k = 0; k <= max_degree; ++k) {
      y[k] += i.weight * (pb - pa) / (static_cast<double>(k + 1) * i.length());
      pa *= i.lower;
      pb *= i.upper;
    }
  }
  y[0] = 1.0;
  return y;
}

double inner_product(const MeasureSpec& spec, std::span<const double> p, std::span<const double> q,
                     IntegrationBackend backend) {
  const int dp = degree_of(p);
  const int dq = degree_of(q);
  if (backend == IntegrationBackend::quadrature)
    return QuadratureOracle(spec, dp + dq).integrate(p, q);

  const auto y = moments(spec, dp + dq);
  double acc = 0.0;
  for (int i = 0; i <= dp && i < static_cast<int>(p.size()); ++i)
    for (int j = 0; j <= dq && j < static_cast<int>(q.size()); ++j) acc += p[i] * q[j] * y[i + j];
  return acc;
}

GaussRule gauss_legendre(int m) {
  if (m < 1) throw Error(ErrorKind::invalid_argument, "Gauss-Legendre needs m >= 1");
  // Legendre recurrence for the probability measure dx/2 on [-1, 1].
  Recurrence legendre;
  legendre.alphas.assign(m, 0.0);
  legendre.zetas.assign(m, 0.0);
  for (int j = 1; j < m; ++j) {
    const double jj = static_cast<double>(j) * j;
    legendre.betas.push_back(jj / (4.0 * jj - 1.0));
  }
  GaussRule rule;
  rule.nodes = eigenvalues(jacobi(legendre)).roots();

  // Christoffel numbers: 1 / sum_k ptilde_k(x)^2 with orthonormal ptilde_k.
  rule.weights.reserve(m);
  for (double x : rule.nodes) {
    double prev = 0.0;
    double cur = 1.0;
    double sum = 1.0;
    for (int k = 0; k + 1 < m; ++k) {
      const double a_next = std::sqrt(legendre.betas[k]);
      const double a_cur = k >= 1 ? std::sqrt(legendre.betas[k - 1]) : 0.0;
      const double next = (x * cur - a_cur * prev) / a_next;
      prev = cur;
      cur = next;
      sum += cur * cur;
    }
    rule.weights.push_back(2.0 / sum);
  }
  return rule;
}

QuadratureOracle::QuadratureOracle(const MeasureSpec& spec, int exactness_degree)
    : exactness_(exactness_degree) {
  if (exactness_degree < 0) throw Error(ErrorKind::invalid_argument, "negative exactness degree");
  for (const auto& a : spec.atoms()) {
    nodes_.push_back(a.position);
    weights_.push_back(a.weight);
  }
  if (!spec.intervals().empty()) {
    const int m = exactness_degree / 2 + 1;  // ceil((D + 1) / 2)
    const GaussRule rule = gauss_legendre(m);
    for (const auto& i : spec.intervals()) {
      const double mid = 0.5 * (i.lower + i.upper);
      const double half = 0.5 * i.length();
      for (int k = 0; k < m; ++k) {
        nodes_.push_back(mid + half * rule.nodes[k]);
        weights_.push_back(0.5 * i.weight * rule.weights[k]);
      }
    }
  }
}

InnerProductOracle::Vector QuadratureOracle::constant_one() const {
  return Vector(nodes_.size(), 1.0);
}

InnerProductOracle::Vector QuadratureOracle::multiply_by_x(const Vector& p) const {
  Vector out(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) out[i] = nodes_[i] * p[i];
  return out;
}

double QuadratureOracle::inner(const Vector& p, const Vector& q) const {
  double acc = 0.0;
  for (std::size_t i = 0; i < weights_.size(); ++i) acc += weights_[i] * p[i] * q[i];
  return acc;
}

double QuadratureOracle::integrate(std::span<const double> p, std::span<const double> q) const {
  const int total = degree_of(p) + degree_of(q);
  if (total > exactness_)
    throw Error(ErrorKind::degree_budget_exceeded,
                "product degree " + std::to_string(total) + " exceeds oracle exactness " +
                    std::to_string(exactness_));
  double acc = 0.0;
  for (std::size_t i = 0; i < nodes_.size(); ++i)
    acc += weights_[i] * horner(p, nodes_[i]) * horner(q, nodes_[i]);
  return acc;
}

}  // namespace suploc
