#ifndef SUPLOC_MEASURE_HPP
#define SUPLOC_MEASURE_HPP

#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "suploc/interval.hpp"
#include "suploc/oracle.hpp"

namespace suploc {

enum class Density { uniform };

struct AtomPart {
  double position = 0.0;
  double weight = 0.0;
};

// Absolutely continuous component: `weight` is the total mass on [lower, upper].
struct IntervalPart {
  double lower = 0.0;
  double upper = 0.0;
  double weight = 0.0;
  Density density = Density::uniform;

  double length() const noexcept { return upper - lower; }
  // Pointwise density value; the lower bound c_0 for uniform shapes.
  double density_value() const noexcept { return weight / length(); }
};

// Structural class of a measure, ordered from most to least restrictive.
enum class Regime { flat, single_interval, atoms_outside, general };

std::string_view to_string(Regime regime);

// Finitely many atoms plus finitely many uniform-density intervals, all
// pairwise disjoint and inside [-bound, bound]. Weights are rescaled to a
// probability measure on construction; the original total is kept as
// mass_scale(). Throws Error(invalid_spec) on violated invariants.
class MeasureSpec {
 public:
  MeasureSpec(std::vector<AtomPart> atoms, std::vector<IntervalPart> intervals,
              std::optional<double> bound = std::nullopt);

  const std::vector<AtomPart>& atoms() const noexcept { return atoms_; }
  const std::vector<IntervalPart>& intervals() const noexcept { return intervals_; }
  double bound() const noexcept { return bound_; }
  double mass_scale() const noexcept { return mass_scale_; }

  std::size_t component_count() const noexcept { return atoms_.size() + intervals_.size(); }
  double support_min() const noexcept { return support_min_; }
  double support_max() const noexcept { return support_max_; }

  // flat: atoms only; single_interval: exactly one interval; atoms_outside:
  // no atom inside the convex hull of the interval union; general otherwise.
  Regime regime() const;

 private:
  std::vector<AtomPart> atoms_;          // sorted by position
  std::vector<IntervalPart> intervals_;  // sorted by lower
  double bound_ = 1.0;
  double mass_scale_ = 1.0;
  double support_min_ = 0.0;
  double support_max_ = 0.0;
};

// Minimum gap between distinct components (closures). A single component
// has no gap; the result is then +infinity.
double separation_distance(const MeasureSpec& spec);

// y_0 .. y_{max_degree}, analytic.
std::vector<double> moments(const MeasureSpec& spec, int max_degree);

enum class IntegrationBackend { moments, quadrature };

// \int p q dmu for monomial coefficient vectors (ascending powers).
double inner_product(const MeasureSpec& spec, std::span<const double> p, std::span<const double> q,
                     IntegrationBackend backend = IntegrationBackend::quadrature);

struct GaussRule {
  std::vector<double> nodes;    // ascending, in (-1, 1)
  std::vector<double> weights;  // sum to 2
};

// m-point Gauss-Legendre rule on [-1, 1] via the Legendre Jacobi matrix
// (beta_j = j^2 / (4 j^2 - 1)); weights are the Christoffel numbers.
GaussRule gauss_legendre(int m);

// Node-based oracle for a MeasureSpec: one node per atom plus a mapped
// Gauss-Legendre rule of ceil((D + 1) / 2) nodes per interval, exact for
// polynomial products up to degree D. Polynomials are represented by their
// values at the nodes.
class QuadratureOracle final : public InnerProductOracle {
 public:
  QuadratureOracle(const MeasureSpec& spec, int exactness_degree);

  int exactness_degree() const override { return exactness_; }
  Vector constant_one() const override;
  Vector multiply_by_x(const Vector& p) const override;
  double inner(const Vector& p, const Vector& q) const override;

  // Integral of p*q for monomial coefficient vectors; throws
  // DegreeBudgetExceeded beyond the exactness degree.
  double integrate(std::span<const double> p, std::span<const double> q) const;

  const std::vector<double>& nodes() const noexcept { return nodes_; }
  const std::vector<double>& weights() const noexcept { return weights_; }

 private:
  int exactness_;
  std::vector<double> nodes_;
  std::vector<double> weights_;
};

}  // namespace suploc

#endif  // SUPLOC_MEASURE_HPP
