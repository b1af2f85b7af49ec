#ifndef SUPLOC_ORACLE_HPP
#define SUPLOC_ORACLE_HPP

#include <vector>

namespace suploc {

// Integration oracle for <p, q> = \int p q dmu over polynomials held in a
// backend-specific representation: values at quadrature nodes, or monomial
// coefficient vectors. Linear combinations are taken elementwise in either
// representation, so the Stieltjes update needs nothing beyond this interface.
class InnerProductOracle {
 public:
  using Vector = std::vector<double>;

  virtual ~InnerProductOracle() = default;

  // Largest deg(p) + deg(q) integrated exactly.
  virtual int exactness_degree() const = 0;

  virtual Vector constant_one() const = 0;
  virtual Vector multiply_by_x(const Vector& p) const = 0;
  virtual double inner(const Vector& p, const Vector& q) const = 0;
};

}  // namespace suploc

#endif  // SUPLOC_ORACLE_HPP
