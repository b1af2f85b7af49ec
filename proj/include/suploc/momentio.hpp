#ifndef SUPLOC_MOMENTIO_HPP
#define SUPLOC_MOMENTIO_HPP

#include <span>
#include <vector>

#include "suploc/matrix.hpp"
#include "suploc/oracle.hpp"

namespace suploc {

// Moments y_0 .. y_{2n} of degree n and the Hankel matrix [M_n]_{ij} = y_{i+j}.
// Moments are stored as given; mass() is y_0 (> 0).
class MomentData {
 public:
  // Throws invalid_argument for an even-length list, non_positive_mass for y_0 <= 0.
  static MomentData from_moments(std::vector<double> y);

  // Reads moments off the first row and last column of a full matrix and
  // verifies every entry against y_{i+j} to `rel_tol` (relative to max |y|).
  // Throws not_hankel on the first violation.
  static MomentData from_matrix(const Matrix& m, double rel_tol = 1e-9);

  int degree() const noexcept { return static_cast<int>(y_.size() / 2); }
  const std::vector<double>& moments() const noexcept { return y_; }
  double mass() const noexcept { return y_.front(); }

  Matrix hankel() const;

  // Same data restricted to degree n <= degree().
  MomentData truncated(int n) const;

  bool operator==(const MomentData&) const = default;

 private:
  explicit MomentData(std::vector<double> y) : y_(std::move(y)) {}
  std::vector<double> y_;
};

struct PsdReport {
  double min_eig = 0.0;
  double norm = 0.0;  // ||M||_inf
  bool ok = false;
  bool indefinite = false;  // min_eig < 0 but within tolerance
};

// ok iff min_eig >= -tol * max(1, ||M||_inf); eigenvalues of the raw Hankel
// matrix via Householder reduction and implicit QL.
PsdReport psd_check(const MomentData& data, double tol = 1e-8);

struct RankReport {
  int rank_n = 0;
  int rank_n_plus_1 = 0;
  double tau = 0.0;
  bool flat = false;
  double min_eig = 0.0;  // smallest eigenvalue of the raw M_{n+1}
  bool indefinite = false;
};

// Flat-extension test rank M_n == rank M_{n+1}. `next` must have degree
// n + 1 and share y_0 .. y_{2n} bit-for-bit with `current` (else
// inconsistent_prefix). Numerical rank counts |eigenvalues| above
// tau * max |eigenvalue| of the Gram matrix of a Chebyshev basis scaled to
// the data's center and spread; rank is invariant under this change of basis
// and the Chebyshev Gram is far better conditioned than the monomial Hankel.
RankReport flatness(const MomentData& current, const MomentData& next, double tau = 1e-8);

// Numerical rank of M_n in the scaled Chebyshev basis.
int numerical_rank(const MomentData& data, double tau = 1e-8);

// Moment-matrix backend: <p, q> = p^T M_n q on monomial coefficient vectors of
// length n + 1, normalized so y_0 = 1. Exact up to total degree 2n.
class MomentOracle final : public InnerProductOracle {
 public:
  explicit MomentOracle(const MomentData& data);

  int exactness_degree() const override { return 2 * degree_; }
  Vector constant_one() const override;
  Vector multiply_by_x(const Vector& p) const override;
  double inner(const Vector& p, const Vector& q) const override;

  // Throws DegreeBudgetExceeded when either factor has degree > n.
  double integrate(std::span<const double> p, std::span<const double> q) const;

 private:
  int degree_;
  std::vector<double> y_;  // normalized
};

}  // namespace suploc

#endif  // SUPLOC_MOMENTIO_HPP
