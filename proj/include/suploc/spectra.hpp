#ifndef SUPLOC_SPECTRA_HPP
#define SUPLOC_SPECTRA_HPP

#include <span>
#include <vector>

#include "suploc/matrix.hpp"

namespace suploc {

struct JacobiMatrix;
struct Recurrence;

// Sorted zeros x_{1,n} < ... < x_{n,n} of the degree-n orthogonal polynomial.
class RootList {
 public:
  RootList() = default;
  explicit RootList(std::vector<double> roots);  // sorts

  int degree() const noexcept { return static_cast<int>(roots_.size()); }
  const std::vector<double>& roots() const noexcept { return roots_; }
  bool empty() const noexcept { return roots_.empty(); }
  double operator[](std::size_t i) const { return roots_[i]; }

  // Smallest gap between consecutive roots; +inf for fewer than two roots.
  double min_gap() const;

  // Strictly increasing with every gap above 1e-13 * scale, where scale is
  // max(1, largest |root|).
  bool is_simple() const;

 private:
  std::vector<double> roots_;
};

// Options for the implicit QL kernel.
struct EigenOptions {
  int iteration_factor = 50;  // total sweep cap is iteration_factor * n
};

// All eigenvalues of the symmetric tridiagonal matrix with the given diagonal
// and off-diagonal (off.size() == diag.size() - 1), ascending. Zero
// off-diagonal entries are allowed; the matrix then splits into blocks.
// Implicit QL with Wilkinson shifts, no eigenvectors.
std::vector<double> tridiagonal_eigenvalues(std::span<const double> diag,
                                            std::span<const double> off,
                                            const EigenOptions& options = {});

// Householder reduction of a dense symmetric matrix to tridiagonal form.
// Only the lower triangle of `a` is read.
struct Tridiagonal {
  std::vector<double> diagonal;
  std::vector<double> offdiagonal;
};
Tridiagonal householder_tridiagonalize(const Matrix& a);

// Eigenvalues of a dense symmetric matrix, ascending.
std::vector<double> symmetric_eigenvalues(const Matrix& a);

// Spectrum of J_n, i.e. the zeros of P_n.
RootList eigenvalues(const JacobiMatrix& jacobi, const EigenOptions& options = {});

// Max over roots of |P_n(x)| / max(|P_n(x - h)|, |P_n(x + h)|), h = 1e-6 * width
// of the root span (or of max(1, |x|) for a single root). Cross-validates the
// eigensolver against the forward recurrence.
double residual_check(const Recurrence& rec, const RootList& roots);

}  // namespace suploc

#endif  // SUPLOC_SPECTRA_HPP
