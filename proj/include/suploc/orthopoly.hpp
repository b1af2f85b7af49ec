#ifndef SUPLOC_ORTHOPOLY_HPP
#define SUPLOC_ORTHOPOLY_HPP

#include <span>
#include <vector>

#include "suploc/oracle.hpp"

namespace suploc {

// Monic three-term recurrence x P_j = P_{j+1} + alpha_j P_j + beta_j P_{j-1}.
struct Recurrence {
  std::vector<double> alphas;  // alpha_0 .. alpha_{n-1}
  std::vector<double> betas;   // beta_1 .. beta_{n-1}; betas[j - 1] holds beta_j
  std::vector<double> zetas;   // zeta_j = <P_j, P_j>, j = 0 .. n-1; flushes to 0 past ~1e-308
  double a_inf = 0.0;          // max_j sqrt(beta_j)

  int degree() const noexcept { return static_cast<int>(alphas.size()); }
  double beta(int j) const { return betas.at(static_cast<std::size_t>(j - 1)); }

  // Coefficients for the first n polynomials; recurrences are prefix-stable.
  Recurrence prefix(int n) const;

  // zeta_{n-1} / zeta_0, a cheap conditioning indicator for moment input.
  double conditioning() const;
};

// Symmetric tridiagonal J_n: diagonal alpha_j, off-diagonal sqrt(beta_j) > 0.
struct JacobiMatrix {
  std::vector<double> diagonal;
  std::vector<double> offdiagonal;

  int size() const noexcept { return static_cast<int>(diagonal.size()); }
};

// Discretized Stieltjes procedure, run on orthonormal vectors with full
// reorthogonalization. Requires oracle exactness >= 2n - 1. Throws
// LostPositivity if the mass or some beta_j is not positive.
Recurrence stieltjes(const InnerProductOracle& oracle, int n);

// Orthonormal p_0 .. p_{n-1} (p_j = P_j / sqrt(zeta_j)) in the oracle's own
// representation, as built by stieltjes. Forward recurrence evaluation cannot
// reproduce these near atoms the roots have converged on; the oracle-side
// vectors stay orthogonal there.
std::vector<InnerProductOracle::Vector> orthogonal_basis(const InnerProductOracle& oracle, int n);

// Rank of the moment matrices read off the Gram pivots zeta_j of the monic
// orthogonal basis. Pivot j >= 1 is degenerate when beta_j <= tau * scale^2;
// then rank M_k = min(k + 1, j) for every k. Requires exactness >= 2 * max_index.
struct PivotScan {
  int rank = 0;             // number of leading nondegenerate pivots
  bool degenerate = false;  // some pivot j <= max_index collapsed
  std::vector<double> zetas;
};
PivotScan scan_pivots(const InnerProductOracle& oracle, int max_index, double tau,
                      double scale);

JacobiMatrix jacobi(const Recurrence& rec);
JacobiMatrix jacobi(const Recurrence& rec, int n);

// P_k at each point by forward recurrence from P_{-1} = 0, P_0 = 1.
std::vector<double> eval_monic(const Recurrence& rec, int k, std::span<const double> points);
double eval_monic(const Recurrence& rec, int k, double x);

}  // namespace suploc

#endif  // SUPLOC_ORTHOPOLY_HPP
