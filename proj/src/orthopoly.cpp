#include "suploc/orthopoly.hpp"

#include <algorithm>
#include <cmath>

#include "suploc/error.hpp"

namespace suploc {

namespace {

using Vector = InnerProductOracle::Vector;

// One pass of the recurrence on orthonormal vectors, so nothing underflows at
// high degree (monic norms decay like capacity^(2n)). Each new vector is
// reorthogonalized against all earlier ones; in exact arithmetic that subtracts
// zero, in floating point it stops ghost copies of well-separated roots (the
// Lanczos failure mode).
class Sweep {
 public:
  explicit Sweep(const InnerProductOracle& oracle) : oracle_(oracle), q_(oracle.constant_one()) {
    mass_ = oracle_.inner(q_, q_);
    if (!(mass_ > 0.0)) throw LostPositivity(0, mass_);
    const double s = 1.0 / std::sqrt(mass_);
    for (double& v : q_) v *= s;
    prev_.assign(q_.size(), 0.0);
  }

  double mass() const { return mass_; }
  const Vector& current() const { return q_; }

  double alpha() {
    xq_ = oracle_.multiply_by_x(q_);
    return oracle_.inner(xq_, q_);
  }

  // q_{j+1} b_{j+1} = (x - alpha_j) q_j - b_j q_{j-1}; returns beta_{j+1} = b_{j+1}^2
  // (not positive means the oracle has run out of rank). Needs alpha() first.
  double advance(double alpha) {
    history_.push_back(q_);
    Vector next(q_.size());
    for (std::size_t i = 0; i < q_.size(); ++i) next[i] = xq_[i] - alpha * q_[i] - b_ * prev_[i];
    for (int pass = 0; pass < 2; ++pass) {
      for (const auto& h : history_) {
        const double c = oracle_.inner(next, h);
        for (std::size_t i = 0; i < next.size(); ++i) next[i] -= c * h[i];
      }
    }
    const double beta = oracle_.inner(next, next);
    if (beta > 0.0) {
      b_ = std::sqrt(beta);
      for (double& v : next) v /= b_;
      prev_ = std::move(q_);
      q_ = std::move(next);
    }
    return beta;
  }

 private:
  const InnerProductOracle& oracle_;
  Vector q_, prev_, xq_;
  double mass_ = 0.0;
  double b_ = 0.0;
  std::vector<Vector> history_;
};

void require_budget(const InnerProductOracle& oracle, int needed) {
  if (oracle.exactness_degree() < needed)
    throw Error(ErrorKind::degree_budget_exceeded,
                "oracle exact to degree " + std::to_string(oracle.exactness_degree()) +
                    ", need " + std::to_string(needed));
}

}  // namespace

Recurrence Recurrence::prefix(int n) const {
  if (n < 0 || n > degree())
    throw Error(ErrorKind::degree_out_of_range, "prefix " + std::to_string(n) + " of degree " +
                                                    std::to_string(degree()));
  Recurrence out;
  out.alphas.assign(alphas.begin(), alphas.begin() + n);
  out.zetas.assign(zetas.begin(), zetas.begin() + n);
  if (n > 1) out.betas.assign(betas.begin(), betas.begin() + (n - 1));
  for (double b : out.betas) out.a_inf = std::max(out.a_inf, std::sqrt(b));
  return out;
}

double Recurrence::conditioning() const {
  if (zetas.empty()) return 1.0;
  return zetas.back() / zetas.front();
}

Recurrence stieltjes(const InnerProductOracle& oracle, int n) {
  if (n < 1) throw Error(ErrorKind::invalid_argument, "stieltjes needs n >= 1");
  require_budget(oracle, 2 * n - 1);

  Recurrence rec;
  rec.alphas.reserve(n);
  rec.zetas.reserve(n);
  rec.betas.reserve(n - 1);

  Sweep sweep(oracle);
  rec.zetas.push_back(sweep.mass());
  for (int j = 0; j < n; ++j) {
    const double alpha = sweep.alpha();
    rec.alphas.push_back(alpha);
    if (j + 1 == n) break;
    const double beta = sweep.advance(alpha);
    if (!(beta > 0.0)) throw LostPositivity(j + 1, beta);
    rec.betas.push_back(beta);
    rec.zetas.push_back(rec.zetas.back() * beta);
    rec.a_inf = std::max(rec.a_inf, std::sqrt(beta));
  }
  return rec;
}

std::vector<InnerProductOracle::Vector> orthogonal_basis(const InnerProductOracle& oracle, int n) {
  if (n < 1) throw Error(ErrorKind::invalid_argument, "orthogonal_basis needs n >= 1");
  require_budget(oracle, 2 * n - 1);
  std::vector<Vector> out;
  Sweep sweep(oracle);
  for (int j = 0; j < n; ++j) {
    out.push_back(sweep.current());
    if (j + 1 == n) break;
    const double beta = sweep.advance(sweep.alpha());
    if (!(beta > 0.0)) throw LostPositivity(j + 1, beta);
  }
  return out;
}

PivotScan scan_pivots(const InnerProductOracle& oracle, int max_index, double tau, double scale) {
  if (max_index < 0) throw Error(ErrorKind::invalid_argument, "negative pivot index");
  require_budget(oracle, 2 * max_index);

  PivotScan scan;
  const double threshold = tau * scale * scale;
  Sweep sweep(oracle);
  scan.zetas.push_back(sweep.mass());
  for (int j = 1; j <= max_index; ++j) {
    const double beta = sweep.advance(sweep.alpha());
    scan.zetas.push_back(scan.zetas.back() * std::max(beta, 0.0));
    if (!(beta > threshold)) {
      scan.degenerate = true;
      scan.rank = j;
      return scan;
    }
  }
  scan.rank = max_index + 1;
  return scan;
}

JacobiMatrix jacobi(const Recurrence& rec) { return jacobi(rec, rec.degree()); }

JacobiMatrix jacobi(const Recurrence& rec, int n) {
  if (n < 0 || n > rec.degree())
    throw Error(ErrorKind::degree_out_of_range,
                "Jacobi size " + std::to_string(n) + " exceeds recurrence degree " +
                    std::to_string(rec.degree()));
  JacobiMatrix j;
  j.diagonal.assign(rec.alphas.begin(), rec.alphas.begin() + n);
  for (int i = 1; i < n; ++i) j.offdiagonal.push_back(std::sqrt(rec.beta(i)));
  return j;
}

double eval_monic(const Recurrence& rec, int k, double x) {
  if (k < 0 || k > rec.degree())
    throw Error(ErrorKind::degree_out_of_range,
                "P_" + std::to_string(k) + " needs more than " + std::to_string(rec.degree()) +
                    " recurrence coefficients");
  double prev = 0.0;
  double cur = 1.0;
  for (int j = 0; j < k; ++j) {
    const double beta = j >= 1 ? rec.beta(j) : 0.0;
    const double next = (x - rec.alphas[j]) * cur - beta * prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

std::vector<double> eval_monic(const Recurrence& rec, int k, std::span<const double> points) {
  std::vector<double> out;
  out.reserve(points.size());
  for (double x : points) out.push_back(eval_monic(rec, k, x));
  return out;
}

}  // namespace suploc
