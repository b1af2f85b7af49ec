#include "suploc/momentio.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "suploc/error.hpp"
#include "suploc/orthopoly.hpp"
#include "suploc/spectra.hpp"

namespace suploc {

MomentData MomentData::from_moments(std::vector<double> y) {
  if (y.empty() || y.size() % 2 == 0)
    throw Error(ErrorKind::invalid_argument,
                "moment list needs odd length 2n + 1, got " + std::to_string(y.size()));
  for (double v : y)
    if (!std::isfinite(v)) throw Error(ErrorKind::invalid_argument, "moments must be finite");
  if (!(y.front() > 0.0)) throw Error(ErrorKind::non_positive_mass, "y_0 must be positive");
  return MomentData(std::move(y));
}

MomentData MomentData::from_matrix(const Matrix& m, double rel_tol) {
  const std::size_t size = m.rows();
  if (size == 0) throw Error(ErrorKind::invalid_argument, "empty moment matrix");
  const std::size_t n = size - 1;
  std::vector<double> y(2 * n + 1);
  for (std::size_t k = 0; k <= 2 * n; ++k) y[k] = k <= n ? m(0, k) : m(k - n, n);
  double scale = 0.0;
  for (double v : y) scale = std::max(scale, std::abs(v));
  for (std::size_t i = 0; i < size; ++i) {
    for (std::size_t j = 0; j < size; ++j) {
      if (std::abs(m(i, j) - y[i + j]) > rel_tol * scale) {
        std::ostringstream os;
        os.precision(17);
        os << "entry (" << i << "," << j << ") = " << m(i, j) << " differs from y_" << i + j
           << " = " << y[i + j];
        throw Error(ErrorKind::not_hankel, os.str());
      }
    }
  }
  return from_moments(std::move(y));
}

Matrix MomentData::hankel() const {
  const std::size_t size = static_cast<std::size_t>(degree()) + 1;
  Matrix m(size);
  for (std::size_t i = 0; i < size; ++i)
    for (std::size_t j = 0; j < size; ++j) m(i, j) = y_[i + j];
  return m;
}

MomentData MomentData::truncated(int n) const {
  if (n < 0 || n > degree())
    throw Error(ErrorKind::degree_out_of_range,
                "cannot truncate degree " + std::to_string(degree()) + " data to " + std::to_string(n));
  return MomentData(std::vector<double>(y_.begin(), y_.begin() + (2 * n + 1)));
}

PsdReport psd_check(const MomentData& data, double tol) {
  const Matrix m = data.hankel();
  const auto eig = symmetric_eigenvalues(m);
  PsdReport report;
  report.min_eig = eig.front();
  report.norm = m.norm_inf();
  report.ok = report.min_eig >= -tol * std::max(1.0, report.norm);
  report.indefinite = report.ok && report.min_eig < 0.0;
  return report;
}

namespace {

struct BasisFrame {
  double center = 0.0;
  double half_width = 1.0;
};

// Convex hull of the zeros of P_k, k <= 8, from a short Stieltjes run on the
// moments; stops early where the recurrence degenerates (atomic data), in
// which case the zeros are the atoms themselves.
BasisFrame estimate_frame(const MomentData& data) {
  const MomentOracle oracle(data);
  const int k_max = std::min(data.degree(), 8);
  Recurrence rec;
  InnerProductOracle::Vector p = oracle.constant_one();
  InnerProductOracle::Vector q(p.size(), 0.0);
  for (int j = 0; j < k_max; ++j) {
    const double zeta = oracle.inner(p, p);
    if (j >= 1 && !(zeta > 1e-12 * rec.zetas.back())) break;
    if (!(zeta > 0.0)) break;
    const auto xp = oracle.multiply_by_x(p);
    const double alpha = oracle.inner(xp, p) / zeta;
    const double beta = j >= 1 ? zeta / rec.zetas.back() : 0.0;
    if (j >= 1) rec.betas.push_back(beta);
    rec.zetas.push_back(zeta);
    rec.alphas.push_back(alpha);
    for (std::size_t i = 0; i < p.size(); ++i) {
      const double next = xp[i] - alpha * p[i] - beta * q[i];
      q[i] = p[i];
      p[i] = next;
    }
  }
  BasisFrame frame;
  if (rec.alphas.empty()) return frame;
  const auto roots = eigenvalues(jacobi(rec)).roots();
  frame.center = 0.5 * (roots.front() + roots.back());
  const double half = 0.5 * (roots.back() - roots.front());
  frame.half_width = half > 0.0 ? 1.1 * half : std::max(1.0, std::abs(frame.center));
  return frame;
}

struct FramedGram {
  Matrix gram;
  double noise = 0.0;  // rounding bound on ||error||, from |T|^T |H| |T|
};

// Gram matrix of T_0 .. T_n((x - center) / half_width) under the moments.
FramedGram chebyshev_gram(const MomentData& data, int n, const BasisFrame& frame) {
  const std::size_t size = static_cast<std::size_t>(n) + 1;
  const auto& y = data.moments();
  const double y0 = y.front();
  // columns[k] = monomial coefficients of T_k(t), t = (x - c) / h
  std::vector<std::vector<double>> columns(size, std::vector<double>(size, 0.0));
  auto times_t = [&](const std::vector<double>& poly) {
    std::vector<double> out(size, 0.0);
    for (std::size_t i = 0; i < size; ++i) {
      if (poly[i] == 0.0) continue;
      if (i + 1 < size) out[i + 1] += poly[i] / frame.half_width;
      out[i] -= poly[i] * frame.center / frame.half_width;
    }
    return out;
  };
  columns[0][0] = 1.0;
  if (size > 1) columns[1] = times_t(columns[0]);
  for (std::size_t k = 2; k < size; ++k) {
    auto next = times_t(columns[k - 1]);
    for (std::size_t i = 0; i < size; ++i) next[i] = 2.0 * next[i] - columns[k - 2][i];
    columns[k] = std::move(next);
  }
  // H * T, then T^T * (H * T)
  Matrix ht(size), abs_ht(size);
  for (std::size_t i = 0; i < size; ++i)
    for (std::size_t k = 0; k < size; ++k) {
      double acc = 0.0, abs_acc = 0.0;
      for (std::size_t j = 0; j < size; ++j) {
        acc += y[i + j] / y0 * columns[k][j];
        abs_acc += std::abs(y[i + j] / y0 * columns[k][j]);
      }
      ht(i, k) = acc;
      abs_ht(i, k) = abs_acc;
    }
  FramedGram out{Matrix(size), 0.0};
  Matrix abs_gram(size);
  for (std::size_t k = 0; k < size; ++k)
    for (std::size_t l = 0; l <= k; ++l) {
      double acc = 0.0, abs_acc = 0.0;
      for (std::size_t i = 0; i < size; ++i) {
        acc += columns[k][i] * ht(i, l);
        abs_acc += std::abs(columns[k][i]) * abs_ht(i, l);
      }
      out.gram(k, l) = out.gram(l, k) = acc;
      abs_gram(k, l) = abs_gram(l, k) = abs_acc;
    }
  out.noise = 4.0 * static_cast<double>(size) * std::numeric_limits<double>::epsilon() *
              abs_gram.norm_inf();
  return out;
}

int rank_in_frame(const FramedGram& g, double tau) {
  const auto eig = symmetric_eigenvalues(g.gram);
  double top = 0.0;
  for (double e : eig) top = std::max(top, std::abs(e));
  const double floor = std::max(tau * top, g.noise);
  int rank = 0;
  for (double e : eig)
    if (std::abs(e) > floor) ++rank;
  return rank;
}

// The hull frame is best conditioned unless the support sits far from the
// origin relative to its width; then the monomial coefficients of the shifted
// T_k cancel catastrophically and an origin-centred frame does better. Both
// floors bound the rounding noise, so the larger count wins.
struct Frames {
  BasisFrame hull, origin;
};

Frames frames_for(const MomentData& data) {
  const BasisFrame hull = estimate_frame(data);
  return {hull, {0.0, std::max(std::abs(hull.center) + hull.half_width, 1e-300)}};
}

int rank_of(const MomentData& data, double tau, const Frames& f) {
  const int n = data.degree();
  return std::max(rank_in_frame(chebyshev_gram(data, n, f.hull), tau),
                  rank_in_frame(chebyshev_gram(data, n, f.origin), tau));
}

}  // namespace

int numerical_rank(const MomentData& data, double tau) {
  return rank_of(data, tau, frames_for(data));
}

RankReport flatness(const MomentData& current, const MomentData& next, double tau) {
  if (next.degree() != current.degree() + 1)
    throw Error(ErrorKind::inconsistent_prefix,
                "expected degrees n and n + 1, got " + std::to_string(current.degree()) + " and " +
                    std::to_string(next.degree()));
  const auto& a = current.moments();
  const auto& b = next.moments();
  if (!std::equal(a.begin(), a.end(), b.begin()))
    throw Error(ErrorKind::inconsistent_prefix, "moment prefixes differ");

  // One frame for both so the two ranks are measured in the same basis.
  const Frames frames = frames_for(current);
  RankReport report;
  report.tau = tau;
  report.rank_n = rank_of(current, tau, frames);
  report.rank_n_plus_1 = rank_of(next, tau, frames);
  report.flat = report.rank_n == report.rank_n_plus_1;
  const PsdReport psd = psd_check(next, tau);
  report.min_eig = psd.min_eig;
  report.indefinite = psd.indefinite;
  return report;
}

MomentOracle::MomentOracle(const MomentData& data) : degree_(data.degree()), y_(data.moments()) {
  const double y0 = y_.front();
  for (double& v : y_) v /= y0;
}

InnerProductOracle::Vector MomentOracle::constant_one() const {
  Vector one(static_cast<std::size_t>(degree_) + 1, 0.0);
  one[0] = 1.0;
  return one;
}

InnerProductOracle::Vector MomentOracle::multiply_by_x(const Vector& p) const {
  if (p.back() != 0.0)
    throw Error(ErrorKind::degree_budget_exceeded,
                "x * p exceeds moment degree " + std::to_string(degree_));
  Vector out(p.size(), 0.0);
  for (std::size_t i = 0; i + 1 < p.size(); ++i) out[i + 1] = p[i];
  return out;
}

double MomentOracle::inner(const Vector& p, const Vector& q) const {
  double acc = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] == 0.0) continue;
    double row = 0.0;
    for (std::size_t j = 0; j < q.size(); ++j) row += y_[i + j] * q[j];
    acc += p[i] * row;
  }
  return acc;
}

double MomentOracle::integrate(std::span<const double> p, std::span<const double> q) const {
  auto degree_of = [](std::span<const double> v) {
    for (std::size_t i = v.size(); i-- > 0;)
      if (v[i] != 0.0) return static_cast<int>(i);
    return 0;
  };
  if (degree_of(p) > degree_ || degree_of(q) > degree_)
    throw Error(ErrorKind::degree_budget_exceeded,
                "factor degree exceeds moment matrix degree " + std::to_string(degree_));
  double acc = 0.0;
  for (std::size_t i = 0; i < p.size() && i <= static_cast<std::size_t>(degree_); ++i)
    for (std::size_t j = 0; j < q.size() && j <= static_cast<std::size_t>(degree_); ++j)
      acc += p[i] * q[j] * y_[i + j];
  return acc;
}

}  // namespace suploc
