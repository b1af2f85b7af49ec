#include "suploc/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "suploc/error.hpp"
#include "suploc/orthopoly.hpp"

namespace suploc {

double Matrix::norm_inf() const {
  double best = 0.0;
  for (std::size_t i = 0; i < n_; ++i) {
    double row = 0.0;
    for (std::size_t j = 0; j < n_; ++j) row += std::abs((*this)(i, j));
    best = std::max(best, row);
  }
  return best;
}

RootList::RootList(std::vector<double> roots) : roots_(std::move(roots)) {
  std::sort(roots_.begin(), roots_.end());
}

double RootList::min_gap() const {
  double gap = std::numeric_limits<double>::infinity();
  for (std::size_t i = 1; i < roots_.size(); ++i) gap = std::min(gap, roots_[i] - roots_[i - 1]);
  return gap;
}

bool RootList::is_simple() const {
  if (roots_.size() < 2) return true;
  const double scale = std::max({1.0, std::abs(roots_.front()), std::abs(roots_.back())});
  return min_gap() > 1e-13 * scale;
}

std::vector<double> tridiagonal_eigenvalues(std::span<const double> diag,
                                            std::span<const double> off,
                                            const EigenOptions& options) {
  const std::size_t n = diag.size();
  if (n == 0) return {};
  if (off.size() + 1 != n)
    throw Error(ErrorKind::invalid_argument, "off-diagonal length must be diagonal length - 1");

  std::vector<double> d(diag.begin(), diag.end());
  std::vector<double> e(n, 0.0);  // e[i] couples d[i] and d[i + 1]; e[n - 1] = 0
  std::copy(off.begin(), off.end(), e.begin());

  constexpr double eps = std::numeric_limits<double>::epsilon();
  constexpr double tiny = std::numeric_limits<double>::min();
  const long cap = static_cast<long>(options.iteration_factor) * static_cast<long>(n);
  long sweeps = 0;

  for (std::size_t l = 0; l < n; ++l) {
    for (;;) {
      std::size_t m = l;
      for (; m + 1 < n; ++m) {
        const double dd = std::abs(d[m]) + std::abs(d[m + 1]);
        if (std::abs(e[m]) <= eps * dd || std::abs(e[m]) <= tiny) break;
      }
      if (m == l) break;
      if (++sweeps > cap) throw NoConvergence(static_cast<int>(l));

      // Wilkinson shift from the leading 2x2 block.
      double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
      double r = std::hypot(g, 1.0);
      g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
      double s = 1.0;
      double c = 1.0;
      double p = 0.0;
      bool split = false;
      for (std::size_t i = m; i-- > l;) {
        const double f = s * e[i];
        const double b = c * e[i];
        r = std::hypot(f, g);
        e[i + 1] = r;
        if (r == 0.0) {
          d[i + 1] -= p;
          e[m] = 0.0;
          split = true;
          break;
        }
        s = f / r;
        c = g / r;
        g = d[i + 1] - p;
        r = (d[i] - g) * s + 2.0 * c * b;
        p = s * r;
        d[i + 1] = g + p;
        g = c * r - b;
      }
      if (split) continue;
      d[l] -= p;
      e[l] = g;
      e[m] = 0.0;
    }
  }
  std::sort(d.begin(), d.end());
  return d;
}

Tridiagonal householder_tridiagonalize(const Matrix& input) {
  const std::size_t n = input.rows();
  Tridiagonal out;
  if (n == 0) return out;

  Matrix a(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j <= i; ++j) a(i, j) = a(j, i) = input(i, j);

  std::vector<double> d(n, 0.0);
  std::vector<double> e(n, 0.0);  // e[i] couples rows i - 1 and i
  for (std::size_t i = n - 1; i >= 1; --i) {
    const std::size_t l = i - 1;
    if (l > 0) {
      double scale = 0.0;
      for (std::size_t k = 0; k <= l; ++k) scale += std::abs(a(i, k));
      if (scale == 0.0) {
        e[i] = a(i, l);
      } else {
        double h = 0.0;
        for (std::size_t k = 0; k <= l; ++k) {
          a(i, k) /= scale;
          h += a(i, k) * a(i, k);
        }
        double f = a(i, l);
        double g = f >= 0.0 ? -std::sqrt(h) : std::sqrt(h);
        e[i] = scale * g;
        h -= f * g;
        a(i, l) = f - g;
        f = 0.0;
        for (std::size_t j = 0; j <= l; ++j) {
          g = 0.0;
          for (std::size_t k = 0; k <= j; ++k) g += a(j, k) * a(i, k);
          for (std::size_t k = j + 1; k <= l; ++k) g += a(k, j) * a(i, k);
          e[j] = g / h;
          f += e[j] * a(i, j);
        }
        const double hh = f / (h + h);
        for (std::size_t j = 0; j <= l; ++j) {
          f = a(i, j);
          g = e[j] - hh * f;
          e[j] = g;
          for (std::size_t k = 0; k <= j; ++k) a(j, k) -= f * e[k] + g * a(i, k);
        }
      }
    } else {
      e[i] = a(i, l);
    }
  }
  for (std::size_t i = 0; i < n; ++i) d[i] = a(i, i);

  out.diagonal = std::move(d);
  out.offdiagonal.assign(e.begin() + 1, e.end());
  return out;
}

std::vector<double> symmetric_eigenvalues(const Matrix& a) {
  const Tridiagonal t = householder_tridiagonalize(a);
  return tridiagonal_eigenvalues(t.diagonal, t.offdiagonal);
}

RootList eigenvalues(const JacobiMatrix& jacobi, const EigenOptions& options) {
  return RootList(tridiagonal_eigenvalues(jacobi.diagonal, jacobi.offdiagonal, options));
}

double residual_check(const Recurrence& rec, const RootList& roots) {
  const int n = roots.degree();
  if (n == 0) return 0.0;
  if (n > rec.degree())
    throw Error(ErrorKind::degree_out_of_range, "root list degree exceeds the recurrence");
  const auto& x = roots.roots();
  const double width = x.back() - x.front();
  double worst = 0.0;
  for (double root : x) {
    const double h = 1e-6 * (width > 0.0 ? width : std::max(1.0, std::abs(root)));
    const double at = std::abs(eval_monic(rec, n, root));
    const double local = std::max(std::abs(eval_monic(rec, n, root - h)),
                                  std::abs(eval_monic(rec, n, root + h)));
    if (local > 0.0) worst = std::max(worst, at / local);
    else if (at > 0.0) worst = std::numeric_limits<double>::infinity();
  }
  return worst;
}

}  // namespace suploc
