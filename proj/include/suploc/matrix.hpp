#ifndef SUPLOC_MATRIX_HPP
#define SUPLOC_MATRIX_HPP

#include <cstddef>
#include <vector>

namespace suploc {

// Dense square matrix, row-major. Small sizes only (moment matrices are at
// most a few dozen rows).
class Matrix {
 public:
  Matrix() = default;
  explicit Matrix(std::size_t n, double fill = 0.0) : n_(n), data_(n * n, fill) {}

  std::size_t rows() const noexcept { return n_; }
  std::size_t cols() const noexcept { return n_; }
  bool empty() const noexcept { return n_ == 0; }

  double& operator()(std::size_t i, std::size_t j) { return data_[i * n_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data_[i * n_ + j]; }

  // Maximum absolute row sum.
  double norm_inf() const;

  bool operator==(const Matrix&) const = default;

 private:
  std::size_t n_ = 0;
  std::vector<double> data_;
};

}  // namespace suploc

#endif  // SUPLOC_MATRIX_HPP
