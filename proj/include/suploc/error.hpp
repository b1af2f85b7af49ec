#ifndef SUPLOC_ERROR_HPP
#define SUPLOC_ERROR_HPP

#include <stdexcept>
#include <string>
#include <string_view>

namespace suploc {

enum class ErrorKind {
  parse,
  invalid_spec,
  invalid_argument,
  degree_budget_exceeded,
  not_hankel,
  non_positive_mass,
  inconsistent_prefix,
  non_psd,
  lost_positivity,
  degree_out_of_range,
  no_convergence,
  empty_set,
  non_positive_error,
  io,
};

std::string_view to_string(ErrorKind kind);

// True for failures of the numerics themselves rather than of the input.
bool is_numerical(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

// Raised when a recurrence pivot (zeta_j or beta_j) is not strictly positive.
class LostPositivity : public Error {
 public:
  LostPositivity(int index, double value);
  int index() const noexcept { return index_; }
  double value() const noexcept { return value_; }

 private:
  int index_;
  double value_;
};

class NoConvergence : public Error {
 public:
  explicit NoConvergence(int index);
  int index() const noexcept { return index_; }

 private:
  int index_;
};

}  // namespace suploc

#endif  // SUPLOC_ERROR_HPP
