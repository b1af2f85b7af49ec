#include "suploc/error.hpp"

#include <sstream>

namespace suploc {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::parse: return "ParseError";
    case ErrorKind::invalid_spec: return "InvalidSpec";
    case ErrorKind::invalid_argument: return "InvalidArgument";
    case ErrorKind::degree_budget_exceeded: return "DegreeBudgetExceeded";
    case ErrorKind::not_hankel: return "NotHankel";
    case ErrorKind::non_positive_mass: return "NonPositiveMass";
    case ErrorKind::inconsistent_prefix: return "InconsistentPrefix";
    case ErrorKind::non_psd: return "NonPSD";
    case ErrorKind::lost_positivity: return "LostPositivity";
    case ErrorKind::degree_out_of_range: return "DegreeOutOfRange";
    case ErrorKind::no_convergence: return "NoConvergence";
    case ErrorKind::empty_set: return "EmptySet";
    case ErrorKind::non_positive_error: return "NonPositiveError";
    case ErrorKind::io: return "IOError";
  }
  return "Error";
}

bool is_numerical(ErrorKind kind) {
  return kind == ErrorKind::lost_positivity || kind == ErrorKind::no_convergence;
}

namespace {

std::string describe_pivot(int index, double value) {
  std::ostringstream os;
  os.precision(17);
  os << "recurrence pivot " << index << " is " << value << " (oracle not positive definite)";
  return os.str();
}

}  // namespace

LostPositivity::LostPositivity(int index, double value)
    : Error(ErrorKind::lost_positivity, describe_pivot(index, value)), index_(index), value_(value) {}

NoConvergence::NoConvergence(int index)
    : Error(ErrorKind::no_convergence,
            "iteration cap reached while isolating eigenvalue " + std::to_string(index)),
      index_(index) {}

}  // namespace suploc
