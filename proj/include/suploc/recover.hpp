#ifndef SUPLOC_RECOVER_HPP
#define SUPLOC_RECOVER_HPP

#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "suploc/interval.hpp"
#include "suploc/measure.hpp"
#include "suploc/momentio.hpp"
#include "suploc/spectra.hpp"

namespace suploc {

// Caller-side regime: one of the structural regimes, or a heuristic pick.
enum class RegimeRequest { flat, single_interval, atoms_outside, general, automatic };

std::string_view to_string(RegimeRequest request);
// Accepts the CLI spellings flat|single|outside|general|auto.
RegimeRequest parse_regime_request(std::string_view text);

enum class Warning {
  regime_mismatch,   // requested regime contradicted by the root structure
  low_degree,        // no interval reported; N too small to see a bulk
  indefinite_input,  // moment matrix slightly indefinite, within tolerance
  degree_capped,     // N reduced to what the moment data supports
  inconsistent,      // estimate not stable between N and N + 2
};

std::string_view to_string(Warning warning);

struct ClassifiedRoots {
  std::vector<double> isolated;   // no root closer than epsilon
  std::vector<double> clustered;  // part of a bulk of >= 3 epsilon-linked roots
  std::vector<std::pair<double, double>> pairs;  // mutual sole epsilon-neighbours
};

// Partition of the roots. r has an epsilon-neighbour iff some other root is
// strictly closer than epsilon. A root whose only neighbour has no other
// neighbour forms a pair with it; every other root with a neighbour is clustered.
ClassifiedRoots classify(const RootList& roots, double epsilon);

// Splits sorted clustered roots wherever consecutive roots are >= epsilon
// apart; each bulk is reported as [min, max].
std::vector<Interval> bulks_to_intervals(std::span<const double> clustered, double epsilon);

// epsilon^2 / (epsilon + sqrt(2) a_inf).
double rho_threshold(double epsilon, double a_inf);

struct SupportEstimate {
  double epsilon = 0.0;
  Regime regime = Regime::general;
  int degree_used = 0;
  std::vector<double> atoms;
  std::vector<Interval> intervals;
  std::vector<double> pollution;  // roots judged outside the support
  std::vector<double> absorbed;   // isolated roots lying inside a reported interval
  double a_inf = 0.0;
  double rho = 0.0;               // pollution threshold, general regime only
  std::vector<Warning> warnings;

  bool has_warning(Warning w) const;
};

struct SuplocOptions {
  double epsilon = 1e-2;
  RegimeRequest regime = RegimeRequest::automatic;
  int degree = 40;     // N
  double tau = 1e-8;   // relative rank tolerance for the flat test
};

// Support recovery from a synthetic measure through its quadrature oracle.
SupportEstimate suploc(const MeasureSpec& spec, const SuplocOptions& options);

// Support recovery from (pseudo)moments through the moment-matrix backend.
// N is capped at what the data supports (flagged degree_capped). Throws
// Error(non_psd) when the Hankel matrix is indefinite beyond tau.
SupportEstimate suploc(const MomentData& data, const SuplocOptions& options);

// Same number of atoms and intervals, every coordinate within `tolerance`.
bool consistent(const SupportEstimate& a, const SupportEstimate& b, double tolerance);

// Runs suploc at N = options.degree, N + 2, ... until two consecutive
// estimates without LowDegree are consistent (within epsilon) or max_degree
// is reached, in which case the last estimate carries Warning::inconsistent.
SupportEstimate suploc_adaptive(const MeasureSpec& spec, SuplocOptions options, int max_degree);

}  // namespace suploc

#endif  // SUPLOC_RECOVER_HPP
