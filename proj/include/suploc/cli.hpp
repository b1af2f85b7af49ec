#ifndef SUPLOC_CLI_HPP
#define SUPLOC_CLI_HPP

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "suploc/io.hpp"
#include "suploc/measure.hpp"
#include "suploc/recover.hpp"

namespace suploc {

enum class Scenario { one_interval, two_intervals };

// one_interval:  [c - r, c + r] plus an atom at a + c + r.
// two_intervals: [c - r, c - r/3] u [c + r/3, c + r] plus the same atom.
// The atom carries atom_weight, the intervals split the rest equally.
MeasureSpec scenario_spec(Scenario scenario, double a, double c, double r, double atom_weight = 0.05);

struct SweepConfig {
  std::vector<double> a;
  std::vector<double> c{-0.3, 0.0, 0.3};
  std::vector<double> r;
  std::vector<int> degrees;
  double epsilon = 1e-2;
  RegimeRequest regime = RegimeRequest::automatic;
  Scenario scenario = Scenario::one_interval;
  std::uint64_t seed = 0;
  double noise_sigma = 0.0;
  double atom_weight = 0.05;

  // Error(parse) on unknown fields, Error(invalid_argument) on bad values.
  static SweepConfig from_json(const Json& j);
};

struct SweepRow {
  double a = 0, c = 0, r = 0;
  int degree = 0;
  double epsilon = 0;
  std::string regime;
  bool atom_success = false;
  int n_false_atoms = 0;
  double iou = 0;
  double hausdorff = 0;
  int n_pollution = 0;
  std::string warnings;  // ';'-separated
};

// One row per (a, c, r, N) in that nesting order. Cells run on `threads`
// workers (0 = hardware concurrency); output order does not depend on it.
std::vector<SweepRow> run_sweep(const SweepConfig& config, unsigned threads = 0);

std::string sweep_csv(const std::vector<SweepRow>& rows);
std::vector<SweepRow> parse_sweep_csv(const std::string& text);

// Per (a, r), aggregated over c: smallest N with atom success rate >= 80 %
// and smallest N with mean IoU >= 0.8, each with the value reached ("NA"
// when no N qualifies).
std::string sweep_summary_csv(const std::vector<SweepRow>& rows);

// Exit codes: 0 ok, 2 input error, 3 numerical failure, 4 warning under --strict.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace suploc

#endif  // SUPLOC_CLI_HPP
