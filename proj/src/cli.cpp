#include "suploc/cli.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <map>
#include <ostream>
#include <random>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "suploc/error.hpp"
#include "suploc/metrics.hpp"

namespace suploc {

namespace {

std::string fmt(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return {buf, res.ptr};
}

double parse_double(const std::string& s) {
  if (s == "nan") return std::nan("");
  if (s == "inf") return INFINITY;
  if (s == "-inf") return -INFINITY;
  double v = 0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size())
    throw Error(ErrorKind::parse, "bad number '" + s + "' in sweep CSV");
  return v;
}

std::string join_warnings(const std::vector<Warning>& ws) {
  std::string out;
  for (Warning w : ws) {
    if (!out.empty()) out += ';';
    out += to_string(w);
  }
  return out;
}

// y_0 .. y_{2 degree}, optionally perturbed.
MomentData noisy_moments(const MeasureSpec& spec, int degree, double sigma, std::mt19937_64& rng) {
  auto y = moments(spec, 2 * degree);
  std::uniform_real_distribution<double> noise(-sigma, sigma);
  if (sigma > 0.0)
    for (double& v : y) v += noise(rng);
  return MomentData::from_moments(std::move(y));
}

std::vector<double> true_atoms(const MeasureSpec& spec) {
  std::vector<double> out;
  for (const auto& a : spec.atoms()) out.push_back(a.position);
  return out;
}

std::vector<Interval> true_intervals(const MeasureSpec& spec) {
  std::vector<Interval> out;
  for (const auto& i : spec.intervals()) out.push_back({i.lower, i.upper});
  return out;
}

struct Cell {
  double a, c, r;
  int degree;
};

SweepRow run_cell(const SweepConfig& cfg, const Cell& cell, std::size_t index) {
  SweepRow row;
  row.a = cell.a;
  row.c = cell.c;
  row.r = cell.r;
  row.degree = cell.degree;
  row.epsilon = cfg.epsilon;
  row.regime = std::string(to_string(cfg.regime));
  row.iou = row.hausdorff = std::nan("");

  std::optional<MeasureSpec> spec;
  try {
    spec = scenario_spec(cfg.scenario, cell.a, cell.c, cell.r, cfg.atom_weight);
  } catch (const Error&) {
    // Collapsed or overlapping geometry: nothing to recover.
    row.warnings = std::string(to_string(Warning::regime_mismatch));
    return row;
  }

  SuplocOptions opts;
  opts.epsilon = cfg.epsilon;
  opts.regime = cfg.regime;
  opts.degree = cell.degree;

  SupportEstimate est;
  try {
    if (cfg.noise_sigma > 0.0) {
      std::seed_seq seq{cfg.seed, static_cast<std::uint64_t>(index)};
      std::mt19937_64 rng(seq);
      est = suploc(noisy_moments(*spec, cell.degree + 1, cfg.noise_sigma, rng), opts);
    } else {
      est = suploc(*spec, opts);
    }
  } catch (const Error& e) {
    row.warnings = std::string(to_string(e.kind()));
    return row;
  }

  row.regime = std::string(to_string(est.regime));
  const auto success = atom_success(true_atoms(*spec), est.atoms, cfg.epsilon);
  row.atom_success = success.overall;
  row.n_false_atoms = success.false_positives;
  row.iou = interval_iou(true_intervals(*spec), est.intervals);
  const SupportSet found = SupportSet::of(est);
  if (!found.empty()) row.hausdorff = hausdorff(SupportSet::of(*spec), found);
  row.n_pollution = static_cast<int>(est.pollution.size());
  row.warnings = join_warnings(est.warnings);
  return row;
}

template <class T>
std::vector<T> list_of(const Json& j, const char* key) {
  if (!j.contains(key)) throw Error(ErrorKind::parse, std::string("sweep config needs '") + key + "'");
  const Json& v = j.at(key);
  if (!v.is_array()) throw Error(ErrorKind::parse, std::string("'") + key + "' must be an array");
  std::vector<T> out;
  for (const Json& x : v) {
    if (!x.is_number()) throw Error(ErrorKind::parse, std::string("'") + key + "' must hold numbers");
    if constexpr (std::is_integral_v<T>) {
      if (!x.is_number_integer()) throw Error(ErrorKind::parse, std::string("'") + key + "' must hold integers");
    }
    out.push_back(x.get<T>());
  }
  if (out.empty()) throw Error(ErrorKind::invalid_argument, std::string("'") + key + "' must be nonempty");
  return out;
}

int exit_code(const Error& e) { return is_numerical(e.kind()) ? 3 : 2; }

}  // namespace

MeasureSpec scenario_spec(Scenario scenario, double a, double c, double r, double atom_weight) {
  if (!(atom_weight > 0.0 && atom_weight < 1.0))
    throw Error(ErrorKind::invalid_spec, "atom_weight must lie in (0, 1)");
  const std::vector<AtomPart> atoms{{a + c + r, atom_weight}};
  const double rest = 1.0 - atom_weight;
  if (scenario == Scenario::one_interval)
    return MeasureSpec(atoms, {{c - r, c + r, rest, Density::uniform}});
  return MeasureSpec(atoms, {{c - r, c - r / 3.0, rest / 2.0, Density::uniform},
                             {c + r / 3.0, c + r, rest / 2.0, Density::uniform}});
}

SweepConfig SweepConfig::from_json(const Json& j) {
  if (!j.is_object()) throw Error(ErrorKind::parse, "sweep config must be a JSON object");
  for (const auto& [key, value] : j.items()) {
    static const char* known[] = {"a", "c", "r", "degrees", "epsilon", "regime", "scenario",
                                  "seed", "noise_sigma", "atom_weight"};
    if (std::none_of(std::begin(known), std::end(known), [&](const char* k) { return key == k; }))
      throw Error(ErrorKind::parse, "unknown field '" + key + "' in sweep config");
  }
  SweepConfig cfg;
  cfg.a = list_of<double>(j, "a");
  if (j.contains("c")) cfg.c = list_of<double>(j, "c");
  cfg.r = list_of<double>(j, "r");
  cfg.degrees = list_of<int>(j, "degrees");
  try {
    if (j.contains("epsilon")) cfg.epsilon = j.at("epsilon").get<double>();
    if (j.contains("regime")) cfg.regime = parse_regime_request(j.at("regime").get<std::string>());
    if (j.contains("scenario")) {
      const auto s = j.at("scenario").get<std::string>();
      if (s == "one_interval") cfg.scenario = Scenario::one_interval;
      else if (s == "two_intervals") cfg.scenario = Scenario::two_intervals;
      else throw Error(ErrorKind::invalid_argument, "unknown scenario '" + s + "'");
    }
    if (j.contains("seed")) cfg.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("noise_sigma")) cfg.noise_sigma = j.at("noise_sigma").get<double>();
    if (j.contains("atom_weight")) cfg.atom_weight = j.at("atom_weight").get<double>();
  } catch (const Json::type_error& e) {
    throw Error(ErrorKind::parse, std::string("sweep config: ") + e.what());
  }
  if (!(cfg.epsilon > 0.0)) throw Error(ErrorKind::invalid_argument, "epsilon must be positive");
  if (!(cfg.noise_sigma >= 0.0)) throw Error(ErrorKind::invalid_argument, "noise_sigma must be >= 0");
  if (!(cfg.atom_weight > 0.0 && cfg.atom_weight < 1.0))
    throw Error(ErrorKind::invalid_argument, "atom_weight must lie in (0, 1)");
  for (int n : cfg.degrees)
    if (n < 1) throw Error(ErrorKind::invalid_argument, "degrees must be >= 1");
  return cfg;
}

std::vector<SweepRow> run_sweep(const SweepConfig& cfg, unsigned threads) {
  std::vector<Cell> cells;
  for (double a : cfg.a)
    for (double c : cfg.c)
      for (double r : cfg.r)
        for (int n : cfg.degrees) cells.push_back({a, c, r, n});

  std::vector<SweepRow> rows(cells.size());
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(1, cells.size())));

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < cells.size(); i = next++) rows[i] = run_cell(cfg, cells[i], i);
  };
  std::vector<std::jthread> pool;
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  return rows;
}

static const char* kSweepHeader =
    "a,c,r,N,epsilon,regime,atom_success,n_false_atoms,iou,hausdorff,n_pollution,warnings";

std::string sweep_csv(const std::vector<SweepRow>& rows) {
  std::ostringstream os;
  os << kSweepHeader << '\n';
  for (const SweepRow& r : rows) {
    os << fmt(r.a) << ',' << fmt(r.c) << ',' << fmt(r.r) << ',' << r.degree << ',' << fmt(r.epsilon)
       << ',' << r.regime << ',' << (r.atom_success ? "true" : "false") << ',' << r.n_false_atoms
       << ',' << fmt(r.iou) << ',' << fmt(r.hausdorff) << ',' << r.n_pollution << ',' << r.warnings
       << '\n';
  }
  return os.str();
}

std::vector<SweepRow> parse_sweep_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || line != kSweepHeader)
    throw Error(ErrorKind::parse, "not a sweep CSV (header mismatch)");
  std::vector<SweepRow> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> f;
    std::string field;
    std::istringstream ls(line);
    while (std::getline(ls, field, ',')) f.push_back(field);
    if (!line.empty() && line.back() == ',') f.emplace_back();
    if (f.size() != 12) throw Error(ErrorKind::parse, "sweep CSV row needs 12 fields: " + line);
    SweepRow r;
    r.a = parse_double(f[0]);
    r.c = parse_double(f[1]);
    r.r = parse_double(f[2]);
    r.degree = static_cast<int>(parse_double(f[3]));
    r.epsilon = parse_double(f[4]);
    r.regime = f[5];
    r.atom_success = f[6] == "true";
    r.n_false_atoms = static_cast<int>(parse_double(f[7]));
    r.iou = parse_double(f[8]);
    r.hausdorff = parse_double(f[9]);
    r.n_pollution = static_cast<int>(parse_double(f[10]));
    r.warnings = f[11];
    rows.push_back(std::move(r));
  }
  return rows;
}

std::string sweep_summary_csv(const std::vector<SweepRow>& rows) {
  struct Tally {
    int cells = 0, successes = 0;
    double iou_sum = 0;
    int iou_count = 0;
  };
  std::map<std::pair<double, double>, std::map<int, Tally>> groups;
  for (const SweepRow& row : rows) {
    Tally& t = groups[{row.a, row.r}][row.degree];
    ++t.cells;
    t.successes += row.atom_success ? 1 : 0;
    if (!std::isnan(row.iou)) {
      t.iou_sum += row.iou;
      ++t.iou_count;
    }
  }
  std::ostringstream os;
  os << "a,r,min_N_atom,success_rate,min_N_iou,mean_iou\n";
  for (const auto& [key, by_degree] : groups) {
    os << fmt(key.first) << ',' << fmt(key.second) << ',';
    std::string atom = "NA,NA", iou = "NA,NA";
    for (const auto& [n, t] : by_degree) {
      const double rate = static_cast<double>(t.successes) / t.cells;
      if (rate >= 0.8) {
        atom = std::to_string(n) + ',' + fmt(rate);
        break;
      }
    }
    for (const auto& [n, t] : by_degree) {
      const double mean = t.iou_count ? t.iou_sum / t.iou_count : 0.0;
      if (mean >= 0.8) {
        iou = std::to_string(n) + ',' + fmt(mean);
        break;
      }
    }
    os << atom << ',' << iou << '\n';
  }
  return os.str();
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Support recovery of measures from moments via orthogonal-polynomial roots"};
  app.require_subcommand(1);

  std::string input = "-", output = "-", regime_text = "auto";
  double epsilon = 1e-2, tau = 1e-8, noise_sigma = 0.0;
  int degree = 40, max_degree = 0;
  std::uint64_t seed = 0;
  bool strict = false;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("input", input, "input file, or - for stdin")->required();
    sub->add_option("--out", output, "output file, or - for stdout");
  };

  auto* moments_cmd = app.add_subcommand("moments", "moment file of a measure spec");
  add_common(moments_cmd);
  moments_cmd->add_option("--degree", degree, "writes y_0 .. y_{2 degree}")->check(CLI::NonNegativeNumber);
  moments_cmd->add_option("--noise-sigma", noise_sigma, "uniform +-sigma perturbation")->check(CLI::NonNegativeNumber);
  moments_cmd->add_option("--seed", seed, "noise seed");

  auto* recover_cmd = app.add_subcommand("recover", "estimate the support from a spec or moment file");
  add_common(recover_cmd);
  recover_cmd->add_option("--epsilon", epsilon, "clustering radius")->check(CLI::PositiveNumber);
  recover_cmd->add_option("--degree", degree, "polynomial degree N")->check(CLI::PositiveNumber);
  recover_cmd->add_option("--max-degree", max_degree, "step N by 2 up to this degree until stable");
  recover_cmd->add_option("--regime", regime_text, "flat|single|outside|general|auto")
      ->check(CLI::IsMember({"flat", "single", "outside", "general", "auto"}));
  recover_cmd->add_option("--tau", tau, "relative rank tolerance")->check(CLI::PositiveNumber);
  recover_cmd->add_option("--noise-sigma", noise_sigma, "perturb moments before recovery")->check(CLI::NonNegativeNumber);
  recover_cmd->add_option("--seed", seed, "noise seed");
  recover_cmd->add_flag("--strict", strict, "exit 4 when the estimate carries warnings");

  auto* sweep_cmd = app.add_subcommand("sweep", "run a parameter sweep from a JSON config");
  add_common(sweep_cmd);
  sweep_cmd->add_option("--noise-sigma", noise_sigma, "overrides the config")->check(CLI::NonNegativeNumber);
  sweep_cmd->add_option("--seed", seed, "overrides the config");
  sweep_cmd->add_flag("--strict", strict, "exit 4 when any row carries warnings");

  auto* report_cmd = app.add_subcommand("report", "summarise a sweep CSV per (a, r)");
  add_common(report_cmd);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  auto emit = [&](const std::string& path, const std::string& text) {
    if (path == "-")
      out << text;
    else
      write_text(path, text);
  };

  try {
    if (moments_cmd->parsed()) {
      const MeasureSpec spec = spec_from_json(read_json(input));
      std::mt19937_64 rng(seed);
      emit(output, to_json(noisy_moments(spec, degree, noise_sigma, rng)).dump() + "\n");
      return 0;
    }

    if (recover_cmd->parsed()) {
      SuplocOptions opts;
      opts.epsilon = epsilon;
      opts.degree = degree;
      opts.tau = tau;
      opts.regime = parse_regime_request(regime_text);

      const Json j = read_json(input);
      const InputKind kind = detect_input(j);
      std::optional<MeasureSpec> spec;
      SupportEstimate est;
      if (kind == InputKind::spec) {
        spec = spec_from_json(j);
        if (noise_sigma > 0.0) {
          std::mt19937_64 rng(seed);
          est = suploc(noisy_moments(*spec, degree + 1, noise_sigma, rng), opts);
        } else if (max_degree > 0) {
          est = suploc_adaptive(*spec, opts, max_degree);
        } else {
          est = suploc(*spec, opts);
        }
      } else if (kind == InputKind::moments) {
        MomentData data = moments_from_json(j);
        if (noise_sigma > 0.0) {
          std::mt19937_64 rng(seed);
          std::uniform_real_distribution<double> noise(-noise_sigma, noise_sigma);
          auto y = data.moments();
          for (double& v : y) v += noise(rng);
          data = MomentData::from_moments(std::move(y));
        }
        est = suploc(data, opts);
      } else {
        throw Error(ErrorKind::parse, "recover expects a measure spec or a moment file");
      }

      emit(output, to_json(est).dump(2) + "\n");
      std::ostream& summary = output == "-" ? err : out;
      summary << "regime=" << to_string(est.regime) << " N=" << est.degree_used
              << " atoms=" << est.atoms.size() << " intervals=" << est.intervals.size()
              << " pollution=" << est.pollution.size();
      if (spec) {
        const SupportSet found = SupportSet::of(est);
        summary << " d_H=" << (found.empty() ? std::string("nan")
                                             : fmt(hausdorff(SupportSet::of(*spec), found)));
      }
      if (!est.warnings.empty()) summary << " warnings=" << join_warnings(est.warnings);
      summary << '\n';
      return strict && !est.warnings.empty() ? 4 : 0;
    }

    if (sweep_cmd->parsed()) {
      SweepConfig cfg = SweepConfig::from_json(read_json(input));
      if (sweep_cmd->count("--noise-sigma")) cfg.noise_sigma = noise_sigma;
      if (sweep_cmd->count("--seed")) cfg.seed = seed;
      const auto rows = run_sweep(cfg);
      const std::string summary = sweep_summary_csv(rows);
      if (output == "-") {
        emit(output, sweep_csv(rows) + "# summary\n" + summary);
      } else {
        write_text(output, sweep_csv(rows));
        write_text(output + ".summary.csv", summary);
      }
      const bool warned = std::any_of(rows.begin(), rows.end(),
                                      [](const SweepRow& r) { return !r.warnings.empty(); });
      return strict && warned ? 4 : 0;
    }

    if (report_cmd->parsed()) {
      emit(output, sweep_summary_csv(parse_sweep_csv(read_text(input))));
      return 0;
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return exit_code(e);
  }
  return 2;
}

}  // namespace suploc
