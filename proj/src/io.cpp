#include "suploc/io.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <initializer_list>
#include <iostream>
#include <iterator>
#include <sstream>

#include "suploc/error.hpp"

namespace suploc {

std::string read_text(const std::string& path) {
  if (path == "-") {
    return {std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>()};
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::io, "cannot open '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_text(const std::string& path, const std::string& text) {
  if (path == "-") {
    std::cout << text;
    std::cout.flush();
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::io, "cannot write '" + path + "'");
  out << text;
  if (!out) throw Error(ErrorKind::io, "write failed for '" + path + "'");
}

Json read_json(const std::string& path) {
  const std::string text = read_text(path);
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw Error(ErrorKind::parse, std::string(path == "-" ? "stdin" : path) + ": " + e.what());
  }
}

namespace {

[[noreturn]] void bad(const std::string& what) { throw Error(ErrorKind::parse, what); }

void require_object(const Json& j, const char* what) {
  if (!j.is_object()) bad(std::string(what) + " must be a JSON object");
}

void only_keys(const Json& j, std::initializer_list<const char*> allowed, const char* what) {
  for (const auto& [key, value] : j.items()) {
    const bool known = std::any_of(allowed.begin(), allowed.end(),
                                   [&](const char* k) { return key == k; });
    if (!known) bad(std::string("unknown field '") + key + "' in " + what);
  }
}

double number(const Json& j, const char* key, const char* what) {
  if (!j.contains(key)) bad(std::string("missing '") + key + "' in " + what);
  const Json& v = j.at(key);
  if (!v.is_number()) bad(std::string("'") + key + "' in " + what + " must be a number");
  return v.get<double>();
}

std::vector<double> numbers(const Json& j, const char* what) {
  if (!j.is_array()) bad(std::string(what) + " must be an array");
  std::vector<double> out;
  out.reserve(j.size());
  for (const Json& v : j) {
    if (!v.is_number()) bad(std::string(what) + " must hold numbers only");
    out.push_back(v.get<double>());
  }
  return out;
}

std::vector<double> numbers_at(const Json& j, const char* key, const char* what) {
  if (!j.contains(key)) bad(std::string("missing '") + key + "' in " + what);
  return numbers(j.at(key), key);
}

Regime parse_regime(const std::string& s) {
  for (Regime r : {Regime::flat, Regime::single_interval, Regime::atoms_outside, Regime::general})
    if (s == to_string(r)) return r;
  bad("unknown regime '" + s + "'");
}

Warning parse_warning(const std::string& s) {
  for (Warning w : {Warning::regime_mismatch, Warning::low_degree, Warning::indefinite_input,
                    Warning::degree_capped, Warning::inconsistent})
    if (s == to_string(w)) return w;
  bad("unknown warning '" + s + "'");
}

}  // namespace

InputKind detect_input(const Json& j) {
  if (!j.is_object()) bad("input must be a JSON object");
  if (j.contains("moments") || j.contains("matrix")) return InputKind::moments;
  if (j.contains("alpha")) return InputKind::recurrence;
  if (j.contains("regime") || j.contains("epsilon")) return InputKind::estimate;
  if (j.contains("atoms") || j.contains("intervals")) return InputKind::spec;
  bad("cannot tell what kind of input this is");
}

MeasureSpec spec_from_json(const Json& j) {
  require_object(j, "measure spec");
  only_keys(j, {"atoms", "intervals", "bound"}, "measure spec");
  std::vector<AtomPart> atoms;
  std::vector<IntervalPart> intervals;
  if (j.contains("atoms")) {
    if (!j["atoms"].is_array()) bad("'atoms' must be an array");
    for (const Json& a : j["atoms"]) {
      require_object(a, "atom");
      only_keys(a, {"x", "w"}, "atom");
      atoms.push_back({number(a, "x", "atom"), number(a, "w", "atom")});
    }
  }
  if (j.contains("intervals")) {
    if (!j["intervals"].is_array()) bad("'intervals' must be an array");
    for (const Json& i : j["intervals"]) {
      require_object(i, "interval");
      only_keys(i, {"a", "b", "w", "density"}, "interval");
      if (i.contains("density") && i["density"] != "uniform") bad("only uniform density is supported");
      intervals.push_back({number(i, "a", "interval"), number(i, "b", "interval"),
                           number(i, "w", "interval"), Density::uniform});
    }
  }
  std::optional<double> bound;
  if (j.contains("bound")) bound = number(j, "bound", "measure spec");
  return MeasureSpec(std::move(atoms), std::move(intervals), bound);
}

Json to_json(const MeasureSpec& spec) {
  Json atoms = Json::array();
  for (const auto& a : spec.atoms()) atoms.push_back({{"x", a.position}, {"w", a.weight}});
  Json intervals = Json::array();
  for (const auto& i : spec.intervals())
    intervals.push_back({{"a", i.lower}, {"b", i.upper}, {"w", i.weight}, {"density", "uniform"}});
  return {{"atoms", atoms}, {"intervals", intervals}, {"bound", spec.bound()}};
}

MomentData moments_from_json(const Json& j) {
  require_object(j, "moment file");
  only_keys(j, {"moments", "matrix"}, "moment file");
  if (j.contains("moments") == j.contains("matrix")) bad("moment file needs exactly one of 'moments' or 'matrix'");
  if (j.contains("moments")) return MomentData::from_moments(numbers(j["moments"], "moments"));

  const Json& rows = j["matrix"];
  if (!rows.is_array() || rows.empty()) bad("'matrix' must be a nonempty array of rows");
  const std::size_t n = rows.size();
  Matrix m(n);
  for (std::size_t r = 0; r < n; ++r) {
    const auto row = numbers(rows[r], "matrix row");
    if (row.size() != n) bad("'matrix' must be square");
    for (std::size_t c = 0; c < n; ++c) m(r, c) = row[c];
  }
  return MomentData::from_matrix(m);
}

Json to_json(const MomentData& data) { return {{"moments", data.moments()}}; }

Recurrence recurrence_from_json(const Json& j) {
  require_object(j, "recurrence");
  only_keys(j, {"alpha", "beta", "zeta"}, "recurrence");
  Recurrence rec;
  rec.alphas = numbers_at(j, "alpha", "recurrence");
  rec.betas = numbers_at(j, "beta", "recurrence");
  rec.zetas = numbers_at(j, "zeta", "recurrence");
  if (rec.betas.size() + 1 != rec.alphas.size() && !(rec.alphas.empty() && rec.betas.empty()))
    bad("recurrence needs len(beta) = len(alpha) - 1");
  if (rec.zetas.size() != rec.alphas.size()) bad("recurrence needs len(zeta) = len(alpha)");
  rec.a_inf = 0.0;
  for (double b : rec.betas) rec.a_inf = std::max(rec.a_inf, std::sqrt(std::max(0.0, b)));
  return rec;
}

Json to_json(const Recurrence& rec) {
  return {{"alpha", rec.alphas}, {"beta", rec.betas}, {"zeta", rec.zetas}};
}

SupportEstimate estimate_from_json(const Json& j) {
  require_object(j, "support estimate");
  only_keys(j, {"epsilon", "regime", "degree", "atoms", "intervals", "pollution", "absorbed",
                "a_inf", "rho", "warnings"},
            "support estimate");
  SupportEstimate est;
  est.epsilon = number(j, "epsilon", "support estimate");
  if (!j.contains("regime") || !j["regime"].is_string()) bad("'regime' must be a string");
  est.regime = parse_regime(j["regime"].get<std::string>());
  if (!j.contains("degree") || !j["degree"].is_number_integer()) bad("'degree' must be an integer");
  est.degree_used = j["degree"].get<int>();
  est.atoms = numbers_at(j, "atoms", "support estimate");
  if (!j.contains("intervals") || !j["intervals"].is_array()) bad("'intervals' must be an array");
  for (const Json& i : j["intervals"]) {
    const auto pair = numbers(i, "interval");
    if (pair.size() != 2) bad("each interval must be [lower, upper]");
    est.intervals.push_back({pair[0], pair[1]});
  }
  est.pollution = numbers_at(j, "pollution", "support estimate");
  if (j.contains("absorbed")) est.absorbed = numbers(j["absorbed"], "absorbed");
  if (j.contains("a_inf")) est.a_inf = number(j, "a_inf", "support estimate");
  if (j.contains("rho")) est.rho = number(j, "rho", "support estimate");
  if (j.contains("warnings")) {
    if (!j["warnings"].is_array()) bad("'warnings' must be an array");
    for (const Json& w : j["warnings"]) {
      if (!w.is_string()) bad("warnings must be strings");
      est.warnings.push_back(parse_warning(w.get<std::string>()));
    }
  }
  return est;
}

Json to_json(const SupportEstimate& est) {
  Json intervals = Json::array();
  for (const Interval& i : est.intervals) intervals.push_back({i.lower, i.upper});
  Json warnings = Json::array();
  for (Warning w : est.warnings) warnings.push_back(std::string(to_string(w)));
  return {{"epsilon", est.epsilon},
          {"regime", std::string(to_string(est.regime))},
          {"degree", est.degree_used},
          {"atoms", est.atoms},
          {"intervals", intervals},
          {"pollution", est.pollution},
          {"absorbed", est.absorbed},
          {"a_inf", est.a_inf},
          {"rho", est.rho},
          {"warnings", warnings}};
}

}  // namespace suploc
