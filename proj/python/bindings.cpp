#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "suploc/error.hpp"
#include "suploc/io.hpp"
#include "suploc/measure.hpp"
#include "suploc/metrics.hpp"
#include "suploc/momentio.hpp"
#include "suploc/orthopoly.hpp"
#include "suploc/recover.hpp"

namespace py = pybind11;
using namespace suploc;

namespace {

// Python side speaks plain containers: atoms as (x, w), intervals as (a, b, w).
MeasureSpec make_spec(const std::vector<std::pair<double, double>>& atoms,
                      const std::vector<std::tuple<double, double, double>>& intervals,
                      std::optional<double> bound) {
  std::vector<AtomPart> a;
  for (const auto& [x, w] : atoms) a.push_back({x, w});
  std::vector<IntervalPart> i;
  for (const auto& [lo, hi, w] : intervals) i.push_back({lo, hi, w, Density::uniform});
  return MeasureSpec(std::move(a), std::move(i), bound);
}

SuplocOptions make_options(double epsilon, int degree, const std::string& regime, double tau) {
  SuplocOptions o;
  o.epsilon = epsilon;
  o.degree = degree;
  o.regime = parse_regime_request(regime);
  o.tau = tau;
  return o;
}

py::dict estimate_dict(const SupportEstimate& est) {
  return py::module_::import("json").attr("loads")(to_json(est).dump());
}

}  // namespace

PYBIND11_MODULE(_suploc, m) {
  m.doc() = "Support recovery of measures from moments";

  static py::handle error = py::exception<Error>(m, "SuplocError", PyExc_ValueError).release();
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::set_error(error, e.what());
    }
  });

  m.def(
      "moments",
      [](const std::vector<std::pair<double, double>>& atoms,
         const std::vector<std::tuple<double, double, double>>& intervals, int max_degree) {
        return moments(make_spec(atoms, intervals, std::nullopt), max_degree);
      },
      py::arg("atoms") = std::vector<std::pair<double, double>>{},
      py::arg("intervals") = std::vector<std::tuple<double, double, double>>{}, py::arg("max_degree"),
      "Moments y_0 .. y_max_degree of the normalized measure.");

  m.def(
      "recurrence",
      [](const std::vector<std::pair<double, double>>& atoms,
         const std::vector<std::tuple<double, double, double>>& intervals, int n) {
        const QuadratureOracle oracle(make_spec(atoms, intervals, std::nullopt), 2 * n);
        const Recurrence rec = stieltjes(oracle, n);
        return py::make_tuple(rec.alphas, rec.betas);
      },
      py::arg("atoms") = std::vector<std::pair<double, double>>{},
      py::arg("intervals") = std::vector<std::tuple<double, double, double>>{}, py::arg("n"),
      "(alpha_0..alpha_{n-1}, beta_1..beta_{n-1}) through the quadrature oracle.");

  m.def(
      "recover",
      [](const std::vector<std::pair<double, double>>& atoms,
         const std::vector<std::tuple<double, double, double>>& intervals, double epsilon, int degree,
         const std::string& regime, double tau) {
        return estimate_dict(suploc::suploc(make_spec(atoms, intervals, std::nullopt),
                                            make_options(epsilon, degree, regime, tau)));
      },
      py::arg("atoms") = std::vector<std::pair<double, double>>{},
      py::arg("intervals") = std::vector<std::tuple<double, double, double>>{},
      py::arg("epsilon") = 1e-2, py::arg("degree") = 40, py::arg("regime") = "auto",
      py::arg("tau") = 1e-8);

  m.def(
      "recover_moments",
      [](std::vector<double> y, double epsilon, int degree, const std::string& regime, double tau) {
        return estimate_dict(suploc::suploc(MomentData::from_moments(std::move(y)),
                                            make_options(epsilon, degree, regime, tau)));
      },
      py::arg("moments"), py::arg("epsilon") = 1e-2, py::arg("degree") = 40,
      py::arg("regime") = "auto", py::arg("tau") = 1e-8);

  m.def(
      "hausdorff",
      [](std::vector<double> pa, std::vector<std::pair<double, double>> ia, std::vector<double> pb,
         std::vector<std::pair<double, double>> ib) {
        auto to_intervals = [](const std::vector<std::pair<double, double>>& v) {
          std::vector<Interval> out;
          for (const auto& [lo, hi] : v) out.push_back({lo, hi});
          return out;
        };
        return hausdorff(SupportSet(std::move(pa), to_intervals(ia)),
                         SupportSet(std::move(pb), to_intervals(ib)));
      },
      py::arg("points_a"), py::arg("intervals_a"), py::arg("points_b"), py::arg("intervals_b"));

  m.def(
      "interval_iou",
      [](const std::vector<std::pair<double, double>>& a, const std::vector<std::pair<double, double>>& b) {
        std::vector<Interval> ia, ib;
        for (const auto& [lo, hi] : a) ia.push_back({lo, hi});
        for (const auto& [lo, hi] : b) ib.push_back({lo, hi});
        return interval_iou(ia, ib);
      },
      py::arg("a"), py::arg("b"));
}
