#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>
#include <vector>

#include "corpus.hpp"
#include "suploc/error.hpp"
#include "suploc/measure.hpp"
#include "suploc/momentio.hpp"

using namespace suploc;
using corpus::uniform;

namespace {

ErrorKind kind_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("no error thrown");
  return ErrorKind::io;
}

std::vector<double> random_poly(std::mt19937_64& rng, int degree) {
  std::uniform_real_distribution<double> u(-1, 1);
  std::vector<double> p(degree + 1);
  for (auto& c : p) c = u(rng);
  return p;
}

}  // namespace

TEST_CASE("separation distance") {
  CHECK(separation_distance(MeasureSpec({{1.2, 0.1}}, {uniform(-1, 1, 0.9)})) == doctest::Approx(0.2));
  CHECK(separation_distance(MeasureSpec({{-2, 0.1}, {2, 0.1}}, {uniform(-1, 1, 0.8)})) == 1.0);
  const auto s = scenario_spec(Scenario::two_intervals, 1.0, 0.0, 0.9);
  CHECK(separation_distance(s) == doctest::Approx(0.6));
  CHECK(separation_distance(scenario_spec(Scenario::two_intervals, 0.2, 0.0, 0.9)) == doctest::Approx(0.2));
  CHECK(separation_distance(MeasureSpec({}, {uniform(-1, 1, 1)})) == std::numeric_limits<double>::infinity());
}

TEST_CASE("moments examples") {
  const auto u = moments(MeasureSpec({}, {uniform(-1, 1, 1)}), 2);
  CHECK(u[0] == 1.0);
  CHECK(u[1] == 0.0);
  CHECK(u[2] == doctest::Approx(1.0 / 3).epsilon(1e-15));
  CHECK(moments(MeasureSpec({{0.5, 1}}, {}), 3)[3] == 0.125);
  CHECK(moments(MeasureSpec({{-1, 0.5}, {1, 0.5}}, {}), 4) == std::vector<double>{1, 0, 1, 0, 1});
  // Unnormalized weights are rescaled.
  const MeasureSpec heavy({{2, 3}}, {uniform(-1, 1, 1)});
  CHECK(heavy.mass_scale() == 4.0);
  const auto y = moments(heavy, 1);
  CHECK(y[0] == 1.0);
  CHECK(y[1] == doctest::Approx(1.5));
  CHECK(kind_of([&] { moments(heavy, -1); }) == ErrorKind::invalid_argument);
}

TEST_CASE("inner product examples") {
  const MeasureSpec u({}, {uniform(-1, 1, 1)});
  const std::vector<double> x{0, 1}, x2{0, 0, 1};
  for (auto backend : {IntegrationBackend::moments, IntegrationBackend::quadrature}) {
    CHECK(inner_product(u, x, x, backend) == doctest::Approx(1.0 / 3).epsilon(1e-15));
    CHECK(std::abs(inner_product(u, x, x2, backend)) < 1e-16);
    const std::vector<double> shift{-2, 1}, any{0.3, -1.2, 4};
    CHECK(std::abs(inner_product(MeasureSpec({{2, 1}}, {}), shift, any, backend)) < 1e-15);
  }
}

TEST_CASE("inner product is symmetric and bilinear") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> coef(-2, 2);
  for (const auto& [name, spec] : corpus::mixed()) {
    CAPTURE(name);
    for (auto backend : {IntegrationBackend::moments, IntegrationBackend::quadrature}) {
      for (int trial = 0; trial < 5; ++trial) {
        const auto p = random_poly(rng, 5), s = random_poly(rng, 5), q = random_poly(rng, 6);
        const double a = coef(rng), b = coef(rng);
        std::vector<double> comb(p.size());
        for (std::size_t i = 0; i < p.size(); ++i) comb[i] = a * p[i] + b * s[i];
        const double pq = inner_product(spec, p, q, backend);
        const double sq = inner_product(spec, s, q, backend);
        const double scale = std::abs(a * pq) + std::abs(b * sq) + 1e-300;
        CHECK(std::abs(pq - inner_product(spec, q, p, backend)) <= 1e-12 * std::abs(pq) + 1e-300);
        CHECK(std::abs(inner_product(spec, comb, q, backend) - (a * pq + b * sq)) <= 1e-12 * scale);
      }
    }
  }
}

TEST_CASE("quadrature reproduces analytic moments up to its exactness") {
  for (const auto& [name, spec] : corpus::mixed()) {
    CAPTURE(name);
    for (int d : {0, 1, 7, 20, 41}) {
      const QuadratureOracle oracle(spec, d);
      const auto y = moments(spec, d);
      double scale = 1.0;
      for (int k = 0; k <= d; ++k) {
        std::vector<double> xk(k + 1, 0.0);
        xk[k] = 1.0;
        const std::vector<double> one{1.0};
        // |y_k| can vanish by symmetry; compare against B^k.
        CHECK(std::abs(oracle.integrate(xk, one) - y[k]) <= 1e-12 * scale);
        scale *= spec.bound();
      }
      std::vector<double> over(d + 2, 0.0);
      over.back() = 1.0;
      CHECK(kind_of([&] { oracle.integrate(over, std::vector<double>{1.0}); }) ==
            ErrorKind::degree_budget_exceeded);
    }
  }
}

TEST_CASE("moment matrices of valid specs are PSD") {
  for (const auto& [name, spec] : corpus::mixed()) {
    CAPTURE(name);
    for (int n = 1; n <= 10; ++n) {
      const auto data = MomentData::from_moments(moments(spec, 2 * n));
      const auto report = psd_check(data);
      CHECK(report.min_eig >= -1e-10 * report.norm);
    }
  }
}

TEST_CASE("Gauss-Legendre rules") {
  const auto two = gauss_legendre(2);
  CHECK(two.nodes[0] == doctest::Approx(-1 / std::sqrt(3.0)).epsilon(1e-15));
  CHECK(two.nodes[1] == doctest::Approx(1 / std::sqrt(3.0)).epsilon(1e-15));
  CHECK(two.weights[0] == doctest::Approx(1).epsilon(1e-15));
  const auto three = gauss_legendre(3);
  CHECK(std::abs(three.nodes[1]) < 1e-15);
  CHECK(three.nodes[2] == doctest::Approx(std::sqrt(0.6)).epsilon(1e-15));
  CHECK(three.weights[0] == doctest::Approx(5.0 / 9).epsilon(1e-14));
  CHECK(three.weights[1] == doctest::Approx(8.0 / 9).epsilon(1e-14));
  for (int m : {1, 4, 25, 80}) {
    const auto rule = gauss_legendre(m);
    double sum = 0;
    for (double w : rule.weights) sum += w;
    CHECK(sum == doctest::Approx(2).epsilon(1e-13));
    // x^(2m - 2) integrates to 2 / (2m - 1).
    double even = 0;
    for (int i = 0; i < m; ++i) even += rule.weights[i] * std::pow(rule.nodes[i], 2 * m - 2);
    CHECK(even == doctest::Approx(2.0 / (2 * m - 1)).epsilon(1e-13));
  }
  CHECK(kind_of([] { gauss_legendre(0); }) == ErrorKind::invalid_argument);
}

TEST_CASE("spec validation") {
  CHECK(kind_of([] { MeasureSpec({}, {}); }) == ErrorKind::invalid_spec);
  CHECK(kind_of([] { MeasureSpec({{0, 0}}, {}); }) == ErrorKind::invalid_spec);
  CHECK(kind_of([] { MeasureSpec({}, {uniform(1, 1, 1)}); }) == ErrorKind::invalid_spec);
  CHECK(kind_of([] { MeasureSpec({}, {uniform(0, 1, -1)}); }) == ErrorKind::invalid_spec);
  CHECK(kind_of([] { MeasureSpec({{0.5, 1}}, {uniform(0, 1, 1)}); }) == ErrorKind::invalid_spec);
  CHECK(kind_of([] { MeasureSpec({}, {uniform(0, 1, 1), uniform(1, 2, 1)}); }) == ErrorKind::invalid_spec);
  CHECK(kind_of([] { MeasureSpec({{3, 1}}, {}, 2.0); }) == ErrorKind::invalid_spec);
  CHECK(kind_of([] { MeasureSpec({{std::nan(""), 1}}, {}); }) == ErrorKind::invalid_spec);
  CHECK_NOTHROW(MeasureSpec({{1.0000001, 1}}, {uniform(0, 1, 1)}));
}

TEST_CASE("regime classification") {
  CHECK(MeasureSpec({{0, 1}, {1, 1}}, {}).regime() == Regime::flat);
  CHECK(MeasureSpec({{0.5, 1}}, {uniform(-1, 0, 1)}).regime() == Regime::single_interval);
  CHECK(MeasureSpec({{2, 1}}, {uniform(-1, 0, 1), uniform(0.5, 1, 1)}).regime() == Regime::atoms_outside);
  CHECK(MeasureSpec({{0.2, 1}}, {uniform(-1, 0, 1), uniform(0.5, 1, 1)}).regime() == Regime::general);
  const MeasureSpec s({{-0.5, 1}}, {uniform(2, 3, 1)});
  CHECK(s.support_min() == -0.5);
  CHECK(s.support_max() == 3);
  CHECK(s.bound() == 3);
  CHECK(s.component_count() == 2);
}
