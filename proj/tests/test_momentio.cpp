#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "corpus.hpp"
#include "suploc/error.hpp"
#include "suploc/io.hpp"
#include "suploc/measure.hpp"
#include "suploc/momentio.hpp"

using namespace suploc;

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

MomentData data_of(const MeasureSpec& spec, int n) { return MomentData::from_moments(moments(spec, 2 * n)); }

Matrix matrix(std::vector<std::vector<double>> rows) {
  Matrix m(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < rows.size(); ++j) m(i, j) = rows[i][j];
  return m;
}

}  // namespace

TEST_CASE("loading moment lists") {
  const auto one = moments_from_json(Json::parse(R"({"moments":[1,0,1]})"));
  CHECK(one.degree() == 1);
  CHECK(one.hankel() == matrix({{1, 0}, {0, 1}}));
  const auto two = moments_from_json(Json::parse(R"({"moments":[1,0,1,0,1]})"));
  CHECK(two.degree() == 2);
  CHECK(two.hankel() == matrix({{1, 0, 1}, {0, 1, 0}, {1, 0, 1}}));
  CHECK(two.truncated(1) == one);
  CHECK(kind_of([&] { two.truncated(3); }) == ErrorKind::degree_out_of_range);
}

TEST_CASE("loading matrices") {
  const auto m = MomentData::from_matrix(matrix({{1, 0, 1}, {0, 1, 0}, {1, 0, 1}}));
  CHECK(m.moments() == std::vector<double>{1, 0, 1, 0, 1});
  CHECK(kind_of([] { MomentData::from_matrix(matrix({{1, 0, 0.5}, {0, 1, 0}, {0.5, 0, 1}})); }) ==
        ErrorKind::not_hankel);
  CHECK(kind_of([] { MomentData::from_matrix(Matrix()); }) == ErrorKind::invalid_argument);
}

TEST_CASE("moment list validation") {
  CHECK(kind_of([] { MomentData::from_moments({1, 0}); }) == ErrorKind::invalid_argument);
  CHECK(kind_of([] { MomentData::from_moments({}); }) == ErrorKind::invalid_argument);
  CHECK(kind_of([] { MomentData::from_moments({0, 0, 1}); }) == ErrorKind::non_positive_mass);
  CHECK(kind_of([] { MomentData::from_moments({-2, 0, 1}); }) == ErrorKind::non_positive_mass);
  CHECK(kind_of([] { MomentData::from_moments({1, INFINITY, 1}); }) == ErrorKind::invalid_argument);
}

TEST_CASE("psd examples") {
  const auto id = psd_check(MomentData::from_moments({1, 0, 1}));
  CHECK(id.min_eig == doctest::Approx(1));
  CHECK(id.ok);
  const auto singular = psd_check(MomentData::from_moments({1, 0, 1, 0, 1}));
  CHECK(std::abs(singular.min_eig) < 1e-15);
  CHECK(singular.ok);
  CHECK_FALSE(singular.indefinite);
  const auto bad = psd_check(MomentData::from_moments({1, 2, 1}));
  CHECK(bad.min_eig == doctest::Approx(-1));
  CHECK_FALSE(bad.ok);
  // Slightly negative is tolerated but flagged.
  const auto edge = psd_check(MomentData::from_moments({1, 0, 1, 0, 1 - 1e-10}));
  CHECK(edge.ok);
  CHECK(edge.indefinite);
}

TEST_CASE("flatness examples") {
  const MeasureSpec two({{-1, 0.5}, {1, 0.5}}, {});
  const auto r = flatness(data_of(two, 2), data_of(two, 3));
  CHECK(r.rank_n == 2);
  CHECK(r.rank_n_plus_1 == 2);
  CHECK(r.flat);

  const MeasureSpec point({{0, 1}}, {});
  const auto p = flatness(data_of(point, 1), data_of(point, 2));
  CHECK(data_of(point, 1).hankel() == matrix({{1, 0}, {0, 0}}));
  CHECK(p.rank_n == 1);
  CHECK(p.flat);

  const MeasureSpec u({}, {corpus::uniform(-1, 1, 1)});
  for (int n = 1; n <= 12; ++n) {
    CAPTURE(n);
    const auto f = flatness(data_of(u, n), data_of(u, n + 1));
    CHECK(f.rank_n == n + 1);
    CHECK(f.rank_n_plus_1 == n + 2);
    CHECK_FALSE(f.flat);
  }
}

TEST_CASE("flatness needs consistent prefixes") {
  const MeasureSpec u({}, {corpus::uniform(-1, 1, 1)});
  CHECK(kind_of([&] { flatness(data_of(u, 2), data_of(u, 4)); }) == ErrorKind::inconsistent_prefix);
  auto y = moments(u, 6);
  y[2] += 1e-12;
  CHECK(kind_of([&] { flatness(data_of(u, 2), MomentData::from_moments(y)); }) == ErrorKind::inconsistent_prefix);
}

TEST_CASE("measures with intervals are never flat") {
  // Up to n = 12 on the symmetric corpus members; the others hit the double
  // rounding floor of their moments earlier, so only small n is checked there.
  for (const auto& [name, spec] : corpus::mixed()) {
    CAPTURE(name);
    const bool full = name == "uniform" || name == "two-gap+centre";
    for (int n = 1; n <= (full ? 12 : 3); ++n) {
      CAPTURE(n);
      CHECK_FALSE(flatness(data_of(spec, n), data_of(spec, n + 1)).flat);
    }
  }
}

TEST_CASE("atomic measures become flat at r - 1 and are still flat at r") {
  // Past n = r the rounding floor of the moments can swallow the smallest
  // eigenvalue once r >= 6, so the check stops there.
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 200; ++trial) {
    const int r = 1 + trial % 8;
    const auto spec = corpus::random_atomic(rng, r, 0.1);
    CAPTURE(r);
    int first = -1;
    for (int n = 1; n <= r; ++n) {
      const auto f = flatness(data_of(spec, n), data_of(spec, n + 1));
      if (f.flat && first < 0) first = n;
      if (first > 0) {
        CHECK(f.flat);
        CHECK(f.rank_n == r);
      }
    }
    CHECK(first == std::max(1, r - 1));
  }
}

TEST_CASE("moment oracle") {
  const MeasureSpec spec({{0.5, 0.5}}, {corpus::uniform(-1, 0, 0.5)});
  auto raw = moments(spec, 6);
  for (double& v : raw) v *= 3.0;
  const MomentOracle oracle(MomentData::from_moments(raw));
  CHECK(oracle.exactness_degree() == 6);
  const std::vector<double> x{0, 1}, x3{0, 0, 0, 1};
  CHECK(oracle.integrate(x, x3) == doctest::Approx(moments(spec, 4)[4]));
  const std::vector<double> x4{0, 0, 0, 0, 1};
  CHECK(kind_of([&] { oracle.integrate(x4, x); }) == ErrorKind::degree_budget_exceeded);
}

TEST_CASE("moment files round-trip bit-exactly") {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> u(-1, 1);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<double> y{std::abs(u(rng)) + 0.1};
    for (int k = 0; k < 2 * (trial + 1); ++k) y.push_back(u(rng) * std::pow(10.0, trial % 7 - 3));
    const auto data = MomentData::from_moments(y);
    const auto back = moments_from_json(Json::parse(to_json(data).dump()));
    CHECK(back == data);
  }
}
