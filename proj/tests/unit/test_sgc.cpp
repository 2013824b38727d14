#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <limits>

#include "covshift/bounds.hpp"
#include "covshift/error.hpp"
#include "covshift/rng.hpp"
#include "covshift/sgc.hpp"

using namespace covshift;

namespace {

ScoreSample uniform_sample(std::size_t n, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<double> v(n);
  for (auto& x : v) x = rng.uniform();
  return ScoreSample(std::move(v), "raw");
}

}  // namespace

TEST_CASE("empirical coverage counts ties at the threshold") {
  const std::vector<double> a{0.1, 0.5, 0.9};
  CHECK(empirical_coverage(0.5, a) == doctest::Approx(2.0 / 3.0));
  CHECK(empirical_coverage(-std::numeric_limits<double>::infinity(), a) == 1.0);
  CHECK(empirical_coverage(0.0, a) == 1.0);
  CHECK(empirical_coverage(0.95, a) == 0.0);
  const std::vector<double> b{0.2, 0.2, 0.8};
  CHECK(empirical_coverage(0.2, b) == 1.0);
  CHECK_THROWS_AS(empirical_coverage(0.2, std::span<const double>{}), InvalidInput);
}

TEST_CASE("m times c rounds to the nearest count") {
  CHECK(m_times_c(3, 2.0 / 3.0) == 2);
  CHECK(m_times_c(1000, 0.0) == 0);
  CHECK(m_times_c(7, 5.0 / 7.0) == 5);
  for (std::int64_t m : {3, 49, 1000, 999983})
    for (std::int64_t j = 0; j <= m; j += std::max<std::int64_t>(1, m / 97))
      CHECK(m_times_c(m, static_cast<double>(j) / static_cast<double>(m)) == j);
}

TEST_CASE("iteration count is ceil(log2 m)") {
  CHECK(sgc_iterations(2) == 1);
  CHECK(sgc_iterations(3) == 2);
  CHECK(sgc_iterations(4) == 2);
  CHECK(sgc_iterations(5) == 3);
  CHECK(sgc_iterations(1000) == 10);
  CHECK(sgc_iterations(1024) == 10);
  CHECK(sgc_iterations(1025) == 11);
  CHECK(sgc_iterations(1000000) == 20);
  CHECK_THROWS_AS(sgc_iterations(1), InvalidInput);
}

TEST_CASE("two-point hand trace") {
  const ScoreSample s({0.7, 0.3}, "raw");
  const auto trace = run_sgc_traced(s, {0.1, 0.5});
  REQUIRE(trace.steps.size() == 1);
  CHECK(trace.steps[0].z == 2);
  CHECK(trace.result.theta == 0.7);
  CHECK(trace.steps[0].empirical_coverage == 0.5);
  CHECK(std::abs(trace.result.b_star - std::sqrt(0.1)) < 1e-9);
  CHECK(trace.result.iterations == 1);
  CHECK(trace.result.c_target == 0.5);
}

TEST_CASE("each step follows the bisection rule with delta / k") {
  const auto s = uniform_sample(777, 11);
  const SgcConfig cfg{0.02, 0.6};
  const auto trace = run_sgc_traced(s, cfg);
  const std::int64_t k = sgc_iterations(777);
  REQUIRE(static_cast<std::int64_t>(trace.steps.size()) == k);
  std::int64_t z_min = 1, z_max = 777;
  for (const auto& st : trace.steps) {
    CHECK(z_min < z_max);
    CHECK(st.z == (z_min + z_max + 1) / 2);
    CHECK(st.z >= 1);
    CHECK(st.z <= 777);
    CHECK(st.empirical_coverage == empirical_coverage(st.theta, s));
    CHECK(st.b_star == solve_bound({777, st.successes, cfg.delta / static_cast<double>(k)}).b_star);
    (st.b_star <= cfg.target_coverage ? z_max : z_min) = st.z;
  }
  CHECK(trace.result.b_star == trace.steps.back().b_star);
  CHECK(trace.result.theta == trace.steps.back().theta);
}

TEST_CASE("identical input gives an identical result") {
  const auto s = uniform_sample(5000, 3);
  CHECK(run_sgc(s, {}) == run_sgc(s, {}));
  // Input order does not matter.
  std::vector<double> rev(s.scores().rbegin(), s.scores().rend());
  CHECK(run_sgc(ScoreSample(rev, "raw"), {}) == run_sgc(s, {}));
}

TEST_CASE("strictly increasing transforms keep the selected indices and bounds") {
  const auto s = uniform_sample(3000, 5);
  std::vector<double> mapped;
  for (double x : s.scores()) mapped.push_back(std::log(x + 0.01) * 4.0 + 9.0);
  const auto a = run_sgc_traced(s, {0.01, 0.73});
  const auto b = run_sgc_traced(ScoreSample(mapped, "raw"), {0.01, 0.73});
  REQUIRE(a.steps.size() == b.steps.size());
  for (std::size_t i = 0; i < a.steps.size(); ++i) {
    CHECK(a.steps[i].z == b.steps[i].z);
    CHECK(a.steps[i].b_star == b.steps[i].b_star);
    CHECK(b.steps[i].theta == std::log(a.steps[i].theta + 0.01) * 4.0 + 9.0);
  }
}

TEST_CASE("duplicated scores are all selected") {
  std::vector<double> v(100, 0.5);
  for (int i = 0; i < 50; ++i) v[static_cast<std::size_t>(i)] = 0.01 * i;
  const auto trace = run_sgc_traced(ScoreSample(v, "raw"), {0.05, 0.3});
  for (const auto& st : trace.steps) {
    if (st.theta == 0.5) CHECK(st.empirical_coverage == 0.5);
  }
}

TEST_CASE("coverage guarantee on uniform scores") {
  int holds = 0;
  for (std::uint64_t t = 0; t < 500; ++t) {
    const auto s = uniform_sample(1000, 1000 + t);
    const auto r = run_sgc(s, {0.01, 0.5});
    CHECK(r.b_star <= 0.55);
    // True coverage of Uniform(0,1) at theta is 1 - theta.
    if (1.0 - r.theta > r.b_star) ++holds;
  }
  CHECK(holds >= 495);
}

TEST_CASE("invalid configurations are rejected") {
  CHECK_THROWS_AS(run_sgc(ScoreSample({0.3}, "raw"), {}), InvalidInput);
  CHECK_THROWS_AS(run_sgc(ScoreSample({0.3, 0.4}, "raw"), {0.0, 0.5}), InvalidInput);
  CHECK_THROWS_AS(run_sgc(ScoreSample({0.3, 0.4}, "raw"), {0.1, 0.0}), InvalidInput);
}
