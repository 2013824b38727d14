#include <doctest.h>

#include <cmath>
#include <cstring>
#include <filesystem>
#include <numeric>

#include "covshift/detector.hpp"
#include "covshift/error.hpp"
#include "covshift/generators.hpp"
#include "covshift/stats.hpp"

using namespace covshift;

namespace {

DetectorModel hand_model(std::vector<CoverageBound> pairs, std::string kappa = "raw") {
  DetectorModel m;
  m.c_target_count = static_cast<int>(pairs.size());
  m.pairs = std::move(pairs);
  m.kappa_name = std::move(kappa);
  m.m = 100;
  m.delta = 0.01;
  return m;
}

ScoreSample beta_sample(double a, double b, std::size_t n, std::uint64_t seed) {
  Rng rng(seed);
  return gen_scores(BetaDist{a, b}, n, rng);
}

bool same_bits(double a, double b) { return std::memcmp(&a, &b, sizeof a) == 0; }

}  // namespace

TEST_CASE("coverage grid") {
  const auto g = coverage_grid(10);
  const double want[] = {0.10, 0.19, 0.28, 0.37, 0.46, 0.55, 0.64, 0.73, 0.82, 0.91};
  REQUIRE(g.size() == 10);
  for (std::size_t j = 0; j < 10; ++j) CHECK(g[j] == doctest::Approx(want[j]).epsilon(1e-14));
  CHECK(coverage_grid(1) == std::vector<double>{0.1});
  CHECK_THROWS_AS(coverage_grid(0), InvalidInput);
}

TEST_CASE("fit produces one bound per target in increasing order") {
  const auto s = beta_sample(5, 1, 4000, 1);
  const auto model = fit(s, 0.01, 10);
  CHECK(model.m == 4000);
  CHECK(model.kappa_name == "raw");
  REQUIRE(model.pairs.size() == 10);
  for (std::size_t j = 1; j < 10; ++j) {
    CHECK(model.pairs[j].c_target > model.pairs[j - 1].c_target);
    CHECK(model.pairs[j].theta <= model.pairs[j - 1].theta);
  }
  CHECK_NOTHROW(model.validate());
  CHECK_THROWS_AS(fit(ScoreSample({0.5}, "raw"), 0.01, 10), InvalidInput);
}

TEST_CASE("a window above every threshold violates nothing") {
  const auto model = hand_model({{0.1, 0.08, 0.3, 5, 0.1}, {0.5, 0.45, 0.2, 5, 0.5}});
  const ScoreSample w({0.9, 0.95, 0.99}, "raw");
  const auto terms = violation_terms(model, w);
  CHECK(std::all_of(terms.begin(), terms.end(), [](double t) { return t == 0.0; }));
  const auto r = detect(model, w, 0.05);
  CHECK(r.v_statistic == 0.0);
  CHECK(r.p_value == 1.0);
  CHECK_FALSE(r.shift_detected);
}

TEST_CASE("a window below every threshold gives V = mean b*") {
  const auto model = hand_model({{0.1, 0.08, 0.3, 5, 0.1}, {0.5, 0.45, 0.2, 5, 0.5}});
  const ScoreSample w(std::vector<double>(20, 0.01), "raw");
  const auto terms = violation_terms(model, w);
  REQUIRE(terms.size() == 40);
  for (std::size_t i = 0; i < 20; ++i) CHECK(terms[i] == 0.08);
  for (std::size_t i = 20; i < 40; ++i) CHECK(terms[i] == 0.45);
  const auto r = detect(model, w, 0.05);
  CHECK(r.v_statistic == doctest::Approx((0.08 + 0.45) / 2));
  CHECK(r.shift_detected);
  CHECK(r.p_value < 0.001);
}

TEST_CASE("equality with the bound counts as violated with zero contribution") {
  const auto model = hand_model({{0.5, 0.5, 0.5, 5, 0.5}});
  const ScoreSample w({0.9, 0.1}, "raw");
  const auto r = detect(model, w, 0.05);
  REQUIRE(r.per_coverage.size() == 1);
  CHECK(r.per_coverage[0].violated);
  CHECK(r.per_coverage[0].empirical_coverage == 0.5);
  CHECK(r.v_statistic == 0.0);
  // Terms are -0.5 and +0.5: mean 0 with spread gives t = 0.
  CHECK(r.t_statistic == 0.0);
  CHECK(r.p_value == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("detect agrees with a t-test on the explicit terms") {
  const auto model = fit(beta_sample(5, 1, 3000, 2), 0.01, 10);
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto w = beta_sample(seed % 2 ? 2 : 5, seed % 2 ? 2 : 1, 60, 100 + seed);
    const auto terms = violation_terms(model, w);
    const auto r = detect(model, w, 0.05);
    const double mean = std::accumulate(terms.begin(), terms.end(), 0.0) / static_cast<double>(terms.size());
    CHECK(r.v_statistic == doctest::Approx(mean).epsilon(1e-12));
    CHECK(r.v_statistic >= 0.0);
    const auto t = t_test_one_sample(terms, 0.0, Alternative::greater);
    CHECK(r.p_value == doctest::Approx(t.p_value).epsilon(1e-9));
    CHECK(r.shift_detected == (r.p_value < 0.05));
  }
}

TEST_CASE("alpha = 0 never reports a shift") {
  const auto model = hand_model({{0.1, 0.08, 0.3, 5, 0.1}});
  const auto r = detect(model, ScoreSample({0.0, 0.01, 0.02}, "raw"), 0.0);
  CHECK_FALSE(r.shift_detected);
  CHECK_THROWS_AS(detect(model, ScoreSample({0.0, 0.01}, "raw"), 1.5), InvalidInput);
  CHECK_THROWS_AS(detect(model, ScoreSample({0.0}, "raw"), 0.05), InvalidInput);
}

TEST_CASE("a window scored with a different confidence function is rejected") {
  const auto model = hand_model({{0.1, 0.08, 0.3, 5, 0.1}}, "entropy");
  CHECK_THROWS_AS(detect(model, ScoreSample({0.5, 0.6}, "sr"), 0.05), InvalidInput);
  CHECK_THROWS_AS(violation_terms(model, ScoreSample({0.5, 0.6}, "sr")), InvalidInput);
}

TEST_CASE("strictly increasing transforms leave the verdict unchanged") {
  auto phi = [](double x) { return std::exp(2.0 * x) - 3.0; };
  auto mapped = [&](const ScoreSample& s) {
    std::vector<double> v;
    for (double x : s.scores()) v.push_back(phi(x));
    return ScoreSample(v, s.kappa_name());
  };
  const auto train = beta_sample(5, 1, 2000, 7);
  const auto a = fit(train, 0.01, 10);
  const auto b = fit(mapped(train), 0.01, 10);
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const auto w = beta_sample(3, 1, 80, 50 + seed);
    const auto ra = detect(a, w, 0.05);
    const auto rb = detect(b, mapped(w), 0.05);
    for (std::size_t j = 0; j < ra.per_coverage.size(); ++j) {
      CHECK(ra.per_coverage[j].empirical_coverage == rb.per_coverage[j].empirical_coverage);
      CHECK(ra.per_coverage[j].violated == rb.per_coverage[j].violated);
    }
    CHECK(same_bits(ra.v_statistic, rb.v_statistic));
    CHECK(same_bits(ra.p_value, rb.p_value));
  }
}

TEST_CASE("large shifted windows are detected") {
  const auto model = fit(beta_sample(5, 1, 5000, 9), 0.01, 10);
  int strong = 0;
  for (std::uint64_t t = 0; t < 100; ++t) {
    if (detect(model, beta_sample(2, 2, 1000, 500 + t), 0.05).p_value < 0.01) ++strong;
  }
  CHECK(strong >= 95);
}

TEST_CASE("model JSON round trip is bit exact") {
  const auto model = fit(beta_sample(5, 1, 1500, 4), 0.037, 7);
  const auto back = model_from_json(model_to_json(model));
  CHECK(back == model);
  for (std::size_t j = 0; j < model.pairs.size(); ++j) {
    CHECK(same_bits(back.pairs[j].b_star, model.pairs[j].b_star));
    CHECK(same_bits(back.pairs[j].theta, model.pairs[j].theta));
    CHECK(same_bits(back.pairs[j].c_target, model.pairs[j].c_target));
  }

  const auto path = std::filesystem::temp_directory_path() / "covshift_model_roundtrip.json";
  save_model(model, path);
  CHECK(load_model(path) == model);
  CHECK_FALSE(std::filesystem::exists(path.string() + ".tmp"));
  std::filesystem::remove(path);
}

TEST_CASE("model loading rejects bad files") {
  auto model = hand_model({{0.1, 0.08, 0.3, 5, 0.1}, {0.5, 0.45, 0.2, 5, 0.5}});
  std::string text = model_to_json(model);

  auto unordered = model;
  std::swap(unordered.pairs[0], unordered.pairs[1]);
  CHECK_THROWS_AS(model_from_json(model_to_json(unordered)), InvalidInput);

  auto future = text;
  future.replace(future.find("\"format_version\": 1"), 19, "\"format_version\": 2");
  CHECK_THROWS_AS(model_from_json(future), VersionError);

  CHECK_THROWS_AS(model_from_json("{not json"), FormatError);
  CHECK_THROWS_AS(model_from_json("{\"format_version\": 1}"), FormatError);
  CHECK_THROWS_AS(load_model("/nonexistent/model.json"), std::exception);
}

TEST_CASE("report JSON carries the verdict") {
  const auto model = hand_model({{0.1, 0.08, 0.3, 5, 0.1}});
  const auto r = detect(model, ScoreSample({0.0, 0.01, 0.02}, "raw"), 0.05);
  const auto text = report_to_json(r);
  CHECK(text.find("\"shift_detected\": true") != std::string::npos);
  CHECK(text.find("\"violated\": true") != std::string::npos);
}
