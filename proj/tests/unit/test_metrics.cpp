#include <doctest.h>

#include <cmath>
#include <vector>

#include "covshift/error.hpp"
#include "covshift/metrics.hpp"
#include "covshift/rng.hpp"
#include "oracles.hpp"

using namespace covshift;

namespace {

LabeledPValues make(const std::vector<double>& shifted, const std::vector<double>& id) {
  LabeledPValues out;
  for (double p : shifted) out.push_back({p, true});
  for (double p : id) out.push_back({p, false});
  return out;
}

LabeledPValues random_labels(Rng& rng, std::size_t n, bool coarse) {
  LabeledPValues d;
  for (std::size_t i = 0; i < n; ++i) {
    const bool shifted = i == 0 ? true : (i == 1 ? false : rng.below(2) == 1);
    double p = rng.uniform();
    if (coarse) p = static_cast<double>(rng.below(5)) / 4.0;
    if (shifted) p *= 0.7;
    d.push_back({p, shifted});
  }
  return d;
}

void split_scores(const LabeledPValues& d, std::vector<double>& shifted_scores, std::vector<double>& id_scores) {
  for (const auto& x : d) (x.is_shifted ? shifted_scores : id_scores).push_back(-x.p_value);
}

}  // namespace

TEST_CASE("AUROC fixtures") {
  CHECK(auroc(make({0.01, 0.02}, {0.6, 0.9})) == 1.0);
  CHECK(auroc(make({0.3, 0.3}, {0.3, 0.3, 0.3})) == 0.5);
  CHECK(auroc(make({0.01, 0.5}, {0.2, 0.8})) == 0.75);
  CHECK(auroc(make({0.9}, {0.1})) == 0.0);
}

TEST_CASE("AUROC matches pairwise counting") {
  Rng rng(1);
  for (int t = 0; t < 100; ++t) {
    const auto d = random_labels(rng, 2 + rng.below(60), t % 2 == 0);
    std::vector<double> pos, neg;
    split_scores(d, pos, neg);
    CHECK(auroc(d) == doctest::Approx(oracle::pairwise_auroc(pos, neg)).epsilon(1e-14));
  }
}

TEST_CASE("label flip complements AUROC; flipping labels and negating scores restores it") {
  Rng rng(2);
  for (int t = 0; t < 100; ++t) {
    std::vector<ScoredLabel> d;
    const std::size_t n = 2 + rng.below(40);
    for (std::size_t i = 0; i < n; ++i) {
      d.push_back({static_cast<double>(rng.below(10)), i == 0 ? true : (i == 1 ? false : rng.below(2) == 1)});
    }
    auto flipped = d;
    for (auto& x : flipped) x.positive = !x.positive;
    CHECK(auroc_scores(d) + auroc_scores(flipped) == doctest::Approx(1.0).epsilon(1e-14));
    auto both = flipped;
    for (auto& x : both) x.score = -x.score;
    CHECK(auroc_scores(both) == doctest::Approx(auroc_scores(d)).epsilon(1e-14));
  }
}

TEST_CASE("average precision fixtures") {
  const std::vector<ScoredLabel> walk{{0.9, true}, {0.4, true}, {0.6, false}, {0.1, false}};
  // Ranking +, -, +, -: recall 1/2 at precision 1, then 1/2 more at precision 2/3.
  CHECK(average_precision(walk) == doctest::Approx(5.0 / 6.0).epsilon(1e-15));

  std::vector<ScoredLabel> flat;
  for (int i = 0; i < 10; ++i) flat.push_back({0.5, i < 3});
  CHECK(average_precision(flat) == doctest::Approx(0.3).epsilon(1e-15));

  const auto perfect = make({0.01, 0.02, 0.03}, {0.6, 0.9});
  CHECK(aupr(perfect, PrPositive::in) == 1.0);
  CHECK(aupr(perfect, PrPositive::out) == 1.0);
}

TEST_CASE("average precision matches the threshold-walk oracle") {
  Rng rng(3);
  for (int t = 0; t < 100; ++t) {
    const auto d = random_labels(rng, 2 + rng.below(60), t % 2 == 0);
    std::vector<double> shifted, id;
    split_scores(d, shifted, id);
    CHECK(aupr(d, PrPositive::out) == doctest::Approx(oracle::average_precision(shifted, id)).epsilon(1e-13));
    // AUPR-In: ID positive, ranked by p itself.
    for (auto& x : shifted) x = -x;
    for (auto& x : id) x = -x;
    CHECK(aupr(d, PrPositive::in) == doctest::Approx(oracle::average_precision(id, shifted)).epsilon(1e-13));
  }
}

TEST_CASE("FPR at 95% TPR and detection error") {
  const auto perfect = make({0.01, 0.02}, {0.6, 0.9});
  const auto pm = detection_error_and_fpr_at_95tpr(perfect);
  CHECK(pm.fpr_at_95tpr == 0.0);
  CHECK(pm.detection_error <= 0.025);

  const auto same = make({0.4, 0.4, 0.4}, {0.4, 0.4});
  const auto sm = detection_error_and_fpr_at_95tpr(same);
  CHECK(sm.fpr_at_95tpr == 1.0);
  CHECK(sm.detection_error == 0.5);

  // 18 clean positives, then one negative, then the last two positives.
  std::vector<double> shifted, id;
  for (int i = 0; i < 18; ++i) shifted.push_back(0.001 * (i + 1));
  shifted.push_back(0.45);
  shifted.push_back(0.5);
  id.push_back(0.4);
  for (int i = 0; i < 19; ++i) id.push_back(0.6 + 0.01 * i);
  const auto m = detection_error_and_fpr_at_95tpr(make(shifted, id));
  CHECK(m.tpr == 0.95);
  CHECK(m.fpr_at_95tpr == 0.05);
  CHECK(m.detection_error == doctest::Approx(0.05).epsilon(1e-15));
}

TEST_CASE("metrics are invariant to strictly increasing transforms of p") {
  Rng rng(4);
  for (int t = 0; t < 30; ++t) {
    const auto d = random_labels(rng, 30, t % 2 == 0);
    auto mapped = d;
    for (auto& x : mapped) x.p_value = std::sqrt(x.p_value) * 0.5 + 0.1;
    CHECK(auroc(mapped) == auroc(d));
    CHECK(aupr(mapped, PrPositive::in) == aupr(d, PrPositive::in));
    CHECK(aupr(mapped, PrPositive::out) == aupr(d, PrPositive::out));
    CHECK(detection_error_and_fpr_at_95tpr(mapped).fpr_at_95tpr == detection_error_and_fpr_at_95tpr(d).fpr_at_95tpr);
  }
}

TEST_CASE("p-values too small for 1 - p still rank correctly") {
  CHECK(auroc(make({1e-300, 1e-200}, {1e-250, 0.5})) == 0.75);
}

TEST_CASE("single-class data is rejected") {
  CHECK_THROWS_AS(auroc(make({0.1, 0.2}, {})), InvalidInput);
  CHECK_THROWS_AS(aupr(make({}, {0.1}), PrPositive::in), InvalidInput);
  CHECK_THROWS_AS(detection_error_and_fpr_at_95tpr(make({0.1}, {})), InvalidInput);
}
