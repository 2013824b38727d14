#include "covshift/metrics.hpp"

#include <algorithm>

#include "covshift/error.hpp"

namespace covshift {

namespace {

struct Counts {
  std::size_t positives = 0;
  std::size_t negatives = 0;
};

Counts count_classes(std::span<const ScoredLabel> data) {
  Counts c;
  for (const auto& d : data) (d.positive ? c.positives : c.negatives)++;
  if (c.positives == 0 || c.negatives == 0) {
    throw InvalidInput("threshold metrics need both classes present");
  }
  return c;
}

std::vector<ScoredLabel> sorted_descending(std::span<const ScoredLabel> data) {
  std::vector<ScoredLabel> v(data.begin(), data.end());
  std::stable_sort(v.begin(), v.end(),
                   [](const ScoredLabel& a, const ScoredLabel& b) { return a.score > b.score; });
  return v;
}

// Ranking by -p instead of 1 - p keeps tiny p-values distinct.
std::vector<ScoredLabel> to_scored(std::span<const LabeledPValue> data, bool score_is_p,
                                   bool shifted_positive) {
  std::vector<ScoredLabel> out;
  out.reserve(data.size());
  for (const auto& d : data) {
    out.push_back({score_is_p ? d.p_value : -d.p_value, d.is_shifted == shifted_positive});
  }
  return out;
}

}  // namespace

double auroc_scores(std::span<const ScoredLabel> data) {
  const Counts c = count_classes(data);
  std::vector<ScoredLabel> v(data.begin(), data.end());
  std::sort(v.begin(), v.end(),
            [](const ScoredLabel& a, const ScoredLabel& b) { return a.score < b.score; });
  // Twice the rank sum of positives keeps tied mid-ranks integral.
  double twice_rank_sum = 0.0;
  std::size_t i = 0;
  while (i < v.size()) {
    std::size_t j = i;
    std::size_t pos = 0;
    while (j < v.size() && v[j].score == v[i].score) pos += v[j++].positive ? 1 : 0;
    twice_rank_sum += static_cast<double>(pos) * static_cast<double>(i + 1 + j);
    i = j;
  }
  const double np = static_cast<double>(c.positives);
  const double nn = static_cast<double>(c.negatives);
  return (twice_rank_sum - np * (np + 1.0)) / (2.0 * np * nn);
}

double average_precision(std::span<const ScoredLabel> data) {
  const Counts c = count_classes(data);
  const auto v = sorted_descending(data);
  double ap = 0.0;
  double prev_recall = 0.0;
  std::size_t tp = 0;
  std::size_t i = 0;
  while (i < v.size()) {
    std::size_t j = i;
    while (j < v.size() && v[j].score == v[i].score) tp += v[j++].positive ? 1 : 0;
    const double recall = static_cast<double>(tp) / static_cast<double>(c.positives);
    const double precision = static_cast<double>(tp) / static_cast<double>(j);
    ap += (recall - prev_recall) * precision;
    prev_recall = recall;
    i = j;
  }
  return ap;
}

double auroc(std::span<const LabeledPValue> data) {
  return auroc_scores(to_scored(data, false, true));
}

double aupr(std::span<const LabeledPValue> data, PrPositive positive) {
  return positive == PrPositive::in ? average_precision(to_scored(data, true, false))
                                    : average_precision(to_scored(data, false, true));
}

ThresholdMetrics detection_error_and_fpr_at_95tpr(std::span<const LabeledPValue> data) {
  const auto scored = to_scored(data, false, true);
  const Counts c = count_classes(scored);
  const auto v = sorted_descending(scored);
  std::size_t tp = 0;
  std::size_t fp = 0;
  std::size_t i = 0;
  while (i < v.size()) {
    std::size_t j = i;
    while (j < v.size() && v[j].score == v[i].score) (v[j++].positive ? tp : fp)++;
    // TPR >= 0.95, compared in integers.
    if (100 * tp >= 95 * c.positives) break;
    i = j;
  }
  ThresholdMetrics m;
  m.tpr = static_cast<double>(tp) / static_cast<double>(c.positives);
  m.fpr_at_95tpr = static_cast<double>(fp) / static_cast<double>(c.negatives);
  m.detection_error = 0.5 * (1.0 - m.tpr) + 0.5 * m.fpr_at_95tpr;
  return m;
}

}  // namespace covshift
