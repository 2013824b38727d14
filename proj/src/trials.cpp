#include "covshift/trials.hpp"

#include <algorithm>
#include <cstdio>

#include "covshift/error.hpp"
#include "covshift/rng.hpp"

namespace covshift {

namespace {

template <typename Sample, typename Method>
TrialReport run_trials_impl(const Sample& id_pool, const Sample& shifted_pool, const Method& method,
                            const TrialPlan& plan, std::string method_name) {
  plan.validate();
  const std::size_t largest = *std::max_element(plan.window_sizes.begin(), plan.window_sizes.end());
  if (id_pool.size() < largest || shifted_pool.size() < largest) {
    throw InvalidInput("pools hold " + std::to_string(id_pool.size()) + " and " +
                       std::to_string(shifted_pool.size()) + " items; window size " +
                       std::to_string(largest) + " needs at least that many");
  }
  const Rng base(plan.seed);
  TrialReport report{std::move(method_name), plan.seed, {}};
  for (std::size_t w = 0; w < plan.window_sizes.size(); ++w) {
    const std::size_t k = plan.window_sizes[w];
    LabeledPValues data;
    data.reserve(2 * static_cast<std::size_t>(plan.n_trials));
    for (int t = 0; t < plan.n_trials; ++t) {
      const auto trial = static_cast<std::uint64_t>(w) * static_cast<std::uint64_t>(plan.n_trials) +
                         static_cast<std::uint64_t>(t);
      Rng rng = base.derive(trial);
      const auto id_rows = sample_without_replacement(id_pool.size(), k, rng);
      const auto shifted_rows = sample_without_replacement(shifted_pool.size(), k, rng);
      data.push_back({method(id_pool.subset(id_rows), 2 * trial), false});
      data.push_back({method(shifted_pool.subset(shifted_rows), 2 * trial + 1), true});
    }
    report.rows.push_back(summarize(k, std::move(data)));
  }
  return report;
}

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

}  // namespace

void TrialPlan::validate() const {
  if (window_sizes.empty()) throw InvalidInput("plan has no window sizes");
  for (auto k : window_sizes) {
    if (k < 2) throw InvalidInput("window sizes must be >= 2");
  }
  if (n_trials < 1) throw InvalidInput("plan needs at least one trial");
  if (!(alpha > 0.0 && alpha < 1.0)) throw InvalidInput("alpha must lie in (0,1)");
}

MetricRow summarize(std::size_t window_size, LabeledPValues data) {
  MetricRow row;
  row.window_size = window_size;
  row.n_trials = static_cast<int>(data.size() / 2);
  row.auroc = auroc(data);
  row.aupr_in = aupr(data, PrPositive::in);
  row.aupr_out = aupr(data, PrPositive::out);
  const auto t = detection_error_and_fpr_at_95tpr(data);
  row.detection_error = t.detection_error;
  row.fpr_at_95tpr = t.fpr_at_95tpr;
  row.data = std::move(data);
  return row;
}

TrialReport run_trials(const ScoreSample& id_pool, const ScoreSample& shifted_pool,
                       const ScoreMethod& method, const TrialPlan& plan, std::string method_name) {
  return run_trials_impl(id_pool, shifted_pool, method, plan, std::move(method_name));
}

TrialReport run_trials(const VectorSample& id_pool, const VectorSample& shifted_pool,
                       const VectorMethod& method, const TrialPlan& plan, std::string method_name) {
  return run_trials_impl(id_pool, shifted_pool, method, plan, std::move(method_name));
}

std::string metrics_csv(const std::vector<TrialReport>& reports) {
  std::string out =
      "method,window_size,auroc,aupr_in,aupr_out,detection_error,fpr_at_95tpr,n_trials,seed\n";
  for (const auto& r : reports) {
    for (const auto& row : r.rows) {
      out += r.method + ',' + std::to_string(row.window_size) + ',' + format_double(row.auroc) +
             ',' + format_double(row.aupr_in) + ',' + format_double(row.aupr_out) + ',' +
             format_double(row.detection_error) + ',' + format_double(row.fpr_at_95tpr) + ',' +
             std::to_string(row.n_trials) + ',' + std::to_string(r.seed) + '\n';
    }
  }
  return out;
}

}  // namespace covshift
