#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "covshift/baselines.hpp"
#include "covshift/metrics.hpp"
#include "covshift/scores.hpp"

namespace covshift {

struct TrialPlan {
  std::vector<std::size_t> window_sizes{10, 20, 50, 100, 200, 500, 1000};
  int n_trials = 15;
  double alpha = 0.05;
  std::uint64_t seed = 0;

  void validate() const;
};

struct MetricRow {
  std::size_t window_size = 0;
  double auroc = 0.0;
  double aupr_in = 0.0;
  double aupr_out = 0.0;
  double detection_error = 0.0;
  double fpr_at_95tpr = 0.0;
  int n_trials = 0;
  LabeledPValues data;
};

struct TrialReport {
  std::string method;
  std::uint64_t seed = 0;
  std::vector<MetricRow> rows;
};

/// Maps a window to a p-value. `stream` identifies the trial so randomized
/// methods can draw from a reproducible sub-stream.
using ScoreMethod = std::function<double(const ScoreSample& window, std::uint64_t stream)>;
using VectorMethod = std::function<double(const VectorSample& window, std::uint64_t stream)>;

/// For every window size and trial, draws one in-distribution and one shifted
/// window without replacement and scores both with `method`.
TrialReport run_trials(const ScoreSample& id_pool, const ScoreSample& shifted_pool,
                       const ScoreMethod& method, const TrialPlan& plan, std::string method_name);
TrialReport run_trials(const VectorSample& id_pool, const VectorSample& shifted_pool,
                       const VectorMethod& method, const TrialPlan& plan, std::string method_name);

MetricRow summarize(std::size_t window_size, LabeledPValues data);

/// Header plus one row per (method, window size).
std::string metrics_csv(const std::vector<TrialReport>& reports);

}  // namespace covshift
