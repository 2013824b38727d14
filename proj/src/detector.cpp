#include "covshift/detector.hpp"

#include <algorithm>
#include <stdexcept>

#include "covshift/error.hpp"
#include "covshift/kernels.hpp"
#include "covshift/stats.hpp"

namespace covshift {

namespace {

void check_window(const DetectorModel& model, const ScoreSample& window) {
  if (window.kappa_name() != model.kappa_name) {
    throw InvalidInput("window scores use confidence function '" + window.kappa_name() +
                       "' but the model was fit with '" + model.kappa_name + "'");
  }
}

}  // namespace

void DetectorModel::validate() const {
  if (c_target_count < 1) throw InvalidInput("model needs at least one coverage");
  if (pairs.size() != static_cast<std::size_t>(c_target_count)) {
    throw InvalidInput("model has " + std::to_string(pairs.size()) + " pairs, expected " +
                       std::to_string(c_target_count));
  }
  if (!(delta > 0.0 && delta < 1.0)) throw InvalidInput("model delta outside (0,1)");
  if (m < 2) throw InvalidInput("model m must be >= 2");
  for (std::size_t j = 0; j < pairs.size(); ++j) {
    const auto& p = pairs[j];
    if (!(p.c_target >= kLowestCoverage - 1e-12 && p.c_target < 1.0)) {
      throw InvalidInput("model target coverage outside [0.1, 1)");
    }
    if (j > 0 && !(p.c_target > pairs[j - 1].c_target)) {
      throw InvalidInput("model target coverages are not strictly increasing");
    }
    if (!(p.b_star >= 0.0 && p.b_star <= 1.0)) throw InvalidInput("model bound outside [0,1]");
  }
}

std::vector<double> coverage_grid(int count) {
  if (count < 1) throw InvalidInput("coverage count must be >= 1");
  std::vector<double> grid(static_cast<std::size_t>(count));
  const double step = (1.0 - kLowestCoverage) / count;
  for (int j = 0; j < count; ++j) grid[static_cast<std::size_t>(j)] = kLowestCoverage + j * step;
  return grid;
}

DetectorModel fit(const ScoreSample& sample, double delta, int c_target_count) {
  if (sample.size() < 2) throw InvalidInput("m must be >= 2");
  const auto grid = coverage_grid(c_target_count);
  std::vector<double> sorted(sample.scores().begin(), sample.scores().end());
  std::sort(sorted.begin(), sorted.end());

  DetectorModel model;
  model.delta = delta;
  model.c_target_count = c_target_count;
  model.kappa_name = sample.kappa_name();
  model.m = static_cast<std::int64_t>(sample.size());
  model.pairs.reserve(grid.size());
  for (double c : grid) model.pairs.push_back(run_sgc_sorted(sorted, {delta, c}).result);
  return model;
}

std::vector<double> violation_terms(const DetectorModel& model, const ScoreSample& window) {
  check_window(model, window);
  const auto scores = window.scores();
  std::vector<double> terms;
  terms.reserve(scores.size() * model.pairs.size());
  for (const auto& p : model.pairs) {
    const bool violated = empirical_coverage(p.theta, scores) <= p.b_star;
    for (double x : scores) {
      const double g = x >= p.theta ? 1.0 : 0.0;
      terms.push_back(violated ? p.b_star - g : 0.0);
    }
  }
  return terms;
}

DetectionReport detect(const DetectorModel& model, const ScoreSample& window, double alpha) {
  check_window(model, window);
  if (window.size() < 2) throw InvalidInput("window size k must be >= 2");
  if (!(alpha >= 0.0 && alpha <= 1.0)) throw InvalidInput("alpha must lie in [0,1]");

  const auto scores = window.scores();
  const auto k = static_cast<double>(scores.size());

  DetectionReport report;
  report.alpha = alpha;
  report.window_size = scores.size();
  report.per_coverage.reserve(model.pairs.size());

  // Each coverage contributes `selected` copies of (b - 1) and k - selected
  // copies of b when violated, k zeros otherwise.
  struct Group {
    double value;
    double count;
  };
  std::vector<Group> groups;
  groups.reserve(2 * model.pairs.size());
  double v_sum = 0.0;
  double term_sum = 0.0;
  for (const auto& p : model.pairs) {
    const auto selected = static_cast<double>(kernels::count_at_least(scores, p.theta));
    const double c_hat = selected / k;
    const bool violated = c_hat <= p.b_star;
    report.per_coverage.push_back({p.c_target, p.b_star, p.theta, c_hat, violated});
    if (violated) {
      v_sum += p.b_star - c_hat;
      groups.push_back({p.b_star - 1.0, selected});
      groups.push_back({p.b_star, k - selected});
      term_sum += selected * (p.b_star - 1.0) + (k - selected) * p.b_star;
    } else {
      groups.push_back({0.0, k});
    }
  }
  report.v_statistic = v_sum / static_cast<double>(model.pairs.size());
  if (report.v_statistic < 0.0) throw std::logic_error("violation statistic is negative");

  SampleMoments moments;
  moments.n = scores.size() * model.pairs.size();
  moments.mean = term_sum / static_cast<double>(moments.n);
  const Group* first = nullptr;
  moments.constant = true;
  double ss = 0.0;
  for (const auto& g : groups) {
    if (g.count == 0.0) continue;
    if (first == nullptr) first = &g;
    moments.constant = moments.constant && g.value == first->value;
    ss += g.count * (g.value - moments.mean) * (g.value - moments.mean);
  }
  if (moments.constant) {
    moments.mean = first->value;
  } else {
    moments.variance = ss / static_cast<double>(moments.n - 1);
  }

  const TestResult t = t_test_from_moments(moments, 0.0, Alternative::greater);
  report.t_statistic = t.statistic;
  report.p_value = t.p_value;
  report.shift_detected = report.p_value < alpha;
  return report;
}

}  // namespace covshift
