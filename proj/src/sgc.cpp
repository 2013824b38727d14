#include "covshift/sgc.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

#include "covshift/bounds.hpp"
#include "covshift/error.hpp"
#include "covshift/kernels.hpp"

namespace covshift {

double empirical_coverage(double theta, std::span<const double> scores) {
  if (scores.empty()) throw InvalidInput("empirical coverage of an empty sample");
  return static_cast<double>(kernels::count_at_least(scores, theta)) /
         static_cast<double>(scores.size());
}

double empirical_coverage(double theta, const ScoreSample& sample) {
  return empirical_coverage(theta, sample.scores());
}

std::int64_t m_times_c(std::int64_t m, double c_hat) {
  return std::llround(static_cast<double>(m) * c_hat);
}

std::int64_t sgc_iterations(std::int64_t m) {
  if (m < 2) throw InvalidInput("m must be >= 2");
  return static_cast<std::int64_t>(std::bit_width(static_cast<std::uint64_t>(m - 1)));
}

SgcTrace run_sgc_sorted(std::span<const double> sorted, const SgcConfig& cfg) {
  const auto m = static_cast<std::int64_t>(sorted.size());
  if (m < 2) throw InvalidInput("m must be >= 2");
  if (!(cfg.delta > 0.0 && cfg.delta < 1.0)) throw InvalidInput("delta must lie in (0,1)");
  if (!(cfg.target_coverage > 0.0 && cfg.target_coverage <= 1.0)) {
    throw InvalidInput("target coverage must lie in (0,1]");
  }

  const std::int64_t k = sgc_iterations(m);
  const double step_delta = cfg.delta / static_cast<double>(k);

  SgcTrace trace;
  trace.steps.reserve(static_cast<std::size_t>(k));
  std::int64_t z_min = 1;
  std::int64_t z_max = m;
  for (std::int64_t i = 0; i < k; ++i) {
    SgcStep step;
    step.z = (z_min + z_max + 1) / 2;
    step.theta = sorted[static_cast<std::size_t>(step.z - 1)];
    // Ascending order: everything from the first element >= theta is selected.
    const auto first = std::lower_bound(sorted.begin(), sorted.end(), step.theta);
    const auto selected = static_cast<std::int64_t>(sorted.end() - first);
    step.empirical_coverage = static_cast<double>(selected) / static_cast<double>(m);
    step.successes = m_times_c(m, step.empirical_coverage);
    step.b_star = solve_bound({m, step.successes, step_delta}).b_star;
    if (step.b_star <= cfg.target_coverage) {
      z_max = step.z;
    } else {
      z_min = step.z;
    }
    trace.steps.push_back(step);
  }

  const SgcStep& last = trace.steps.back();
  trace.result = CoverageBound{cfg.target_coverage, last.b_star, last.theta, k,
                               last.empirical_coverage};
  return trace;
}

SgcTrace run_sgc_traced(const ScoreSample& sample, const SgcConfig& cfg) {
  std::vector<double> sorted(sample.scores().begin(), sample.scores().end());
  std::sort(sorted.begin(), sorted.end());
  return run_sgc_sorted(sorted, cfg);
}

CoverageBound run_sgc(const ScoreSample& sample, const SgcConfig& cfg) {
  return run_sgc_traced(sample, cfg).result;
}

}  // namespace covshift
