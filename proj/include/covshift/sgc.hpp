#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "covshift/scores.hpp"

namespace covshift {

struct SgcConfig {
  double delta = 0.01;
  double target_coverage = 0.5;
};

/// One (target coverage, bound, threshold) triple from selection with
/// guaranteed coverage.
struct CoverageBound {
  double c_target = 0.0;
  double b_star = 0.0;
  double theta = 0.0;
  std::int64_t iterations = 0;
  double empirical_coverage_at_fit = 0.0;

  friend bool operator==(const CoverageBound&, const CoverageBound&) = default;
};

/// State of one binary-search step; `z` is the 1-based position in the
/// ascending sort.
struct SgcStep {
  std::int64_t z = 0;
  double theta = 0.0;
  double empirical_coverage = 0.0;
  std::int64_t successes = 0;
  double b_star = 0.0;
};

struct SgcTrace {
  CoverageBound result;
  std::vector<SgcStep> steps;
};

/// Fraction of scores >= theta.
double empirical_coverage(double theta, std::span<const double> scores);
double empirical_coverage(double theta, const ScoreSample& sample);

/// Nearest-integer m * c_hat; exact for c_hat = j / m.
std::int64_t m_times_c(std::int64_t m, double c_hat);

/// ceil(log2 m) for m >= 2.
std::int64_t sgc_iterations(std::int64_t m);

/// Returns the final iteration's (b*, theta); earlier steps are not
/// compared against the target.
CoverageBound run_sgc(const ScoreSample& sample, const SgcConfig& cfg);
SgcTrace run_sgc_traced(const ScoreSample& sample, const SgcConfig& cfg);

/// Same search over scores already sorted ascending.
SgcTrace run_sgc_sorted(std::span<const double> sorted, const SgcConfig& cfg);

}  // namespace covshift
