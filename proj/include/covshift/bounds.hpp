#pragma once

#include <cstdint>

namespace covshift {

/// Inputs of the binomial-tail coverage bound: m draws, `successes` of which
/// were selected, confidence parameter delta.
struct BoundQuery {
  std::int64_t m = 0;
  std::int64_t successes = 0;
  double delta = 0.0;
};

struct BoundResult {
  double b_star = 0.0;
  /// False only when successes == m: the tail constraint cannot be met and
  /// b_star holds the exact lower bound delta^(1/m) instead.
  bool satisfiable = true;
};

inline constexpr double kBoundTolerance = 1e-10;
/// Up to this m the CDF is a log-space sum; above it the incomplete beta identity is used.
inline constexpr std::int64_t kDirectSumLimit = 1000;

/// Smallest b in [0,1] with BinomialCDF(successes; m, b) <= 1 - delta,
/// located by bisection to kBoundTolerance.
BoundResult solve_bound(const BoundQuery& q);

/// P(X <= x) for X ~ Binomial(m, b).
double binomial_cdf(std::int64_t x, std::int64_t m, double b);

}  // namespace covshift
