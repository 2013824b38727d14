#include "covshift/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "covshift/error.hpp"
#include "covshift/special.hpp"

namespace covshift {

namespace {

// Running log-sum-exp over the binomial terms j = 0..x.
double binomial_cdf_log_sum(std::int64_t x, std::int64_t m, double b) {
  const double log_odds = std::log(b) - std::log1p(-b);
  const double n = static_cast<double>(m);
  // ln of the j = 0 term: m ln(1 - b).
  double log_term = n * std::log1p(-b);
  double max_log = log_term;
  double sum = 1.0;
  for (std::int64_t j = 0; j < x; ++j) {
    const double jd = static_cast<double>(j);
    log_term += std::log((n - jd) / (jd + 1.0)) + log_odds;
    if (log_term > max_log) {
      sum = sum * std::exp(max_log - log_term) + 1.0;
      max_log = log_term;
    } else {
      sum += std::exp(log_term - max_log);
    }
  }
  return std::min(1.0, std::exp(max_log) * sum);
}

// BinomialCDF(x; m, b) = I_{1-b}(m - x, x + 1). The continued-fraction
// prefactor equals (m - x) * b * pmf(x), which the saddle-point pmf gives
// without the cancellation of ln B(m - x, x + 1).
double binomial_cdf_beta(std::int64_t x, std::int64_t m, double b) {
  const double a = static_cast<double>(m - x);
  const double bb = static_cast<double>(x + 1);
  const double front = a * b * special::binomial_pmf(x, m, b);
  return std::clamp(special::detail::incomplete_beta_from_front(a, bb, 1.0 - b, front), 0.0, 1.0);
}

}  // namespace

double binomial_cdf(std::int64_t x, std::int64_t m, double b) {
  if (m < 1 || x < 0 || x > m) throw InvalidInput("binomial_cdf requires 0 <= x <= m, m >= 1");
  if (!(b >= 0.0 && b <= 1.0)) throw InvalidInput("binomial_cdf requires b in [0,1]");
  if (x == m || b == 0.0) return 1.0;
  if (b == 1.0) return 0.0;
  if (m <= kDirectSumLimit) return binomial_cdf_log_sum(x, m, b);
  return binomial_cdf_beta(x, m, b);
}

BoundResult solve_bound(const BoundQuery& q) {
  if (q.m < 1) throw InvalidInput("bound requires m >= 1");
  if (q.successes < 0 || q.successes > q.m) throw InvalidInput("successes must lie in [0, m]");
  if (!(q.delta > 0.0 && q.delta < 1.0)) throw InvalidInput("delta must lie in (0,1)");

  if (q.successes == q.m) {
    return {std::pow(q.delta, 1.0 / static_cast<double>(q.m)), false};
  }
  const double target = 1.0 - q.delta;
  // cdf(0) = 1 > target is infeasible, cdf(1) = 0 is feasible.
  double lo = 0.0;
  double hi = 1.0;
  while (hi - lo > kBoundTolerance) {
    const double mid = 0.5 * (lo + hi);
    if (binomial_cdf(q.successes, q.m, mid) <= target) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return {hi, true};
}

}  // namespace covshift
