#pragma once
// Independent reference implementations used by the unit and acceptance
// tests. None of these call into the library; they trade speed for
// obviousness.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <vector>

namespace oracle {

// Binomial CDF summed term by term in log space with std::lgamma.
inline double binomial_cdf(std::int64_t x, std::int64_t m, double b) {
  if (x >= m) return 1.0;
  if (b <= 0.0) return 1.0;
  if (b >= 1.0) return 0.0;
  const double lb = std::log(b);
  const double l1b = std::log1p(-b);
  const double lm = std::lgamma(static_cast<double>(m) + 1.0);
  double acc = -std::numeric_limits<double>::infinity();
  for (std::int64_t i = 0; i <= x; ++i) {
    const double di = static_cast<double>(i);
    const double term = lm - std::lgamma(di + 1.0) - std::lgamma(static_cast<double>(m - i) + 1.0) +
                        di * lb + static_cast<double>(m - i) * l1b;
    const double hi = std::max(acc, term);
    acc = hi + std::log(std::exp(acc - hi) + std::exp(term - hi));
  }
  return std::exp(acc);
}

// First b on a 1e-6 grid with CDF(successes; m, b) <= 1 - delta, where the
// CDF is the same log-space sum as above. The CDF is decreasing in b, so a
// 1e-3 pass brackets the answer and the fine scan only walks one coarse cell.
inline double grid_bound(std::int64_t m, std::int64_t successes, double delta) {
  std::vector<double> log_choose(static_cast<std::size_t>(successes) + 1);
  const double lm = std::lgamma(static_cast<double>(m) + 1.0);
  for (std::int64_t i = 0; i <= successes; ++i) {
    log_choose[static_cast<std::size_t>(i)] =
        lm - std::lgamma(static_cast<double>(i) + 1.0) - std::lgamma(static_cast<double>(m - i) + 1.0);
  }
  const double target = 1.0 - delta;
  auto feasible = [&](double b) {
    if (successes >= m) return false;
    if (b <= 0.0) return 1.0 <= target;
    if (b >= 1.0) return true;
    const double lb = std::log(b);
    const double l1b = std::log1p(-b);
    double acc = -std::numeric_limits<double>::infinity();
    for (std::int64_t i = 0; i <= successes; ++i) {
      const double term = log_choose[static_cast<std::size_t>(i)] + static_cast<double>(i) * lb +
                          static_cast<double>(m - i) * l1b;
      const double hi = std::max(acc, term);
      acc = hi + std::log(std::exp(acc - hi) + std::exp(term - hi));
    }
    return std::exp(acc) <= target;
  };
  int coarse = 0;
  while (coarse < 1000 && !feasible(coarse * 1e-3)) ++coarse;
  const int start = std::max(0, coarse - 1) * 1000;
  for (int i = start; i <= 1000000; ++i) {
    if (feasible(i * 1e-6)) return i * 1e-6;
  }
  return 1.0;
}

using Points = std::vector<std::vector<double>>;

inline double rbf(const std::vector<double>& a, const std::vector<double>& b, double sigma) {
  double d2 = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) d2 += (a[i] - b[i]) * (a[i] - b[i]);
  return std::exp(-d2 / (2.0 * sigma * sigma));
}

// Unbiased MMD^2 as the textbook triple sum.
inline double mmd2_unbiased(const Points& x, const Points& y, double sigma) {
  const double n = static_cast<double>(x.size());
  const double m = static_cast<double>(y.size());
  double kxx = 0.0, kyy = 0.0, kxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t j = 0; j < x.size(); ++j)
      if (i != j) kxx += rbf(x[i], x[j], sigma);
  for (std::size_t i = 0; i < y.size(); ++i)
    for (std::size_t j = 0; j < y.size(); ++j)
      if (i != j) kyy += rbf(y[i], y[j], sigma);
  for (const auto& a : x)
    for (const auto& b : y) kxy += rbf(a, b, sigma);
  return kxx / (n * (n - 1.0)) + kyy / (m * (m - 1.0)) - 2.0 * kxy / (n * m);
}

// Largest vertical gap between two empirical CDFs, checked at every pooled
// point.
inline double ks_statistic(const std::vector<double>& a, const std::vector<double>& b) {
  std::vector<double> pooled(a);
  pooled.insert(pooled.end(), b.begin(), b.end());
  double best = 0.0;
  for (double t : pooled) {
    const double fa = static_cast<double>(std::count_if(a.begin(), a.end(), [&](double v) { return v <= t; })) /
                      static_cast<double>(a.size());
    const double fb = static_cast<double>(std::count_if(b.begin(), b.end(), [&](double v) { return v <= t; })) /
                      static_cast<double>(b.size());
    best = std::max(best, std::abs(fa - fb));
  }
  return best;
}

// Probability that a random positive outscores a random negative, ties
// counted as one half. O(P*N).
inline double pairwise_auroc(const std::vector<double>& pos, const std::vector<double>& neg) {
  double wins = 0.0;
  for (double p : pos)
    for (double n : neg) wins += p > n ? 1.0 : (p == n ? 0.5 : 0.0);
  return wins / (static_cast<double>(pos.size()) * static_cast<double>(neg.size()));
}

// Average precision: walk distinct thresholds from the top and weight each
// precision by the recall it adds.
inline double average_precision(const std::vector<double>& pos, const std::vector<double>& neg) {
  std::vector<double> thresholds(pos);
  thresholds.insert(thresholds.end(), neg.begin(), neg.end());
  std::sort(thresholds.begin(), thresholds.end(), std::greater<>());
  thresholds.erase(std::unique(thresholds.begin(), thresholds.end()), thresholds.end());
  const double np = static_cast<double>(pos.size());
  double ap = 0.0, prev_recall = 0.0;
  for (double t : thresholds) {
    const double tp = static_cast<double>(std::count_if(pos.begin(), pos.end(), [&](double v) { return v >= t; }));
    const double fp = static_cast<double>(std::count_if(neg.begin(), neg.end(), [&](double v) { return v >= t; }));
    const double recall = tp / np;
    ap += (recall - prev_recall) * (tp / (tp + fp));
    prev_recall = recall;
  }
  return ap;
}

}  // namespace oracle
