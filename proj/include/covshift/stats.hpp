#pragma once

#include <cstddef>
#include <map>
#include <span>
#include <string>

#include "covshift/matrix.hpp"
#include "covshift/rng.hpp"

namespace covshift {

/// Output shared by every hypothesis test in the library.
struct TestResult {
  double statistic = 0.0;
  double p_value = 1.0;
  std::string method;
  std::map<std::string, double> detail;
};

enum class Alternative { greater, less, two_sided };

// --- Kolmogorov-Smirnov ---------------------------------------------------

/// sup |F_a - F_b| over the pooled support, tie-aware.
double ks_statistic(std::span<const double> a, std::span<const double> b);
/// Asymptotic two-sample p-value with the Stephens small-sample factor.
double ks_p_value(double statistic, std::size_t na, std::size_t nb);
TestResult ks_two_sample(std::span<const double> a, std::span<const double> b);

// --- Maximum mean discrepancy ---------------------------------------------

/// Unbiased MMD^2 with K(x, x') = exp(-|x - x'|^2 / (2 sigma^2)).
double mmd2_unbiased(const Matrix& x, const Matrix& y, double bandwidth);
/// sigma such that 2 sigma^2 equals the median pooled pairwise distance.
double median_heuristic_bandwidth(const Matrix& x, const Matrix& y);

inline constexpr int kDefaultPermutations = 100;

/// Permutation test on a kernel matrix built once from the pooled sample.
/// Permutation i draws from rng.derive(i), so the result does not depend on
/// evaluation order. p = (1 + #{perm >= observed}) / (1 + n_permutations).
TestResult permutation_test_mmd(const Matrix& x, const Matrix& y, int n_permutations,
                                const Rng& rng);

// --- t-tests ---------------------------------------------------------------

/// Summary of a sample for the one-sample t-test. `constant` marks samples
/// whose values are all identical.
struct SampleMoments {
  std::size_t n = 0;
  double mean = 0.0;
  double variance = 0.0;  // n - 1 denominator
  bool constant = false;
};

SampleMoments sample_moments(std::span<const double> values);

/// One-sample t-test. For constant samples p is 0 or 1 depending on which
/// side of popmean the value falls (t = 0 gives p = 1).
TestResult t_test_one_sample(std::span<const double> values, double popmean = 0.0,
                             Alternative side = Alternative::greater);
TestResult t_test_from_moments(const SampleMoments& moments, double popmean, Alternative side);

/// Welch's unequal-variance test with Welch-Satterthwaite degrees of freedom.
TestResult t_test_two_sample_welch(std::span<const double> a, std::span<const double> b,
                                   Alternative side = Alternative::two_sided);

}  // namespace covshift
