#include <cmath>
#include <limits>

#include "covshift/error.hpp"
#include "covshift/special.hpp"
#include "covshift/stats.hpp"

namespace covshift {

namespace {

double p_from_t(double t, double df, Alternative side) {
  switch (side) {
    case Alternative::greater: return special::student_t_sf(t, df);
    case Alternative::less: return special::student_t_cdf(t, df);
    case Alternative::two_sided: return std::min(1.0, 2.0 * special::student_t_sf(std::abs(t), df));
  }
  return 1.0;
}

// p-value when the test statistic is +-infinity or 0/0.
double degenerate_p(double diff, Alternative side) {
  switch (side) {
    case Alternative::greater: return diff > 0.0 ? 0.0 : 1.0;
    case Alternative::less: return diff < 0.0 ? 0.0 : 1.0;
    case Alternative::two_sided: return diff != 0.0 ? 0.0 : 1.0;
  }
  return 1.0;
}

double signed_infinity(double diff) {
  if (diff == 0.0) return 0.0;
  return diff > 0.0 ? std::numeric_limits<double>::infinity()
                    : -std::numeric_limits<double>::infinity();
}

}  // namespace

SampleMoments sample_moments(std::span<const double> values) {
  SampleMoments m;
  m.n = values.size();
  if (m.n == 0) return m;
  double sum = 0.0;
  bool constant = true;
  for (double v : values) {
    sum += v;
    constant = constant && v == values.front();
  }
  m.mean = sum / static_cast<double>(m.n);
  m.constant = constant;
  if (m.n > 1 && !constant) {
    double ss = 0.0;
    for (double v : values) ss += (v - m.mean) * (v - m.mean);
    m.variance = ss / static_cast<double>(m.n - 1);
  }
  if (constant) m.mean = values.front();
  return m;
}

TestResult t_test_from_moments(const SampleMoments& moments, double popmean, Alternative side) {
  if (moments.n < 2) throw InvalidInput("t-test needs at least two values");
  TestResult r;
  r.method = "t_test_1samp";
  const double df = static_cast<double>(moments.n - 1);
  const double diff = moments.mean - popmean;
  r.detail["n"] = static_cast<double>(moments.n);
  r.detail["df"] = df;
  r.detail["mean"] = moments.mean;
  if (moments.constant || moments.variance <= 0.0) {
    r.statistic = signed_infinity(diff);
    r.p_value = degenerate_p(diff, side);
    r.detail["degenerate"] = 1.0;
    return r;
  }
  const double se = std::sqrt(moments.variance / static_cast<double>(moments.n));
  r.statistic = diff / se;
  r.p_value = p_from_t(r.statistic, df, side);
  return r;
}

TestResult t_test_one_sample(std::span<const double> values, double popmean, Alternative side) {
  if (values.size() < 2) throw InvalidInput("t-test needs at least two values");
  return t_test_from_moments(sample_moments(values), popmean, side);
}

TestResult t_test_two_sample_welch(std::span<const double> a, std::span<const double> b,
                                   Alternative side) {
  if (a.size() < 2 || b.size() < 2) throw InvalidInput("Welch test needs two values per sample");
  const SampleMoments ma = sample_moments(a);
  const SampleMoments mb = sample_moments(b);
  const double va = ma.variance / static_cast<double>(ma.n);
  const double vb = mb.variance / static_cast<double>(mb.n);
  const double diff = ma.mean - mb.mean;

  TestResult r;
  r.method = "t_test_welch";
  r.detail["mean_a"] = ma.mean;
  r.detail["mean_b"] = mb.mean;
  if (va + vb <= 0.0) {
    r.statistic = signed_infinity(diff);
    r.p_value = degenerate_p(diff, side);
    r.detail["degenerate"] = 1.0;
    return r;
  }
  const double df = (va + vb) * (va + vb) /
                    (va * va / static_cast<double>(ma.n - 1) + vb * vb / static_cast<double>(mb.n - 1));
  r.statistic = diff / std::sqrt(va + vb);
  r.p_value = p_from_t(r.statistic, df, side);
  r.detail["df"] = df;
  return r;
}

}  // namespace covshift
