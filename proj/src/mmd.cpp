#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "covshift/error.hpp"
#include "covshift/kernels.hpp"
#include "covshift/stats.hpp"

namespace covshift {

namespace {

void check_pair(const Matrix& x, const Matrix& y) {
  if (x.rows() < 2 || y.rows() < 2) throw InvalidInput("MMD needs at least two rows per sample");
  if (x.cols() != y.cols()) throw InvalidInput("MMD samples differ in dimensionality");
}


std::span<const double> pooled_row(const Matrix& x, const Matrix& y, std::size_t i) {
  return i < x.rows() ? x.row(i) : y.row(i - x.rows());
}

// MMD^2 from a pooled kernel matrix and a 0/1 membership vector (1 = first sample).
double mmd2_from_membership(const Matrix& kernel, std::span<const double> row_sums,
                            std::span<const double> in_x, std::size_t nx, std::size_t ny) {
  double sum_xx = 0.0;
  double sum_yy = 0.0;
  double sum_xy = 0.0;
  for (std::size_t i = 0; i < kernel.rows(); ++i) {
    const double to_x = kernels::dot(kernel.row(i), in_x);
    if (in_x[i] != 0.0) {
      sum_xx += to_x;
      sum_xy += row_sums[i] - to_x;
    } else {
      sum_yy += row_sums[i] - to_x;
    }
  }
  // Remove the unit diagonal.
  sum_xx -= static_cast<double>(nx);
  sum_yy -= static_cast<double>(ny);
  const double fx = static_cast<double>(nx);
  const double fy = static_cast<double>(ny);
  return sum_xx / (fx * (fx - 1.0)) + sum_yy / (fy * (fy - 1.0)) - 2.0 * sum_xy / (fx * fy);
}

}  // namespace

double mmd2_unbiased(const Matrix& x, const Matrix& y, double bandwidth) {
  check_pair(x, y);
  if (!(bandwidth > 0.0)) throw InvalidInput("bandwidth must be > 0");
  const double scale = -1.0 / (2.0 * bandwidth * bandwidth);
  auto within = [&](const Matrix& s) {
    double sum = 0.0;
    for (std::size_t i = 0; i < s.rows(); ++i) {
      for (std::size_t j = i + 1; j < s.rows(); ++j) {
        sum += std::exp(scale * kernels::squared_distance(s.row(i), s.row(j)));
      }
    }
    const double n = static_cast<double>(s.rows());
    return 2.0 * sum / (n * (n - 1.0));
  };
  double cross = 0.0;
  for (std::size_t i = 0; i < x.rows(); ++i) {
    for (std::size_t j = 0; j < y.rows(); ++j) {
      cross += std::exp(scale * kernels::squared_distance(x.row(i), y.row(j)));
    }
  }
  cross /= static_cast<double>(x.rows()) * static_cast<double>(y.rows());
  return within(x) + within(y) - 2.0 * cross;
}

double median_heuristic_bandwidth(const Matrix& x, const Matrix& y) {
  if (x.cols() != y.cols()) throw InvalidInput("samples differ in dimensionality");
  const std::size_t n = x.rows() + y.rows();
  if (n < 2) throw InvalidInput("median heuristic needs at least two points");
  std::vector<double> dist;
  dist.reserve(n * (n - 1) / 2);
  for (std::size_t i = 0; i < n; ++i) {
    const auto a = pooled_row(x, y, i);
    for (std::size_t j = i + 1; j < n; ++j) {
      dist.push_back(std::sqrt(kernels::squared_distance(a, pooled_row(x, y, j))));
    }
  }
  const std::size_t mid = dist.size() / 2;
  std::nth_element(dist.begin(), dist.begin() + static_cast<std::ptrdiff_t>(mid), dist.end());
  double median = dist[mid];
  if (dist.size() % 2 == 0) {
    const double lower = *std::max_element(dist.begin(), dist.begin() + static_cast<std::ptrdiff_t>(mid));
    median = 0.5 * (lower + median);
  }
  if (median == 0.0) {
    double smallest = 0.0;
    for (double d : dist) {
      if (d > 0.0 && (smallest == 0.0 || d < smallest)) smallest = d;
    }
    if (smallest == 0.0) throw InvalidInput("all pooled points are identical");
    median = smallest;
  }
  return std::sqrt(0.5 * median);
}

TestResult permutation_test_mmd(const Matrix& x, const Matrix& y, int n_permutations,
                                const Rng& rng) {
  check_pair(x, y);
  if (n_permutations < 1) throw InvalidInput("need at least one permutation");
  const double bandwidth = median_heuristic_bandwidth(x, y);
  const double scale = -1.0 / (2.0 * bandwidth * bandwidth);
  const std::size_t nx = x.rows();
  const std::size_t ny = y.rows();
  const std::size_t n = nx + ny;

  Matrix kernel(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    kernel(i, i) = 1.0;
    const auto a = pooled_row(x, y, i);
    for (std::size_t j = i + 1; j < n; ++j) {
      const double k = std::exp(scale * kernels::squared_distance(a, pooled_row(x, y, j)));
      kernel(i, j) = k;
      kernel(j, i) = k;
    }
  }
  std::vector<double> row_sums(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto r = kernel.row(i);
    row_sums[i] = std::accumulate(r.begin(), r.end(), 0.0);
  }

  std::vector<double> membership(n, 0.0);
  std::fill(membership.begin(), membership.begin() + static_cast<std::ptrdiff_t>(nx), 1.0);
  const double observed = mmd2_from_membership(kernel, row_sums, membership, nx, ny);

  std::vector<std::size_t> order(n);
  int at_least = 0;
  for (int p = 0; p < n_permutations; ++p) {
    Rng sub = rng.derive(static_cast<std::uint64_t>(p));
    std::iota(order.begin(), order.end(), std::size_t{0});
    shuffle(std::span<std::size_t>(order), sub);
    std::fill(membership.begin(), membership.end(), 0.0);
    for (std::size_t i = 0; i < nx; ++i) membership[order[i]] = 1.0;
    if (mmd2_from_membership(kernel, row_sums, membership, nx, ny) >= observed) ++at_least;
  }

  TestResult r;
  r.method = "mmd";
  r.statistic = observed;
  r.p_value = (1.0 + at_least) / (1.0 + n_permutations);
  r.detail["bandwidth"] = bandwidth;
  r.detail["permutations"] = n_permutations;
  r.detail["n_x"] = static_cast<double>(nx);
  r.detail["n_y"] = static_cast<double>(ny);
  return r;
}

}  // namespace covshift
