#include "covshift/kernels.hpp"

namespace covshift::kernels::scalar {

std::size_t count_at_least(std::span<const double> xs, double threshold) {
  std::size_t n = 0;
  for (double x : xs) n += x >= threshold ? 1 : 0;
  return n;
}

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double squared_distance(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    s += d * d;
  }
  return s;
}

}  // namespace covshift::kernels::scalar
