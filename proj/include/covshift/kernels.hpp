#pragma once

// Data-parallel inner loops shared by the detector and the kernel baselines.
// Each kernel has a scalar reference and, on x86-64, an AVX2/FMA variant; the
// dispatcher picks the widest one the CPU supports at first use.

#include <cstddef>
#include <span>
#include <string_view>

namespace covshift::kernels {

enum class Backend { scalar, avx2 };

std::string_view backend_name(Backend b) noexcept;
bool backend_available(Backend b) noexcept;
Backend active_backend() noexcept;
/// Forces a backend (tests, benchmarks). Throws InvalidInput if unsupported.
void set_backend(Backend b);

/// Number of entries >= threshold.
std::size_t count_at_least(std::span<const double> xs, double threshold);
/// Sum of a[i] * b[i]. Spans must have equal length.
double dot(std::span<const double> a, std::span<const double> b);
/// Sum of (a[i] - b[i])^2. Spans must have equal length.
double squared_distance(std::span<const double> a, std::span<const double> b);

namespace scalar {
std::size_t count_at_least(std::span<const double> xs, double threshold);
double dot(std::span<const double> a, std::span<const double> b);
double squared_distance(std::span<const double> a, std::span<const double> b);
}  // namespace scalar

#if defined(COVSHIFT_HAVE_AVX2)
namespace avx2 {
std::size_t count_at_least(std::span<const double> xs, double threshold);
double dot(std::span<const double> a, std::span<const double> b);
double squared_distance(std::span<const double> a, std::span<const double> b);
}  // namespace avx2
#endif

}  // namespace covshift::kernels
