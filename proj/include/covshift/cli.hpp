#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace covshift::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitShift = 2;

/// Entry point behind the `covshift` binary. Returns the process exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

struct BenchConfig {
  std::vector<std::size_t> sizes{10'000, 100'000, 1'000'000};
  std::size_t window_size = 10;
  std::vector<std::string> methods{"ours", "ks"};
  std::size_t dims = 10;
  int repeats = 5;
  std::uint64_t seed = 0;
  /// Each timing sample loops the detection until at least this much wall
  /// time has passed, then divides by the loop count.
  double min_sample_seconds = 1e-3;
};

struct BenchRow {
  std::string method;
  std::size_t m = 0;
  std::size_t k = 0;
  double fit_seconds = 0.0;
  double detect_seconds = 0.0;
};

/// Median-of-`repeats` detection time per (method, m) after one warm-up run.
std::vector<BenchRow> run_bench(const BenchConfig& config);
std::string bench_csv(const std::vector<BenchRow>& rows);

}  // namespace covshift::cli
