#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>

#include "covshift/baselines.hpp"
#include "covshift/cli.hpp"
#include "covshift/detector.hpp"
#include "covshift/error.hpp"
#include "covshift/generators.hpp"

namespace covshift::cli {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

// Seconds per call: one warm-up, then the median of `repeats` samples, each
// long enough to sit well above timer resolution.
double time_detection(const std::function<double()>& once, const BenchConfig& cfg) {
  volatile double sink = 0.0;
  auto start = Clock::now();
  sink = sink + once();
  const double warm = std::max(seconds_since(start), 1e-9);
  const auto reps = static_cast<long>(std::max(1.0, std::ceil(cfg.min_sample_seconds / warm)));
  std::vector<double> samples;
  samples.reserve(static_cast<std::size_t>(cfg.repeats));
  for (int r = 0; r < cfg.repeats; ++r) {
    start = Clock::now();
    for (long i = 0; i < reps; ++i) sink = sink + once();
    samples.push_back(seconds_since(start) / static_cast<double>(reps));
  }
  std::sort(samples.begin(), samples.end());
  return samples[samples.size() / 2];
}

BenchRow bench_one(const std::string& method, std::size_t m, const BenchConfig& cfg) {
  Rng rng = Rng(cfg.seed).derive(m);
  BenchRow row{method, m, cfg.window_size, 0.0, 0.0};
  const double alpha = 0.05;
  if (method == "ours") {
    const auto train = gen_scores(BetaDist{5, 1}, m, rng);
    const auto window = gen_scores(BetaDist{5, 1}, cfg.window_size, rng);
    const auto start = Clock::now();
    const DetectorModel model = fit(train);
    row.fit_seconds = seconds_since(start);
    row.detect_seconds =
        time_detection([&] { return detect(model, window, alpha).p_value; }, cfg);
  } else if (method == "ks" || method == "mmd") {
    const DirichletDist dist{std::vector<double>(cfg.dims, 1.0)};
    const auto ref = gen_vectors(dist, m, rng);
    const auto window = gen_vectors(dist, cfg.window_size, rng);
    if (method == "ks") {
      row.detect_seconds =
          time_detection([&] { return detect_ks(ref, window, alpha).p_value; }, cfg);
    } else {
      const Rng perm_rng = rng.derive(0);
      row.detect_seconds = time_detection(
          [&] { return detect_mmd(ref, window, alpha, kDefaultPermutations, perm_rng).p_value; },
          cfg);
    }
  } else if (method == "single-sr" || method == "single-ent") {
    const std::string kappa = method == "single-sr" ? "sr" : "entropy";
    const auto est = method == "single-sr" ? SingleEstimator::sr : SingleEstimator::entropy;
    const auto ref = gen_scores(BetaDist{5, 1}, m, rng, kappa);
    const auto window = gen_scores(BetaDist{5, 1}, cfg.window_size, rng, kappa);
    row.detect_seconds = time_detection(
        [&] { return detect_single_instance(ref, window, alpha, est).p_value; }, cfg);
  } else {
    throw InvalidInput("unknown bench method '" + method + "'");
  }
  return row;
}

}  // namespace

std::vector<BenchRow> run_bench(const BenchConfig& config) {
  if (config.sizes.empty()) throw InvalidInput("bench needs at least one size");
  if (!std::is_sorted(config.sizes.begin(), config.sizes.end())) {
    throw InvalidInput("bench sizes must be ascending");
  }
  if (config.sizes.front() < 2) throw InvalidInput("bench sizes must be >= 2");
  if (config.window_size < 2) throw InvalidInput("window size must be >= 2");
  if (config.repeats < 1) throw InvalidInput("repeats must be >= 1");
  std::vector<BenchRow> rows;
  for (const auto& method : config.methods) {
    for (auto m : config.sizes) rows.push_back(bench_one(method, m, config));
  }
  return rows;
}

std::string bench_csv(const std::vector<BenchRow>& rows) {
  std::string out = "method,m,k,fit_seconds,detect_seconds\n";
  char buf[64];
  for (const auto& r : rows) {
    out += r.method + ',' + std::to_string(r.m) + ',' + std::to_string(r.k) + ',';
    std::snprintf(buf, sizeof buf, "%.6e,%.6e\n", r.fit_seconds, r.detect_seconds);
    out += buf;
  }
  return out;
}

}  // namespace covshift::cli
