#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "covshift/scores.hpp"
#include "covshift/sgc.hpp"

namespace covshift {

inline constexpr double kDefaultDelta = 0.01;
inline constexpr int kDefaultCoverageCount = 10;
inline constexpr double kLowestCoverage = 0.1;

/// Fitted coverage bounds. Detection only needs this object, never the
/// detection-training sample.
struct DetectorModel {
  static constexpr int kFormatVersion = 1;

  std::vector<CoverageBound> pairs;  // ordered by c_target
  double delta = kDefaultDelta;
  std::int64_t c_target_count = 0;
  std::string kappa_name;
  std::int64_t m = 0;
  int format_version = kFormatVersion;

  /// Throws InvalidInput if the stored fields break the model invariants.
  void validate() const;

  friend bool operator==(const DetectorModel&, const DetectorModel&) = default;
};

/// c*_j = 0.1 + (j - 1) * 0.9 / count for j = 1..count.
std::vector<double> coverage_grid(int count);

/// Runs SGC once per grid coverage on the same sample with confidence `delta`.
DetectorModel fit(const ScoreSample& sample, double delta = kDefaultDelta,
                  int c_target_count = kDefaultCoverageCount);

struct CoverageCheck {
  double c_target = 0.0;
  double b_star = 0.0;
  double theta = 0.0;
  double empirical_coverage = 0.0;
  /// Empirical coverage <= bound; equality counts as a violation.
  bool violated = false;
};

struct DetectionReport {
  double v_statistic = 0.0;
  double t_statistic = 0.0;
  double p_value = 1.0;
  double alpha = 0.0;
  bool shift_detected = false;
  std::vector<CoverageCheck> per_coverage;
  std::size_t window_size = 0;
};

/// The k * C_target per-instance terms (b*_j - g_j(x_i)) * [violated_j];
/// their mean is V.
std::vector<double> violation_terms(const DetectorModel& model, const ScoreSample& window);

/// One-sided one-sample t-test of the violation terms against zero.
/// O(k * C_target); the terms are aggregated per coverage instead of stored.
DetectionReport detect(const DetectorModel& model, const ScoreSample& window, double alpha);

std::string model_to_json(const DetectorModel& model);
DetectorModel model_from_json(std::string_view text);
void save_model(const DetectorModel& model, const std::filesystem::path& path);
DetectorModel load_model(const std::filesystem::path& path);

std::string report_to_json(const DetectionReport& report);

}  // namespace covshift
