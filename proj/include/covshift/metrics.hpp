#pragma once

#include <span>
#include <vector>

namespace covshift {

/// One window's p-value and whether the window came from the shifted pool.
struct LabeledPValue {
  double p_value = 1.0;
  bool is_shifted = false;
};

using LabeledPValues = std::vector<LabeledPValue>;

struct ScoredLabel {
  double score = 0.0;
  bool positive = false;
};

/// Mann-Whitney AUROC; ties count one half.
double auroc_scores(std::span<const ScoredLabel> data);

/// Average precision (step interpolation over distinct descending thresholds).
double average_precision(std::span<const ScoredLabel> data);

/// AUROC with detection score -p (order-equivalent to 1 - p); shifted windows are positive.
double auroc(std::span<const LabeledPValue> data);

enum class PrPositive { in, out };

/// AUPR-In ranks by p with in-distribution windows positive; AUPR-Out ranks
/// by 1 - p with shifted windows positive.
double aupr(std::span<const LabeledPValue> data, PrPositive positive);

struct ThresholdMetrics {
  double detection_error = 0.0;
  double fpr_at_95tpr = 0.0;
  double tpr = 0.0;  // achieved TPR at the chosen threshold (>= 0.95)
};

/// Largest threshold on -p whose TPR reaches 0.95; P_e = 0.5 (1 - TPR) + 0.5 FPR.
ThresholdMetrics detection_error_and_fpr_at_95tpr(std::span<const LabeledPValue> data);

}  // namespace covshift
