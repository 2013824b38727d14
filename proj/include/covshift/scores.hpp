#pragma once

#include <cstddef>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace covshift {

/// Probability vector over C classes. Entries lie in [0,1] and sum to one
/// within `kSumTolerance`.
class SoftmaxVector {
 public:
  static constexpr double kSumTolerance = 1e-4;

  explicit SoftmaxVector(std::vector<double> probs);

  std::span<const double> probs() const noexcept { return probs_; }
  std::size_t size() const noexcept { return probs_.size(); }

 private:
  std::vector<double> probs_;
};

/// Fixed-width vector of finite reals taken from a model's penultimate layer.
class EmbeddingVector {
 public:
  explicit EmbeddingVector(std::vector<double> values);

  std::span<const double> values() const noexcept { return values_; }
  std::size_t size() const noexcept { return values_.size(); }

 private:
  std::vector<double> values_;
};

enum class KappaKind { softmax_response, one_minus_entropy, raw_passthrough };

/// Confidence-rate function mapping a model output to a scalar score.
class ConfidenceFunction {
 public:
  constexpr explicit ConfidenceFunction(KappaKind kind) noexcept : kind_(kind) {}

  /// Accepts "sr", "entropy" and "raw".
  static ConfidenceFunction from_name(std::string_view name);

  constexpr KappaKind kind() const noexcept { return kind_; }
  std::string_view name() const noexcept;

 private:
  KappaKind kind_;
};

/// Softmax response (max entry) or 1 - Shannon entropy in nats, with 0 ln 0 = 0.
/// Throws InvalidInput for raw_passthrough.
double compute_kappa(const SoftmaxVector& vec, ConfidenceFunction cf);

/// Ordered, non-empty sequence of finite confidence scores.
class ScoreSample {
 public:
  ScoreSample(std::vector<double> scores, std::string kappa_name, std::string source_id = {});

  std::span<const double> scores() const noexcept { return scores_; }
  std::size_t size() const noexcept { return scores_.size(); }
  const std::string& kappa_name() const noexcept { return kappa_name_; }
  const std::string& source_id() const noexcept { return source_id_; }

  /// Sub-sample built from the given positions (used for windows).
  ScoreSample subset(std::span<const std::size_t> positions) const;

 private:
  std::vector<double> scores_;
  std::string kappa_name_;
  std::string source_id_;
};

enum class ScoreFormat { raw_scores, softmax_csv };

struct LoadOptions {
  ScoreFormat format = ScoreFormat::raw_scores;
  /// Applied to softmax rows; for raw files it only labels the sample.
  ConfidenceFunction kappa{KappaKind::one_minus_entropy};
  bool header = false;
};

ScoreSample parse_scores(std::string_view text, const LoadOptions& opts, std::string source_id = {});
ScoreSample load_scores(const std::filesystem::path& path, const LoadOptions& opts);

/// Parses a comma-separated numeric table. All rows must have the same width.
std::vector<std::vector<double>> parse_csv_rows(std::string_view text, bool header);

}  // namespace covshift
