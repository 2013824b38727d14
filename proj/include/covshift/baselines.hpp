#pragma once

#include <cstddef>
#include <filesystem>
#include <string_view>
#include <variant>

#include "covshift/matrix.hpp"
#include "covshift/rng.hpp"
#include "covshift/scores.hpp"
#include "covshift/stats.hpp"

namespace covshift {

enum class VectorKind { softmax, embedding };

/// Rows of softmax outputs or embeddings with a common dimensionality.
/// Softmax rows are checked against the SoftmaxVector invariants.
class VectorSample {
 public:
  VectorSample(Matrix rows, VectorKind kind);

  const Matrix& rows() const noexcept { return rows_; }
  VectorKind kind() const noexcept { return kind_; }
  std::size_t size() const noexcept { return rows_.rows(); }
  std::size_t dim() const noexcept { return rows_.cols(); }

  VectorSample subset(std::span<const std::size_t> positions) const;

 private:
  Matrix rows_;
  VectorKind kind_;
};

VectorSample parse_vectors(std::string_view text, VectorKind kind, bool header = false);
VectorSample load_vectors(const std::filesystem::path& path, VectorKind kind, bool header = false);

inline constexpr std::size_t kMmdReferenceCap = 1000;

/// Per-dimension KS tests aggregated with Bonferroni: p = min(1, d * min_j p_j).
/// detail["argmin_dimension"] is 0-based.
TestResult detect_ks(const VectorSample& ref, const VectorSample& window, double alpha);

/// MMD permutation test; the reference is subsampled to `reference_cap` rows
/// (seeded from rng) before testing.
TestResult detect_mmd(const VectorSample& ref, const VectorSample& window, double alpha,
                      int n_permutations, const Rng& rng,
                      std::size_t reference_cap = kMmdReferenceCap);

enum class SingleEstimator { sr, entropy };
std::string_view estimator_name(SingleEstimator e) noexcept;

/// Welch t-test between per-instance scores of the reference and the window.
TestResult detect_single_instance(const ScoreSample& ref, const ScoreSample& window, double alpha,
                                  SingleEstimator estimator);

enum class BaselineMethod { ks, mmd, single_sr, single_entropy };

struct BaselineConfig {
  int n_permutations = kDefaultPermutations;
  std::size_t mmd_reference_cap = kMmdReferenceCap;
  std::uint64_t seed = 0;
};

/// Lazy detector: keeps the full detection-training data and recomputes
/// over all of it on every call.
class BaselineDetector {
 public:
  using Reference = std::variant<VectorSample, ScoreSample>;

  BaselineDetector(BaselineMethod method, Reference reference, BaselineConfig config = {});

  BaselineMethod method() const noexcept { return method_; }
  const Reference& reference() const noexcept { return reference_; }

  /// `call_index` selects the random sub-stream for MMD.
  TestResult test(const VectorSample& window, double alpha, std::uint64_t call_index = 0) const;
  TestResult test(const ScoreSample& window, double alpha) const;

 private:
  BaselineMethod method_;
  Reference reference_;
  BaselineConfig config_;
};

}  // namespace covshift
