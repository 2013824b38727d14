#include "covshift/baselines.hpp"

#include <algorithm>
#include <limits>

#include "covshift/error.hpp"
#include "covshift/io.hpp"

namespace covshift {

VectorSample::VectorSample(Matrix rows, VectorKind kind) : rows_(std::move(rows)), kind_(kind) {
  if (rows_.rows() == 0 || rows_.cols() == 0) throw InvalidInput("vector sample is empty");
  for (std::size_t i = 0; i < rows_.rows(); ++i) {
    const auto r = rows_.row(i);
    if (kind_ == VectorKind::softmax) {
      SoftmaxVector(std::vector<double>(r.begin(), r.end()));
    } else {
      EmbeddingVector(std::vector<double>(r.begin(), r.end()));
    }
  }
}

VectorSample VectorSample::subset(std::span<const std::size_t> positions) const {
  return VectorSample(rows_.select_rows(positions), kind_);
}

VectorSample parse_vectors(std::string_view text, VectorKind kind, bool header) {
  const auto rows = parse_csv_rows(text, header);
  try {
    return VectorSample(Matrix::from_rows(rows), kind);
  } catch (const InvalidInput& e) {
    throw FormatError(e.what());
  }
}

VectorSample load_vectors(const std::filesystem::path& path, VectorKind kind, bool header) {
  return parse_vectors(read_file(path), kind, header);
}

TestResult detect_ks(const VectorSample& ref, const VectorSample& window, double alpha) {
  if (ref.dim() != window.dim()) throw InvalidInput("reference and window differ in dimensionality");
  const std::size_t d = ref.dim();
  double min_p = std::numeric_limits<double>::infinity();
  double stat_at_min = 0.0;
  std::size_t argmin = 0;
  for (std::size_t j = 0; j < d; ++j) {
    const auto a = ref.rows().column(j);
    const auto b = window.rows().column(j);
    const TestResult r = ks_two_sample(a, b);
    if (r.p_value < min_p) {
      min_p = r.p_value;
      stat_at_min = r.statistic;
      argmin = j;
    }
  }
  TestResult out;
  out.method = "ks_bonferroni";
  out.statistic = stat_at_min;
  out.p_value = std::min(1.0, static_cast<double>(d) * min_p);
  out.detail["argmin_dimension"] = static_cast<double>(argmin);
  out.detail["min_p"] = min_p;
  out.detail["dimensions"] = static_cast<double>(d);
  out.detail["reject"] = min_p < alpha / static_cast<double>(d) ? 1.0 : 0.0;
  return out;
}

TestResult detect_mmd(const VectorSample& ref, const VectorSample& window, double alpha,
                      int n_permutations, const Rng& rng, std::size_t reference_cap) {
  if (ref.dim() != window.dim()) throw InvalidInput("reference and window differ in dimensionality");
  if (reference_cap < 2) throw InvalidInput("MMD reference cap must be >= 2");
  TestResult out;
  if (ref.size() > reference_cap) {
    // The subsample stream sits far from the permutation sub-streams 0..n-1.
    Rng cap_rng = rng.derive(std::numeric_limits<std::uint64_t>::max());
    const auto rows = sample_without_replacement(ref.size(), reference_cap, cap_rng);
    out = permutation_test_mmd(ref.rows().select_rows(rows), window.rows(), n_permutations, rng);
  } else {
    out = permutation_test_mmd(ref.rows(), window.rows(), n_permutations, rng);
  }
  out.detail["reference_used"] = static_cast<double>(std::min(ref.size(), reference_cap));
  out.detail["reference_cap"] = static_cast<double>(reference_cap);
  out.detail["reject"] = out.p_value < alpha ? 1.0 : 0.0;
  return out;
}

std::string_view estimator_name(SingleEstimator e) noexcept {
  return e == SingleEstimator::sr ? "sr" : "entropy";
}

TestResult detect_single_instance(const ScoreSample& ref, const ScoreSample& window, double alpha,
                                  SingleEstimator estimator) {
  const auto name = estimator_name(estimator);
  if (ref.kappa_name() != name || window.kappa_name() != name) {
    throw InvalidInput("single-instance " + std::string(name) + " test got scores computed with '" +
                       ref.kappa_name() + "' and '" + window.kappa_name() + "'");
  }
  TestResult out = t_test_two_sample_welch(ref.scores(), window.scores(), Alternative::two_sided);
  out.method = "single_" + std::string(name);
  out.detail["reject"] = out.p_value < alpha ? 1.0 : 0.0;
  return out;
}

BaselineDetector::BaselineDetector(BaselineMethod method, Reference reference, BaselineConfig config)
    : method_(method), reference_(std::move(reference)), config_(config) {
  const bool vectors = std::holds_alternative<VectorSample>(reference_);
  const bool wants_vectors = method_ == BaselineMethod::ks || method_ == BaselineMethod::mmd;
  if (vectors != wants_vectors) {
    throw InvalidInput(wants_vectors ? "KS and MMD baselines need vector references"
                                     : "single-instance baselines need score references");
  }
}

TestResult BaselineDetector::test(const VectorSample& window, double alpha,
                                  std::uint64_t call_index) const {
  const auto* ref = std::get_if<VectorSample>(&reference_);
  if (ref == nullptr) throw InvalidInput("this baseline consumes scores, not vectors");
  if (method_ == BaselineMethod::ks) return detect_ks(*ref, window, alpha);
  const Rng rng = Rng(config_.seed).derive(call_index);
  return detect_mmd(*ref, window, alpha, config_.n_permutations, rng, config_.mmd_reference_cap);
}

TestResult BaselineDetector::test(const ScoreSample& window, double alpha) const {
  const auto* ref = std::get_if<ScoreSample>(&reference_);
  if (ref == nullptr) throw InvalidInput("this baseline consumes vectors, not scores");
  const auto est =
      method_ == BaselineMethod::single_sr ? SingleEstimator::sr : SingleEstimator::entropy;
  return detect_single_instance(*ref, window, alpha, est);
}

}  // namespace covshift
