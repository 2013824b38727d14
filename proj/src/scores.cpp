#include "covshift/scores.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>

#include "covshift/error.hpp"
#include "covshift/io.hpp"

namespace covshift {

namespace {

std::string_view trim(std::string_view s) {
  const auto ws = " \t\r";
  const auto first = s.find_first_not_of(ws);
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(ws);
  return s.substr(first, last - first + 1);
}

double parse_double(std::string_view field, std::size_t line) {
  field = trim(field);
  if (field.empty()) throw FormatError("empty field", line);
  if (field.front() == '+') field.remove_prefix(1);
  double value = 0.0;
  const auto* end = field.data() + field.size();
  auto [ptr, ec] = std::from_chars(field.data(), end, value);
  if (ec != std::errc() || ptr != end) {
    throw FormatError("cannot parse '" + std::string(field) + "' as a number", line);
  }
  if (!std::isfinite(value)) throw FormatError("non-finite value", line);
  return value;
}

template <typename Fn>
void for_each_line(std::string_view text, Fn&& fn) {
  std::size_t line_no = 0;
  while (!text.empty()) {
    ++line_no;
    const auto nl = text.find('\n');
    const auto line = text.substr(0, nl);
    fn(line, line_no);
    if (nl == std::string_view::npos) break;
    text.remove_prefix(nl + 1);
  }
}

}  // namespace

SoftmaxVector::SoftmaxVector(std::vector<double> probs) : probs_(std::move(probs)) {
  if (probs_.empty()) throw InvalidInput("softmax vector is empty");
  double sum = 0.0;
  for (double p : probs_) {
    if (!(p >= 0.0 && p <= 1.0)) throw InvalidInput("softmax entry outside [0,1]");
    sum += p;
  }
  if (std::abs(sum - 1.0) > kSumTolerance) {
    throw InvalidInput("softmax entries sum to " + std::to_string(sum) + ", expected 1");
  }
}

EmbeddingVector::EmbeddingVector(std::vector<double> values) : values_(std::move(values)) {
  if (values_.empty()) throw InvalidInput("embedding vector is empty");
  if (!std::all_of(values_.begin(), values_.end(), [](double v) { return std::isfinite(v); })) {
    throw InvalidInput("embedding contains non-finite entries");
  }
}

ConfidenceFunction ConfidenceFunction::from_name(std::string_view name) {
  if (name == "sr") return ConfidenceFunction(KappaKind::softmax_response);
  if (name == "entropy") return ConfidenceFunction(KappaKind::one_minus_entropy);
  if (name == "raw") return ConfidenceFunction(KappaKind::raw_passthrough);
  throw InvalidInput("unknown confidence function '" + std::string(name) + "'");
}

std::string_view ConfidenceFunction::name() const noexcept {
  switch (kind_) {
    case KappaKind::softmax_response: return "sr";
    case KappaKind::one_minus_entropy: return "entropy";
    case KappaKind::raw_passthrough: return "raw";
  }
  return "raw";
}

double compute_kappa(const SoftmaxVector& vec, ConfidenceFunction cf) {
  const auto p = vec.probs();
  switch (cf.kind()) {
    case KappaKind::softmax_response:
      return *std::max_element(p.begin(), p.end());
    case KappaKind::one_minus_entropy: {
      double entropy = 0.0;
      for (double v : p) {
        if (v > 0.0) entropy -= v * std::log(v);
      }
      return 1.0 - entropy;
    }
    case KappaKind::raw_passthrough:
      break;
  }
  throw InvalidInput("raw_passthrough cannot be applied to a softmax vector");
}

ScoreSample::ScoreSample(std::vector<double> scores, std::string kappa_name, std::string source_id)
    : scores_(std::move(scores)), kappa_name_(std::move(kappa_name)), source_id_(std::move(source_id)) {
  if (scores_.empty()) throw InvalidInput("score sample is empty");
  for (std::size_t i = 0; i < scores_.size(); ++i) {
    if (!std::isfinite(scores_[i])) {
      throw InvalidInput("score " + std::to_string(i) + " is not finite");
    }
  }
}

ScoreSample ScoreSample::subset(std::span<const std::size_t> positions) const {
  std::vector<double> out;
  out.reserve(positions.size());
  for (auto i : positions) out.push_back(scores_.at(i));
  return ScoreSample(std::move(out), kappa_name_, source_id_);
}

namespace {

std::vector<std::vector<double>> parse_csv_impl(std::string_view text, bool header,
                                                std::vector<std::size_t>* line_numbers) {
  std::vector<std::vector<double>> rows;
  for_each_line(text, [&](std::string_view line, std::size_t line_no) {
    if (header && line_no == 1) return;
    if (trim(line).empty()) return;
    std::vector<double> row;
    std::size_t start = 0;
    while (true) {
      const auto comma = line.find(',', start);
      row.push_back(parse_double(line.substr(start, comma - start), line_no));
      if (comma == std::string_view::npos) break;
      start = comma + 1;
    }
    if (!rows.empty() && row.size() != rows.front().size()) {
      throw FormatError("row has " + std::to_string(row.size()) + " columns, expected " +
                            std::to_string(rows.front().size()),
                        line_no);
    }
    rows.push_back(std::move(row));
    if (line_numbers) line_numbers->push_back(line_no);
  });
  if (rows.empty()) throw FormatError("no data rows");
  return rows;
}

}  // namespace

std::vector<std::vector<double>> parse_csv_rows(std::string_view text, bool header) {
  return parse_csv_impl(text, header, nullptr);
}

ScoreSample parse_scores(std::string_view text, const LoadOptions& opts, std::string source_id) {
  std::vector<double> scores;
  std::string kappa{opts.kappa.name()};
  if (opts.format == ScoreFormat::raw_scores) {
    for_each_line(text, [&](std::string_view line, std::size_t line_no) {
      if (trim(line).empty()) return;
      scores.push_back(parse_double(line, line_no));
    });
  } else {
    if (opts.kappa.kind() == KappaKind::raw_passthrough) {
      throw InvalidInput("softmax input needs the sr or entropy confidence function");
    }
    std::vector<std::size_t> lines;
    auto rows = parse_csv_impl(text, opts.header, &lines);
    scores.reserve(rows.size());
    for (std::size_t r = 0; r < rows.size(); ++r) {
      try {
        scores.push_back(compute_kappa(SoftmaxVector(std::move(rows[r])), opts.kappa));
      } catch (const InvalidInput& e) {
        throw FormatError(e.what(), lines[r]);
      }
    }
  }
  if (scores.empty()) throw FormatError("no scores in input");
  return ScoreSample(std::move(scores), std::move(kappa), std::move(source_id));
}

ScoreSample load_scores(const std::filesystem::path& path, const LoadOptions& opts) {
  return parse_scores(read_file(path), opts, path.string());
}

}  // namespace covshift
