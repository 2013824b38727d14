#include <json.hpp>

#include "covshift/detector.hpp"
#include "covshift/error.hpp"
#include "covshift/io.hpp"

namespace covshift {

using nlohmann::json;

std::string model_to_json(const DetectorModel& model) {
  json pairs = json::array();
  for (const auto& p : model.pairs) {
    pairs.push_back({{"c_target", p.c_target},
                     {"b_star", p.b_star},
                     {"theta", p.theta},
                     {"iterations", p.iterations},
                     {"empirical_coverage_at_fit", p.empirical_coverage_at_fit}});
  }
  const json doc = {{"format_version", model.format_version},
                    {"kappa_name", model.kappa_name},
                    {"m", model.m},
                    {"delta", model.delta},
                    {"c_target_count", model.c_target_count},
                    {"pairs", std::move(pairs)}};
  return doc.dump(2) + "\n";
}

DetectorModel model_from_json(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw FormatError(std::string("malformed model file: ") + e.what());
  }
  DetectorModel model;
  try {
    model.format_version = doc.at("format_version").get<int>();
    if (model.format_version != DetectorModel::kFormatVersion) {
      throw VersionError("model format version " + std::to_string(model.format_version) +
                         " is not supported (expected " +
                         std::to_string(DetectorModel::kFormatVersion) + ")");
    }
    model.kappa_name = doc.at("kappa_name").get<std::string>();
    model.m = doc.at("m").get<std::int64_t>();
    model.delta = doc.at("delta").get<double>();
    model.c_target_count = doc.at("c_target_count").get<std::int64_t>();
    for (const auto& p : doc.at("pairs")) {
      model.pairs.push_back({p.at("c_target").get<double>(), p.at("b_star").get<double>(),
                             p.at("theta").get<double>(), p.at("iterations").get<std::int64_t>(),
                             p.at("empirical_coverage_at_fit").get<double>()});
    }
  } catch (const json::exception& e) {
    throw FormatError(std::string("malformed model file: ") + e.what());
  }
  model.validate();
  return model;
}

void save_model(const DetectorModel& model, const std::filesystem::path& path) {
  model.validate();
  write_file_atomic(path, model_to_json(model));
}

DetectorModel load_model(const std::filesystem::path& path) {
  return model_from_json(read_file(path));
}

std::string report_to_json(const DetectionReport& report) {
  json per = json::array();
  for (const auto& c : report.per_coverage) {
    per.push_back({{"c_target", c.c_target},
                   {"b_star", c.b_star},
                   {"theta", c.theta},
                   {"empirical_coverage", c.empirical_coverage},
                   {"violated", c.violated}});
  }
  const json doc = {{"v_statistic", report.v_statistic},
                    {"t_statistic", report.t_statistic},
                    {"p_value", report.p_value},
                    {"alpha", report.alpha},
                    {"shift_detected", report.shift_detected},
                    {"window_size", report.window_size},
                    {"per_coverage", std::move(per)}};
  return doc.dump(2) + "\n";
}

}  // namespace covshift
