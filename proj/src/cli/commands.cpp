#include <CLI11.hpp>

#include <cstdio>
#include <iomanip>
#include <limits>
#include <optional>
#include <ostream>
#include <sstream>

#include "covshift/baselines.hpp"
#include "covshift/cli.hpp"
#include "covshift/detector.hpp"
#include "covshift/error.hpp"
#include "covshift/generators.hpp"
#include "covshift/io.hpp"
#include "covshift/trials.hpp"

namespace covshift::cli {

namespace {

struct FitArgs {
  std::string scores;
  std::string format = "raw";
  std::string kappa = "entropy";
  bool header = false;
  double delta = kDefaultDelta;
  int coverages = kDefaultCoverageCount;
  std::string out;
};

struct DetectArgs {
  std::string model;
  std::string window;
  std::string format = "raw";
  std::string kappa;
  bool header = false;
  double alpha = 0.05;
  std::string report;
};

struct EvalArgs {
  std::string method;
  std::string id;
  std::string shifted;
  std::string train;
  std::string format;
  std::string kappa = "entropy";
  bool header = false;
  std::vector<std::size_t> window_sizes{10, 20, 50, 100, 200, 500, 1000};
  int trials = 15;
  double alpha = 0.05;
  std::uint64_t seed = 0;
  double delta = kDefaultDelta;
  int coverages = kDefaultCoverageCount;
  int permutations = kDefaultPermutations;
  std::string out;
};

struct SimulateArgs {
  std::string dist;
  std::size_t n = 1000;
  std::uint64_t seed = 0;
  std::string out;
};

struct BenchArgs {
  BenchConfig config;
  std::string out;
};

std::string fmt(double v, int precision = 6) {
  std::ostringstream ss;
  ss << std::setprecision(precision) << v;
  return ss.str();
}

ScoreFormat score_format(const std::string& f) {
  return f == "softmax" ? ScoreFormat::softmax_csv : ScoreFormat::raw_scores;
}

// --- fit -------------------------------------------------------------------

int cmd_fit(const FitArgs& a, std::ostream& out) {
  LoadOptions opts;
  opts.format = score_format(a.format);
  opts.kappa = ConfidenceFunction::from_name(a.kappa);
  opts.header = a.header;
  const ScoreSample sample = load_scores(a.scores, opts);
  if (sample.size() < 2) throw InvalidInput("m must be ≥ 2 (got " + std::to_string(sample.size()) + ")");
  const DetectorModel model = fit(sample, a.delta, a.coverages);
  save_model(model, a.out);

  out << "fit m=" << model.m << " delta=" << fmt(model.delta) << " kappa=" << model.kappa_name
      << "\n";
  out << std::left << std::setw(12) << "c_target" << std::setw(16) << "b_star" << "theta\n";
  for (const auto& p : model.pairs) {
    out << std::setw(12) << fmt(p.c_target, 4) << std::setw(16) << fmt(p.b_star, 8)
        << fmt(p.theta, 10) << "\n";
  }
  out << "model written to " << a.out << "\n";
  return kExitOk;
}

// --- detect ----------------------------------------------------------------

int cmd_detect(const DetectArgs& a, std::ostream& out) {
  const DetectorModel model = load_model(a.model);
  if (!a.kappa.empty() && a.kappa != model.kappa_name) {
    throw InvalidInput("window confidence function '" + a.kappa + "' does not match the model's '" +
                       model.kappa_name + "'");
  }
  LoadOptions opts;
  opts.format = score_format(a.format);
  opts.kappa = ConfidenceFunction::from_name(model.kappa_name);
  opts.header = a.header;
  const ScoreSample window = load_scores(a.window, opts);
  const DetectionReport report = detect(model, window, a.alpha);

  out << "window k=" << report.window_size << "\n";
  out << "V=" << fmt(report.v_statistic, 10) << " p_value=" << fmt(report.p_value, 10)
      << " alpha=" << fmt(report.alpha) << "\n";
  out << std::left << std::setw(12) << "c_target" << std::setw(16) << "b_star" << std::setw(16)
      << "coverage" << "violated\n";
  for (const auto& c : report.per_coverage) {
    out << std::setw(12) << fmt(c.c_target, 4) << std::setw(16) << fmt(c.b_star, 8)
        << std::setw(16) << fmt(c.empirical_coverage, 8) << (c.violated ? "yes" : "no") << "\n";
  }
  out << (report.shift_detected ? "SHIFT DETECTED" : "no shift detected") << "\n";
  if (!a.report.empty()) write_file_atomic(a.report, report_to_json(report));
  return report.shift_detected ? kExitShift : kExitOk;
}

// --- eval ------------------------------------------------------------------

std::string default_format(const std::string& method) {
  return method == "ks" || method == "mmd" ? "softmax" : "raw";
}

// Without --train, half of the ID pool (seeded) becomes the detection-training set.
template <typename Sample>
std::pair<Sample, Sample> split_pool(const Sample& pool, std::uint64_t seed) {
  if (pool.size() < 4) throw InvalidInput("ID pool too small to split into train and test halves");
  Rng rng = Rng(seed).derive(0x7EA1);
  auto order = sample_without_replacement(pool.size(), pool.size(), rng);
  const std::size_t half = pool.size() / 2;
  std::vector<std::size_t> train(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(half));
  std::vector<std::size_t> rest(order.begin() + static_cast<std::ptrdiff_t>(half), order.end());
  return {pool.subset(train), pool.subset(rest)};
}

TrialPlan plan_from(const EvalArgs& a) {
  TrialPlan plan;
  plan.window_sizes = a.window_sizes;
  plan.n_trials = a.trials;
  plan.alpha = a.alpha;
  plan.seed = a.seed;
  return plan;
}

TrialReport eval_scores(const EvalArgs& a, const std::string& format) {
  std::string kappa = a.kappa;
  if (a.method == "single-sr") kappa = "sr";
  if (a.method == "single-ent") kappa = "entropy";
  LoadOptions opts;
  opts.format = score_format(format);
  opts.kappa = ConfidenceFunction::from_name(kappa);
  opts.header = a.header;
  ScoreSample id_pool = load_scores(a.id, opts);
  const ScoreSample shifted = load_scores(a.shifted, opts);
  std::optional<ScoreSample> train;
  if (!a.train.empty()) {
    train = load_scores(a.train, opts);
  } else {
    auto [t, rest] = split_pool(id_pool, a.seed);
    train = std::move(t);
    id_pool = std::move(rest);
  }
  const TrialPlan plan = plan_from(a);
  if (a.method == "ours") {
    const DetectorModel model = fit(*train, a.delta, a.coverages);
    return run_trials(
        id_pool, shifted,
        [&](const ScoreSample& w, std::uint64_t) { return detect(model, w, plan.alpha).p_value; },
        plan, a.method);
  }
  const auto method = a.method == "single-sr" ? BaselineMethod::single_sr : BaselineMethod::single_entropy;
  const BaselineDetector det(method, *train);
  return run_trials(
      id_pool, shifted,
      [&](const ScoreSample& w, std::uint64_t) { return det.test(w, plan.alpha).p_value; }, plan,
      a.method);
}

TrialReport eval_vectors(const EvalArgs& a, const std::string& format) {
  const VectorKind kind = format == "embedding" ? VectorKind::embedding : VectorKind::softmax;
  VectorSample id_pool = load_vectors(a.id, kind, a.header);
  const VectorSample shifted = load_vectors(a.shifted, kind, a.header);
  std::optional<VectorSample> train;
  if (!a.train.empty()) {
    train = load_vectors(a.train, kind, a.header);
  } else {
    auto [t, rest] = split_pool(id_pool, a.seed);
    train = std::move(t);
    id_pool = std::move(rest);
  }
  const TrialPlan plan = plan_from(a);
  BaselineConfig cfg;
  cfg.n_permutations = a.permutations;
  cfg.seed = a.seed;
  const BaselineDetector det(a.method == "ks" ? BaselineMethod::ks : BaselineMethod::mmd, *train, cfg);
  return run_trials(
      id_pool, shifted,
      [&](const VectorSample& w, std::uint64_t stream) {
        return det.test(w, plan.alpha, stream).p_value;
      },
      plan, a.method);
}

int cmd_eval(const EvalArgs& a, std::ostream& out) {
  const std::string format = a.format.empty() ? default_format(a.method) : a.format;
  const bool vector_method = a.method == "ks" || a.method == "mmd";
  if (vector_method && format == "raw") {
    throw InvalidInput("ks and mmd need softmax or embedding rows, not raw scores");
  }
  if (!vector_method && format == "embedding") {
    throw InvalidInput(a.method + " needs raw scores or softmax rows");
  }
  const TrialReport report = vector_method ? eval_vectors(a, format) : eval_scores(a, format);
  const std::string csv = metrics_csv({report});
  write_file_atomic(a.out, csv);
  out << csv;
  return kExitOk;
}

// --- simulate --------------------------------------------------------------

std::string format_row(std::span<const double> row) {
  std::string line;
  char buf[32];
  for (std::size_t j = 0; j < row.size(); ++j) {
    std::snprintf(buf, sizeof buf, "%.17g", row[j]);
    if (j) line += ',';
    line += buf;
  }
  return line + '\n';
}

int cmd_simulate(const SimulateArgs& a, std::ostream& out) {
  const DistSpec spec = parse_dist(a.dist);
  Rng rng(a.seed);
  std::string text;
  if (const auto* sd = std::get_if<ScoreDist>(&spec)) {
    const auto sample = gen_scores(*sd, a.n, rng);
    for (double x : sample.scores()) text += format_row({&x, 1});
  } else {
    const auto sample = gen_vectors(std::get<VectorDist>(spec), a.n, rng);
    for (std::size_t i = 0; i < sample.size(); ++i) text += format_row(sample.rows().row(i));
  }
  write_file_atomic(a.out, text);
  out << "wrote " << a.n << " draws of " << a.dist << " to " << a.out << "\n";
  return kExitOk;
}

// --- bench -----------------------------------------------------------------

int cmd_bench(const BenchArgs& a, std::ostream& out) {
  const std::string csv = bench_csv(run_bench(a.config));
  if (!a.out.empty()) write_file_atomic(a.out, csv);
  out << csv;
  return kExitOk;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Coverage-bound distribution shift detection"};
  app.name("covshift");
  app.require_subcommand(1);

  FitArgs fit_args;
  auto* fit_cmd = app.add_subcommand("fit", "Fit coverage bounds on a detection-training sample");
  fit_cmd->add_option("--scores", fit_args.scores, "Training scores file")->required()->check(CLI::ExistingFile);
  fit_cmd->add_option("--format", fit_args.format, "raw (one score per line) or softmax (CSV rows)")
      ->check(CLI::IsMember({"raw", "softmax"}))->capture_default_str();
  fit_cmd->add_option("--kappa", fit_args.kappa, "Confidence function: sr or entropy")
      ->check(CLI::IsMember({"sr", "entropy"}))->capture_default_str();
  fit_cmd->add_flag("--header", fit_args.header, "Skip the first line of a softmax CSV");
  fit_cmd->add_option("--delta", fit_args.delta, "Confidence parameter")
      ->check(CLI::Range(0.0, 1.0))->capture_default_str();
  fit_cmd->add_option("--coverages", fit_args.coverages, "Number of target coverages")
      ->check(CLI::PositiveNumber)->capture_default_str();
  fit_cmd->add_option("--out", fit_args.out, "Model file to write")->required();

  DetectArgs det_args;
  auto* det_cmd = app.add_subcommand("detect", "Test one window against a fitted model (exit 2 on shift)");
  det_cmd->add_option("--model", det_args.model, "Model file from `fit`")->required()->check(CLI::ExistingFile);
  det_cmd->add_option("--window", det_args.window, "Window scores file")->required()->check(CLI::ExistingFile);
  det_cmd->add_option("--format", det_args.format, "raw or softmax")
      ->check(CLI::IsMember({"raw", "softmax"}))->capture_default_str();
  det_cmd->add_option("--kappa", det_args.kappa, "Confidence function of the window; must match the model")
      ->check(CLI::IsMember({"sr", "entropy", "raw"}));
  det_cmd->add_flag("--header", det_args.header, "Skip the first line of a softmax CSV");
  det_cmd->add_option("--alpha", det_args.alpha, "Significance level")
      ->check(CLI::Range(0.0, 1.0))->capture_default_str();
  det_cmd->add_option("--report", det_args.report, "Write a JSON detection report here");

  EvalArgs ev;
  auto* eval_cmd = app.add_subcommand("eval", "Run repeated ID/shifted window trials and write metrics CSV");
  eval_cmd->add_option("--method", ev.method, "ours, ks, mmd, single-sr or single-ent")
      ->required()->check(CLI::IsMember({"ours", "ks", "mmd", "single-sr", "single-ent"}));
  eval_cmd->add_option("--id", ev.id, "In-distribution pool")->required()->check(CLI::ExistingFile);
  eval_cmd->add_option("--shifted", ev.shifted, "Shifted pool")->required()->check(CLI::ExistingFile);
  eval_cmd->add_option("--train", ev.train, "Detection-training file (default: seeded half of --id)")
      ->check(CLI::ExistingFile);
  eval_cmd->add_option("--format", ev.format, "raw, softmax or embedding (default: raw for score methods, softmax for ks/mmd)")
      ->check(CLI::IsMember({"raw", "softmax", "embedding"}));
  eval_cmd->add_option("--kappa", ev.kappa, "Confidence function for `ours` on softmax input")
      ->check(CLI::IsMember({"sr", "entropy"}))->capture_default_str();
  eval_cmd->add_flag("--header", ev.header, "Skip the first line of CSV inputs");
  eval_cmd->add_option("--window-sizes", ev.window_sizes, "Window sizes")->delimiter(',')
      ->check(CLI::Range(std::size_t{2}, std::numeric_limits<std::size_t>::max()))->capture_default_str();
  eval_cmd->add_option("--trials", ev.trials, "Trials per window size")->check(CLI::PositiveNumber)->capture_default_str();
  eval_cmd->add_option("--alpha", ev.alpha, "Significance level")->check(CLI::Range(0.0, 1.0))->capture_default_str();
  eval_cmd->add_option("--seed", ev.seed, "Random seed")->capture_default_str();
  eval_cmd->add_option("--delta", ev.delta, "Confidence parameter for `ours`")->check(CLI::Range(0.0, 1.0))->capture_default_str();
  eval_cmd->add_option("--coverages", ev.coverages, "Target coverages for `ours`")->check(CLI::PositiveNumber)->capture_default_str();
  eval_cmd->add_option("--permutations", ev.permutations, "MMD permutations")->check(CLI::PositiveNumber)->capture_default_str();
  eval_cmd->add_option("--out", ev.out, "Metrics CSV to write")->required();

  SimulateArgs sim;
  auto* sim_cmd = app.add_subcommand("simulate", "Write synthetic scores or vectors");
  sim_cmd->add_option("--dist", sim.dist,
                      "beta:A,B | uniform | mixture:W@beta:A,B;W@uniform | dirichlet:A1,..,AC | gaussian:MU,SIGMA,D")
      ->required();
  sim_cmd->add_option("--n", sim.n, "Number of draws")->check(CLI::PositiveNumber)->capture_default_str();
  sim_cmd->add_option("--seed", sim.seed, "Random seed")->capture_default_str();
  sim_cmd->add_option("--out", sim.out, "Output file")->required();

  BenchArgs bench;
  auto* bench_cmd = app.add_subcommand("bench", "Time one detection per method as the training set grows");
  bench_cmd->add_option("--sizes", bench.config.sizes, "Training-set sizes, ascending")->delimiter(',')->capture_default_str();
  bench_cmd->add_option("--window-size", bench.config.window_size, "Window size k")
      ->check(CLI::Range(std::size_t{2}, std::numeric_limits<std::size_t>::max()))->capture_default_str();
  bench_cmd->add_option("--methods", bench.config.methods, "ours, ks, mmd, single-sr, single-ent")->delimiter(',')
      ->check(CLI::IsMember({"ours", "ks", "mmd", "single-sr", "single-ent"}))->capture_default_str();
  bench_cmd->add_option("--dims", bench.config.dims, "Softmax width for ks/mmd")->check(CLI::PositiveNumber)->capture_default_str();
  bench_cmd->add_option("--repeats", bench.config.repeats, "Timed repeats (median reported)")->check(CLI::PositiveNumber)->capture_default_str();
  bench_cmd->add_option("--seed", bench.config.seed, "Random seed")->capture_default_str();
  bench_cmd->add_option("--out", bench.out, "CSV file to write");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kExitOk : kExitError;
  }

  try {
    if (*fit_cmd) return cmd_fit(fit_args, out);
    if (*det_cmd) return cmd_detect(det_args, out);
    if (*eval_cmd) return cmd_eval(ev, out);
    if (*sim_cmd) return cmd_simulate(sim, out);
    if (*bench_cmd) return cmd_bench(bench, out);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitError;
  }
  return kExitError;
}

}  // namespace covshift::cli
