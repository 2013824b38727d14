#include "covshift/generators.hpp"

#include <charconv>
#include <cmath>

#include "covshift/error.hpp"

namespace covshift {

namespace {

std::vector<double> parse_numbers(std::string_view s, std::string_view what) {
  std::vector<double> out;
  while (true) {
    const auto comma = s.find(',');
    const auto field = s.substr(0, comma);
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
    if (field.empty() || ec != std::errc() || ptr != field.data() + field.size()) {
      throw InvalidInput("bad number '" + std::string(field) + "' in " + std::string(what));
    }
    out.push_back(v);
    if (comma == std::string_view::npos) break;
    s.remove_prefix(comma + 1);
  }
  return out;
}

std::pair<std::string_view, std::string_view> split_kind(std::string_view spec) {
  const auto colon = spec.find(':');
  if (colon == std::string_view::npos) return {spec, {}};
  return {spec.substr(0, colon), spec.substr(colon + 1)};
}

BetaDist parse_beta(std::string_view args) {
  const auto v = parse_numbers(args, "beta");
  if (v.size() != 2 || !(v[0] > 0.0) || !(v[1] > 0.0)) {
    throw InvalidInput("beta needs two positive parameters");
  }
  return {v[0], v[1]};
}

MixtureComponent parse_component(std::string_view spec) {
  const auto [kind, args] = split_kind(spec);
  if (kind == "beta") return parse_beta(args);
  if (kind == "uniform" && args.empty()) return UniformDist{};
  throw InvalidInput("mixture components must be beta or uniform");
}

double draw(const MixtureComponent& c, Rng& rng) {
  if (const auto* b = std::get_if<BetaDist>(&c)) return rng.beta(b->a, b->b);
  return rng.uniform();
}

}  // namespace

DistSpec parse_dist(std::string_view spec) {
  const auto [kind, args] = split_kind(spec);
  if (kind == "beta") return ScoreDist{parse_beta(args)};
  if (kind == "uniform") {
    if (!args.empty()) throw InvalidInput("uniform takes no parameters");
    return ScoreDist{UniformDist{}};
  }
  if (kind == "mixture") {
    MixtureDist mix;
    std::string_view rest = args;
    while (!rest.empty()) {
      const auto semi = rest.find(';');
      const auto part = rest.substr(0, semi);
      const auto at = part.find('@');
      if (at == std::string_view::npos) throw InvalidInput("mixture parts look like W@component");
      const auto w = parse_numbers(part.substr(0, at), "mixture weight");
      if (w.size() != 1 || !(w[0] > 0.0)) throw InvalidInput("mixture weights must be > 0");
      mix.parts.emplace_back(w[0], parse_component(part.substr(at + 1)));
      if (semi == std::string_view::npos) break;
      rest.remove_prefix(semi + 1);
    }
    if (mix.parts.empty()) throw InvalidInput("mixture has no components");
    return ScoreDist{std::move(mix)};
  }
  if (kind == "dirichlet") {
    auto alpha = parse_numbers(args, "dirichlet");
    for (double a : alpha) {
      if (!(a > 0.0)) throw InvalidInput("dirichlet concentrations must be > 0");
    }
    return VectorDist{DirichletDist{std::move(alpha)}};
  }
  if (kind == "gaussian") {
    const auto v = parse_numbers(args, "gaussian");
    if (v.size() != 3 || !(v[1] > 0.0) || !(v[2] >= 1.0) || v[2] != std::floor(v[2])) {
      throw InvalidInput("gaussian needs MU,SIGMA,D with SIGMA > 0 and integer D >= 1");
    }
    return VectorDist{GaussianDist{std::vector<double>(static_cast<std::size_t>(v[2]), v[0]), v[1]}};
  }
  throw InvalidInput("unknown distribution '" + std::string(spec) + "'");
}

ScoreSample gen_scores(const ScoreDist& dist, std::size_t n, Rng& rng, std::string kappa_name) {
  if (n == 0) throw InvalidInput("sample size must be >= 1");
  std::vector<double> out(n);
  if (const auto* b = std::get_if<BetaDist>(&dist)) {
    if (!(b->a > 0.0 && b->b > 0.0)) throw InvalidInput("beta parameters must be > 0");
    for (auto& x : out) x = rng.beta(b->a, b->b);
  } else if (std::holds_alternative<UniformDist>(dist)) {
    for (auto& x : out) x = rng.uniform();
  } else {
    const auto& mix = std::get<MixtureDist>(dist);
    double total = 0.0;
    for (const auto& [w, c] : mix.parts) {
      if (!(w > 0.0)) throw InvalidInput("mixture weights must be > 0");
      total += w;
    }
    for (auto& x : out) {
      double u = rng.uniform() * total;
      const MixtureComponent* pick = &mix.parts.back().second;
      for (const auto& [w, c] : mix.parts) {
        if (u < w) {
          pick = &c;
          break;
        }
        u -= w;
      }
      x = draw(*pick, rng);
    }
  }
  return ScoreSample(std::move(out), std::move(kappa_name), "synthetic");
}

VectorSample gen_vectors(const VectorDist& dist, std::size_t n, Rng& rng) {
  if (n == 0) throw InvalidInput("sample size must be >= 1");
  if (const auto* dir = std::get_if<DirichletDist>(&dist)) {
    const std::size_t d = dir->alpha.size();
    if (d == 0) throw InvalidInput("dirichlet needs at least one concentration");
    Matrix m(n, d);
    for (std::size_t i = 0; i < n; ++i) {
      auto row = m.row(i);
      double sum = 0.0;
      do {
        sum = 0.0;
        for (std::size_t j = 0; j < d; ++j) sum += row[j] = rng.gamma(dir->alpha[j]);
      } while (!(sum > 0.0));
      for (auto& v : row) v /= sum;
    }
    return VectorSample(std::move(m), VectorKind::softmax);
  }
  const auto& g = std::get<GaussianDist>(dist);
  if (g.mean.empty() || !(g.sd > 0.0)) throw InvalidInput("gaussian needs d >= 1 and sd > 0");
  Matrix m(n, g.mean.size());
  for (std::size_t i = 0; i < n; ++i) {
    auto row = m.row(i);
    for (std::size_t j = 0; j < row.size(); ++j) row[j] = rng.normal(g.mean[j], g.sd);
  }
  return VectorSample(std::move(m), VectorKind::embedding);
}

}  // namespace covshift
