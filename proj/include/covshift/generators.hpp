#pragma once

// Synthetic score and vector sources used in place of real model outputs.

#include <cstddef>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "covshift/baselines.hpp"
#include "covshift/rng.hpp"
#include "covshift/scores.hpp"

namespace covshift {

struct BetaDist {
  double a = 1.0;
  double b = 1.0;
};
struct UniformDist {};
using MixtureComponent = std::variant<BetaDist, UniformDist>;
struct MixtureDist {
  std::vector<std::pair<double, MixtureComponent>> parts;  // (weight, component)
};
using ScoreDist = std::variant<BetaDist, UniformDist, MixtureDist>;

struct DirichletDist {
  std::vector<double> alpha;
};
/// Independent normals with per-dimension means and a common sd.
struct GaussianDist {
  std::vector<double> mean;
  double sd = 1.0;
};
using VectorDist = std::variant<DirichletDist, GaussianDist>;

using DistSpec = std::variant<ScoreDist, VectorDist>;

/// Parses "beta:A,B", "uniform", "mixture:W@beta:A,B;W@uniform",
/// "dirichlet:A1,A2,...", "gaussian:MU,SIGMA,D".
DistSpec parse_dist(std::string_view spec);

ScoreSample gen_scores(const ScoreDist& dist, std::size_t n, Rng& rng,
                       std::string kappa_name = "raw");
/// Dirichlet rows come back as softmax samples, Gaussian rows as embeddings.
VectorSample gen_vectors(const VectorDist& dist, std::size_t n, Rng& rng);

}  // namespace covshift
