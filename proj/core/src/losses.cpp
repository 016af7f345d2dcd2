#include "graspgen/losses.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "graspgen/error.hpp"
#include "graspgen/rng.hpp"

namespace graspgen {

void LossWeights::validate() const {
  if (affordance < 0.0 || direction < 0.0 || score < 0.0) {
    throw ConfigError("loss weights must be >= 0");
  }
  if (affordance == 0.0 && direction == 0.0 && score == 0.0) {
    throw ConfigError("loss weights must not all be zero");
  }
}

double smooth_l1(std::span<const double> pred, std::span<const double> target,
                 double beta) {
  if (pred.size() != target.size()) {
    throw std::invalid_argument("smooth_l1: length mismatch");
  }
  if (pred.empty()) {
    throw std::invalid_argument("smooth_l1: empty input");
  }
  if (!(beta > 0.0)) {
    throw std::invalid_argument("smooth_l1: beta must be > 0");
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < pred.size(); ++i) {
    const double x = std::abs(pred[i] - target[i]);
    sum += x < beta ? 0.5 * x * x / beta : x - 0.5 * beta;
  }
  return sum / static_cast<double>(pred.size());
}

double bce_with_logits(std::span<const double> logits,
                       std::span<const double> targets) {
  if (logits.size() != targets.size()) {
    throw std::invalid_argument("bce_with_logits: length mismatch");
  }
  if (logits.empty()) {
    throw std::invalid_argument("bce_with_logits: empty input");
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < logits.size(); ++i) {
    const double z = logits[i];
    const double t = targets[i];
    if (t < 0.0 || t > 1.0) {
      throw std::invalid_argument("bce_with_logits: target outside [0, 1]");
    }
    sum += std::max(z, 0.0) - z * t + std::log1p(std::exp(-std::abs(z)));
  }
  return sum / static_cast<double>(logits.size());
}

double total_loss(double affordance_loss, double direction_loss,
                  double score_loss, const LossWeights& weights) {
  weights.validate();
  if (!std::isfinite(affordance_loss) || !std::isfinite(direction_loss) ||
      !std::isfinite(score_loss)) {
    throw std::invalid_argument("total_loss: non-finite component");
  }
  return weights.affordance * affordance_loss +
         weights.direction * direction_loss + weights.score * score_loss;
}

std::vector<int> select_seeds(std::span<const double> affordance, double threshold) {
  std::vector<int> out;
  for (std::size_t i = 0; i < affordance.size(); ++i) {
    if (affordance[i] > threshold) out.push_back(static_cast<int>(i));
  }
  return out;
}

std::vector<int> sample_top_directions(std::span<const double> scores, int count,
                                       std::uint64_t seed) {
  if (count < 0) {
    throw std::invalid_argument("sample_top_directions: negative count");
  }
  std::vector<double> weights(scores.begin(), scores.end());
  int positive = 0;
  for (double w : weights) {
    if (w < 0.0 || w > 1.0) {
      throw std::invalid_argument("sample_top_directions: scores must lie in [0, 1]");
    }
    if (w > 0.0) ++positive;
  }
  if (count > positive) {
    throw std::invalid_argument("sample_top_directions: insufficient positive mass");
  }

  Rng rng(mix_seed(seed, 0xd12ULL));
  std::vector<int> picks;
  picks.reserve(count);
  for (int draw = 0; draw < count; ++draw) {
    double total = 0.0;
    for (double w : weights) total += w;
    const double u = rng.uniform() * total;
    double cumulative = 0.0;
    int picked = -1;
    for (std::size_t i = 0; i < weights.size(); ++i) {
      if (weights[i] <= 0.0) continue;
      cumulative += weights[i];
      if (u < cumulative) {
        picked = static_cast<int>(i);
        break;
      }
    }
    if (picked < 0) {  // u landed on the rounding edge of the last mass
      for (int i = static_cast<int>(weights.size()) - 1; i >= 0; --i) {
        if (weights[i] > 0.0) {
          picked = i;
          break;
        }
      }
    }
    picks.push_back(picked);
    weights[picked] = 0.0;  // without replacement
  }
  return picks;
}

}  // namespace graspgen
