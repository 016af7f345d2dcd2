#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace graspgen {

struct LossWeights {
  double affordance = 1.0;
  double direction = 1.0;
  double score = 1.0;

  void validate() const;  // weights >= 0, not all zero
};

/// Mean smooth-L1: 0.5 x^2 / beta for |x| < beta, |x| - beta/2 otherwise.
double smooth_l1(std::span<const double> pred, std::span<const double> target,
                 double beta = 1.0);

/// Mean binary cross-entropy on logits, in the overflow-safe form
/// max(z, 0) - z t + log1p(exp(-|z|)). Targets must lie in [0, 1].
double bce_with_logits(std::span<const double> logits,
                       std::span<const double> targets);

/// Weighted sum of the three loss components.
double total_loss(double affordance_loss, double direction_loss,
                  double score_loss, const LossWeights& weights);

/// Indices with score strictly above the threshold, ascending.
std::vector<int> select_seeds(std::span<const double> affordance, double threshold);

/// Weighted sampling without replacement, proportional to the scores, from
/// an explicit seeded generator. Requires `count` strictly positive scores.
std::vector<int> sample_top_directions(std::span<const double> scores, int count,
                                       std::uint64_t seed);

}  // namespace graspgen
