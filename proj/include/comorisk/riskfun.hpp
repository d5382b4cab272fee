#pragma once

// Cash-additive law-invariant functionals: Value-at-Risk, Expected Shortfall
// and distortion (ES-mixture) risk measures, evaluated exactly on finite
// spaces. Sign convention: positive values are capital shortfalls.

#include "comorisk/prob_core.hpp"

#include <vector>

namespace comorisk {

/// Confidence level strictly inside (0, 1).
class Level {
 public:
  explicit Level(double alpha);
  double alpha() const { return alpha_; }

 private:
  double alpha_;
};

struct DistortionPoint {
  double alpha;   // in [0, 1]; 0 is the worst case, 1 the negated mean
  double weight;  // > 0
};

/// Finitely supported probability measure on [0, 1].
class DistortionWeights {
 public:
  explicit DistortionWeights(std::vector<DistortionPoint> points);
  static DistortionWeights dirac(double alpha);

  const std::vector<DistortionPoint>& points() const { return points_; }
  /// Weight carried by the level 1, i.e. by the expectation component.
  double mass_at_one() const;

 private:
  std::vector<DistortionPoint> points_;
};

double var(const RandVar& x, Level level);
double var(const SortedProfile& profile, Level level);

double es(const RandVar& x, Level level);
double es(const SortedProfile& profile, Level level);

/// ES at the endpoints: 0 gives -essinf, 1 gives -E[X].
double es_boundary(const RandVar& x, double alpha);

/// Sum of weight * ES at each support point.
double distortion(const RandVar& x, const DistortionWeights& mu);

/// ES via order statistics and the concave distortion t -> min(t/alpha, 1).
/// Independent of SortedProfile; meant for cross-checking es().
double es_choquet_oracle(const RandVar& x, Level level);

}  // namespace comorisk
