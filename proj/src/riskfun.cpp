#include "comorisk/riskfun.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace comorisk {

Level::Level(double alpha) : alpha_(alpha) {
  if (!(alpha > 0.0 && alpha < 1.0))
    throw std::domain_error("level alpha must lie strictly inside (0, 1), got " + std::to_string(alpha));
}

DistortionWeights::DistortionWeights(std::vector<DistortionPoint> points) : points_(std::move(points)) {
  if (points_.empty()) throw std::invalid_argument("distortion needs at least one support point");
  std::vector<double> weights;
  for (const auto& pt : points_) {
    if (!(pt.alpha >= 0.0 && pt.alpha <= 1.0))
      throw std::domain_error("distortion support point outside [0, 1]");
    if (!(pt.weight > 0.0) || !std::isfinite(pt.weight))
      throw std::domain_error("distortion weights must be strictly positive");
    weights.push_back(pt.weight);
  }
  std::sort(points_.begin(), points_.end(),
            [](const DistortionPoint& a, const DistortionPoint& b) { return a.alpha < b.alpha; });
  for (std::size_t j = 1; j < points_.size(); ++j)
    if (points_[j].alpha == points_[j - 1].alpha)
      throw std::invalid_argument("distortion support points must be distinct");
  const double total = exact_sum(weights);
  if (std::abs(total - 1.0) > 1e-12) throw std::invalid_argument("distortion weights must sum to 1");
  for (auto& pt : points_) pt.weight /= total;
}

DistortionWeights DistortionWeights::dirac(double alpha) { return DistortionWeights({{alpha, 1.0}}); }

double DistortionWeights::mass_at_one() const {
  return points_.back().alpha == 1.0 ? points_.back().weight : 0.0;
}

double var(const SortedProfile& profile, Level level) { return -upper_quantile(profile, level.alpha()); }

double var(const RandVar& x, Level level) { return var(sorted_profile(x), level); }

double es(const SortedProfile& profile, Level level) {
  // VaR_beta is constant (= -values[k]) for beta in [below(k), cumulative[k]).
  const double alpha = level.alpha();
  ExactAccumulator integral;
  for (std::size_t k = 0; k < profile.size(); ++k) {
    const double lo = profile.below(k);
    if (lo >= alpha) break;
    const double hi = std::min(profile.cumulative[k], alpha);
    integral.add(-profile.values[k] * (hi - lo));
  }
  return integral.value() / alpha;
}

double es(const RandVar& x, Level level) { return es(sorted_profile(x), level); }

double es_boundary(const RandVar& x, double alpha) {
  if (alpha == 0.0) return -essential_infimum(x);
  if (alpha == 1.0) return -expectation(x);
  throw std::domain_error("es_boundary is defined only at alpha = 0 and alpha = 1");
}

double distortion(const RandVar& x, const DistortionWeights& mu) {
  const SortedProfile profile = sorted_profile(x);
  ExactAccumulator acc;
  for (const auto& pt : mu.points()) {
    double value;
    if (pt.alpha == 0.0 || pt.alpha == 1.0)
      value = es_boundary(x, pt.alpha);
    else
      value = es(profile, Level(pt.alpha));
    acc.add(pt.weight * value);
  }
  return acc.value();
}

double es_choquet_oracle(const RandVar& x, Level level) {
  const Index n = x.size();
  std::vector<Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Index{0});
  std::stable_sort(order.begin(), order.end(), [&](Index a, Index b) { return x[a] < x[b]; });

  const double alpha = level.alpha();
  const Values& p = x.space()->probs();
  double cum = 0.0;
  double prev_g = 0.0;
  double total = 0.0;
  for (Index i : order) {
    cum += p[i];
    const double g = std::min(cum / alpha, 1.0);
    total += (g - prev_g) * x[i];
    prev_g = g;
  }
  return -total;
}

}  // namespace comorisk
