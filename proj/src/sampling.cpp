#include "comorisk/sampling.hpp"

#include <cmath>
#include <vector>

namespace comorisk {

Rng trial_rng(std::uint64_t seed, std::uint64_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
  return Rng(seq);
}

double uniform(Rng& rng, double lo, double hi) {
  // 53 random mantissa bits; avoids implementation-defined distributions.
  const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
  return lo + (hi - lo) * u;
}

std::int64_t uniform_int(Rng& rng, std::int64_t lo, std::int64_t hi) {
  const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
  return lo + static_cast<std::int64_t>(rng() % span);
}

bool coin(Rng& rng, double p_true) { return uniform(rng, 0.0, 1.0) < p_true; }

double grid_value(Rng& rng, double bound) {
  const auto steps = static_cast<std::int64_t>(std::floor(bound / kGridStep));
  return static_cast<double>(uniform_int(rng, -steps, steps)) * kGridStep;
}

SpacePtr random_space(Rng& rng, Index min_atoms, Index max_atoms) {
  const auto n = static_cast<std::size_t>(uniform_int(rng, min_atoms, max_atoms));
  std::vector<double> weights(n);
  double total = 0.0;
  for (auto& w : weights) {
    w = static_cast<double>(uniform_int(rng, 1, 20));
    total += w;
  }
  for (auto& w : weights) w /= total;
  return FiniteSpace::make(weights);
}

RandVar random_position(Rng& rng, const SpacePtr& space, double bound) {
  Values v(space->size());
  // Coarse integer values half the time so that ties are common.
  const bool coarse = coin(rng);
  for (Index i = 0; i < v.size(); ++i)
    v[i] = coarse ? static_cast<double>(uniform_int(rng, -3, 3)) : grid_value(rng, bound);
  return RandVar(space, std::move(v));
}

RandVar random_nonconstant_position(Rng& rng, const SpacePtr& space, double bound) {
  if (space->size() < 2) return random_position(rng, space, bound);
  for (;;) {
    RandVar x = random_position(rng, space, bound);
    if (!x.is_constant()) return x;
  }
}

RandVar random_payoff(Rng& rng, const SpacePtr& space, bool risky) {
  const auto lo = static_cast<std::int64_t>(0.25 / kGridStep);
  const auto hi = static_cast<std::int64_t>(4.0 / kGridStep);
  if (!risky || space->size() < 2)
    return RandVar::constant(space, static_cast<double>(uniform_int(rng, lo, hi)) * kGridStep);
  for (;;) {
    Values v(space->size());
    for (Index i = 0; i < v.size(); ++i) v[i] = static_cast<double>(uniform_int(rng, lo, hi)) * kGridStep;
    RandVar s(space, std::move(v));
    if (!s.is_constant()) return s;
  }
}

double random_alpha(Rng& rng) { return uniform(rng, 0.02, 0.98); }

RandVar random_nonnegative(Rng& rng, const SpacePtr& space, double bound) {
  Values v(space->size());
  for (Index i = 0; i < v.size(); ++i) v[i] = coin(rng, 0.25) ? 0.0 : std::abs(grid_value(rng, bound));
  return RandVar(space, std::move(v));
}

}  // namespace comorisk
