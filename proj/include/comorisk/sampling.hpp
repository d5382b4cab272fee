#pragma once

// Seeded generators shared by the randomized checkers and the test suites.
// Values are drawn from a grid of multiples of 1/64 so that ties and exact
// boundary cases occur with positive frequency.

#include "comorisk/prob_core.hpp"

#include <cstdint>
#include <random>

namespace comorisk {

using Rng = std::mt19937_64;

inline constexpr double kGridStep = 1.0 / 64.0;

/// Derives an independent stream for trial `index` of a checker run.
Rng trial_rng(std::uint64_t seed, std::uint64_t index);

double uniform(Rng& rng, double lo, double hi);
std::int64_t uniform_int(Rng& rng, std::int64_t lo, std::int64_t hi);
bool coin(Rng& rng, double p_true = 0.5);

/// Multiple of kGridStep in [-bound, bound].
double grid_value(Rng& rng, double bound);

/// Space with 2..max_atoms atoms and integer-weight probabilities.
SpacePtr random_space(Rng& rng, Index min_atoms, Index max_atoms);

RandVar random_position(Rng& rng, const SpacePtr& space, double bound = 8.0);
RandVar random_nonconstant_position(Rng& rng, const SpacePtr& space, double bound = 8.0);

/// Payoff with grid values in [0.25, 4]; nonconstant when `risky` and the
/// space has at least two atoms.
RandVar random_payoff(Rng& rng, const SpacePtr& space, bool risky);

/// Continuous draw in [0.02, 0.98].
double random_alpha(Rng& rng);

/// Nonnegative grid increments, zero with probability 1/4.
RandVar random_nonnegative(Rng& rng, const SpacePtr& space, double bound = 4.0);

}  // namespace comorisk
