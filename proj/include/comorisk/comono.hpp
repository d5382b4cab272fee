#pragma once

// Comonotonicity on finite spaces and comonotonic-additivity testing.

#include "comorisk/accept.hpp"
#include "comorisk/engine.hpp"
#include "comorisk/prob_core.hpp"
#include "comorisk/report.hpp"
#include "comorisk/sampling.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

namespace comorisk {

using Functional = std::function<double(const RandVar&)>;

/// X = f(Z), Y = g(Z) for nondecreasing f, g; Z is kept when known.
struct ComonoPair {
  RandVar x;
  RandVar y;
  std::optional<RandVar> driver;
};

/// Pairwise definition: (x_i - x_j)(y_i - y_j) >= 0 for every pair of atoms.
/// Compares signs of the differences, so tiny products cannot underflow.
bool is_comonotone(const RandVar& x, const RandVar& y);

/// O(n log n) equivalent of is_comonotone: sort by X and require the Y values
/// of each block of X-ties to dominate every Y value of earlier blocks.
bool is_comonotone_sorted(const RandVar& x, const RandVar& y);

/// Random driver on the grid, f and g built as cumulative sums of nonnegative
/// increments over the sorted distinct driver values.
ComonoPair generate_comonotone_pair(Rng& rng, const SpacePtr& space);
ComonoPair generate_comonotone_pair(const SpacePtr& space, std::uint64_t seed);

/// Same construction with a fixed driver (e.g. Z = S1).
ComonoPair comonotone_pair_with_driver(Rng& rng, const RandVar& driver);

/// rho(X + Y) - rho(X) - rho(Y).
double additivity_gap(const Functional& rho, const RandVar& x, const RandVar& y);

/// Shrinks a violating comonotone pair (zeroing atoms while the pair stays
/// comonotone and |gap| > tol), then tries a few cash translations of X and
/// keeps the one with the largest |gap|.
ComonoPair refine_violation(const Functional& rho, ComonoPair pair, double tol);

/// Samples comonotone pairs (after the given probes) and fails with the worst
/// refined violation when |gap| > tol.
CheckReport additivity_on_comonotone(const Functional& rho, const SpacePtr& space, std::uint64_t trials,
                                     std::uint64_t seed, double tol,
                                     const std::vector<ComonoPair>& probes = {});

/// Pairs are generated with driver S1, so X, Y, S1 are pairwise comonotone.
CheckReport additivity_on_s_comonotone(const AcceptanceSpec& a, const EligibleAsset& s, std::uint64_t trials,
                                       std::uint64_t seed, double tol);

/// Searches both directions: (a) X', Y' comonotone but X'S1, Y'S1 not;
/// (b) X, Y comonotone but X/S1, Y/S1 not. Passes (preservation) when neither
/// direction yields a witness.
CheckReport comono_preservation_under_numeraire(const EligibleAsset& s, std::uint64_t trials, std::uint64_t seed);

}  // namespace comorisk
