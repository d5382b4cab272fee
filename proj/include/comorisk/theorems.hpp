#pragma once

// Executable forms of the characterization results for comonotonic risk
// measures with a general eligible asset. Universally quantified conditions
// are checked on seeded samples plus deterministic probes; a sampled "pass"
// reports how many cases were examined and is never a proof.

#include "comorisk/accept.hpp"
#include "comorisk/comono.hpp"
#include "comorisk/engine.hpp"
#include "comorisk/report.hpp"

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace comorisk {

/// rho_{A,S}(1): closed form where available, otherwise bisection at 1e-12.
double rho_of_one(const AcceptanceSpec& a, const EligibleAsset& s);

/// Payoff level s* = -S0 / rho_{A,S}(1), snapped to an exact payoff value when
/// one lies within 1e-12 relative distance.
double leveraged_level(const AcceptanceSpec& a, const EligibleAsset& s);

/// W = 1 + (rho_{A,S}(1) / S0) S1, evaluated as (s* - S1) / s* so that W
/// vanishes exactly on the atoms where S1 = s*.
RandVar leveraged_payoff(const AcceptanceSpec& a, const EligibleAsset& s);

/// A +- W ⊂ A on boundary members of A. Convex kinds are delegated to the
/// exact corollary test. The necessary condition W' = S1 - s* in A ∩ (-A) is
/// reported as the number "necessary_holds".
TheoremVerdict check_theorem_condition_b(const AcceptanceSpec& a, const EligibleAsset& s, std::uint64_t trials,
                                         std::uint64_t seed);

/// Convex kinds only: rho_{A,S} comonotonic iff +-W in A. Memberships of the
/// computed W allow a 1e-10 rounding slack.
TheoremVerdict check_corollary_convex(const AcceptanceSpec& a, const EligibleAsset& s);

/// If rho_{A,S} is comonotonic on samples, verifies
/// rho_{A,S}(X) = -rho_{A,S}(1) rho_A(X); otherwise reports "inapplicable"
/// together with a position where that identity fails.
TheoremVerdict check_prop_essrhoA(const AcceptanceSpec& a, const EligibleAsset& s, std::uint64_t trials,
                                  std::uint64_t seed, double tol, const std::vector<RandVar>& probes = {});

/// (a) rho_{A,S} = rho_{A,R} on samples; (b) A + span(S1/S0 - R1/R0) ⊂ A on
/// boundary members. Passes when the two sampled verdicts agree.
TheoremVerdict check_lemma_equality(const AcceptanceSpec& a, const EligibleAsset& s, const EligibleAsset& r,
                                    std::uint64_t trials, std::uint64_t seed, double tol);

/// VaR kind only: P(S1 = -1 / VaR_alpha(1/S1)) >= 1 - 2 alpha. A failing
/// verdict certifies that S-VaR is not comonotonic.
TheoremVerdict check_var_necessary_condition(const AcceptanceSpec& a, const EligibleAsset& s);

/// Exhaustive search for an event A with 0 < P(A) <= alpha and
/// P(A) + max{P(B) : B ⊆ A^c, P(B) <= alpha} <= alpha. On success builds the
/// asset S0 = 1, S1 = 1 + 1_A and samples its S-VaR for comonotonic additivity.
/// Throws std::length_error when the space has more than max_atoms atoms.
TheoremVerdict check_var_condition_b(const SpacePtr& space, double alpha, std::size_t max_atoms = 20,
                                     std::uint64_t trials = 1000, std::uint64_t seed = 0);

/// Randomized event search for large spaces; verdicts are marked heuristic.
TheoremVerdict search_var_condition_b(const SpacePtr& space, double alpha, std::uint64_t trials,
                                      std::uint64_t seed);

/// Best comonotone pair (largest |gap|) over the probes, structured pairs built
/// from S1 and constants, step functions of random atom orderings and random
/// comonotone pairs. Fails (witness found) when |gap| > tol.
TheoremVerdict find_additivity_violation(const AcceptanceSpec& a, const EligibleAsset& s, std::uint64_t budget,
                                         std::uint64_t seed, double tol = 1e-9,
                                         const std::vector<ComonoPair>& probes = {});

struct PaperFixture {
  std::string id;
  std::vector<std::pair<std::string, double>> expected;
};

std::vector<PaperFixture> default_paper_fixtures();

/// Recomputes every fixture and compares each expected number within 1e-12.
std::vector<TheoremVerdict> replicate_paper(const std::vector<PaperFixture>& fixtures = default_paper_fixtures());

}  // namespace comorisk
