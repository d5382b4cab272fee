#pragma once

// Capital requirements with a general eligible asset:
//
//   rho_{A,S}(X) = inf{ m : X + (m / S0) * S1 in A }.
//
// VaR acceptance, risk-free assets and mean acceptance have exact closed
// forms; everything else is bisected on the (monotone) membership of the
// translated position.

#include "comorisk/accept.hpp"
#include "comorisk/prob_core.hpp"
#include "comorisk/report.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>

namespace comorisk {

class EligibleAsset {
 public:
  /// Requires price > 0 and a payoff bounded away from zero (min > 0).
  EligibleAsset(double price, RandVar payoff);

  static EligibleAsset cash(const SpacePtr& space) { return {1.0, RandVar::constant(space, 1.0)}; }
  static EligibleAsset risk_free(const SpacePtr& space, double price, double payoff) {
    return {price, RandVar::constant(space, payoff)};
  }

  double price() const { return price_; }
  const RandVar& payoff() const { return payoff_; }
  const SpacePtr& space() const { return payoff_.space(); }
  /// Smallest payoff value (the epsilon bound).
  double floor() const { return payoff_.min(); }
  bool is_risk_free() const { return payoff_.is_constant(); }

  /// (c * S0, c * S1) for c > 0; defines the same risk measure.
  EligibleAsset scaled(double c) const;

 private:
  double price_;
  RandVar payoff_;
};

enum class Method { closed_form, bisection };

struct RiskQuote {
  double value = 0.0;
  Method method = Method::closed_form;
  std::size_t iterations = 0;
  double bracket_width = 0.0;

  bool operator==(const RiskQuote&) const = default;
};

enum class Path { automatic, bisection };

/// 1e-10 * max(1, max|X| * S0 / eps).
double default_tolerance(const RandVar& x, const EligibleAsset& s);

/// tol defaults to default_tolerance(); it must be positive when given and is
/// ignored on closed-form paths. The bisection path returns the upper bracket
/// end, which is accepted.
RiskQuote rho(const AcceptanceSpec& a, const EligibleAsset& s, const RandVar& x,
              std::optional<double> tol = std::nullopt, Path path = Path::automatic);

/// rho with the cash asset (1, 1). Exact for the built-in kinds.
double rho_cash(const AcceptanceSpec& a, const RandVar& x, std::optional<double> tol = std::nullopt);

/// X / S1 atomwise.
RandVar change_numeraire(const RandVar& x, const EligibleAsset& s);

/// A' = {X / S1 : X in A}, as the functional X' -> f(X' * S1).
AcceptanceSpec discounted_acceptance(const AcceptanceSpec& a, const EligibleAsset& s);

/// rho(X + lambda S1) == rho(X) - lambda S0 within 10 tol on sampled (X, lambda).
/// tol <= 0 selects the default tolerance per instance.
CheckReport s_additivity_check(const AcceptanceSpec& a, const EligibleAsset& s, std::uint64_t trials,
                               std::uint64_t seed, double tol = 0.0);

/// rho_{A,S}(X) == S0 * rho_{A'}(X / S1) within 10 tol on sampled X.
CheckReport numeraire_identity_check(const AcceptanceSpec& a, const EligibleAsset& s, std::uint64_t trials,
                                     std::uint64_t seed, double tol = 0.0);

}  // namespace comorisk
