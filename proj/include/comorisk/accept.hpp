#pragma once

// Acceptance sets given as sublevel sets {X : f(X) <= 0} of a decreasing
// functional f, plus randomized checkers for their structural properties.

#include "comorisk/prob_core.hpp"
#include "comorisk/report.hpp"
#include "comorisk/riskfun.hpp"

#include <functional>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace comorisk {

struct VarCriterion {
  Level level;
};
struct EsCriterion {
  Level level;
};
struct DistortionCriterion {
  DistortionWeights mu;
};
struct ExpectationCriterion {};

/// User-supplied functional; expected to be continuous and decreasing so the
/// induced set is a closed acceptance set. Nothing here enforces that.
struct ExplicitFunctional {
  std::string name;
  std::function<double(const RandVar&)> fn;
};

class AcceptanceSpec {
 public:
  using Kind = std::variant<VarCriterion, EsCriterion, DistortionCriterion, ExpectationCriterion,
                            ExplicitFunctional>;

  explicit AcceptanceSpec(Kind kind) : kind_(std::move(kind)) {}

  static AcceptanceSpec var(double alpha) { return AcceptanceSpec(VarCriterion{Level(alpha)}); }
  static AcceptanceSpec es(double alpha) { return AcceptanceSpec(EsCriterion{Level(alpha)}); }
  static AcceptanceSpec distortion(DistortionWeights mu) {
    return AcceptanceSpec(DistortionCriterion{std::move(mu)});
  }
  static AcceptanceSpec expectation() { return AcceptanceSpec(ExpectationCriterion{}); }
  static AcceptanceSpec explicit_functional(std::string name, std::function<double(const RandVar&)> fn) {
    return AcceptanceSpec(ExplicitFunctional{std::move(name), std::move(fn)});
  }

  const Kind& kind() const { return kind_; }

  /// Value of the defining functional; X is accepted iff it is <= 0.
  double functional(const RandVar& x) const;

  /// VaR, ES, distortion and expectation: cash-additive, positively
  /// homogeneous and comonotonic, so rho_A equals the functional itself.
  bool is_builtin() const { return !std::holds_alternative<ExplicitFunctional>(kind_); }
  bool is_var() const { return std::holds_alternative<VarCriterion>(kind_); }
  bool is_convex() const;
  /// A intersected with -A is {0}: ES, and distortions without full mass at 1.
  bool is_pointed() const;

  std::string describe() const;

 private:
  Kind kind_;
};

/// Exact membership test: functional(X) <= 0, no tolerance.
bool accepts(const AcceptanceSpec& a, const RandVar& x);

/// Member of A obtained by translating y with cash onto (or, for the convex
/// kinds, just inside) the boundary of A. For VaR the translation is exact.
/// Returns nullopt when no translate of y is accepted.
std::optional<RandVar> accepted_position(const AcceptanceSpec& a, const RandVar& y);

/// Nonempty and proper: some constant accepted, some constant rejected.
CheckReport check_proper(const AcceptanceSpec& a, const SpacePtr& space);

CheckReport check_monotone(const AcceptanceSpec& a, const SpacePtr& space, std::uint64_t trials,
                           std::uint64_t seed);
CheckReport check_cone(const AcceptanceSpec& a, const SpacePtr& space, std::uint64_t trials,
                       std::uint64_t seed);
CheckReport check_convex(const AcceptanceSpec& a, const SpacePtr& space, std::uint64_t trials,
                         std::uint64_t seed);

/// Searches A ∩ (-A) for a nonzero element. `probes` are tried before the
/// built-in indicator-difference probes. For pointed kinds also checks the
/// strict certificate f(X) + f(-X) > 0 on every nonconstant sample.
/// Verdict: fail when an invariant (or certificate breach) is found.
CheckReport find_risk_invariant(const AcceptanceSpec& a, const SpacePtr& space, std::uint64_t trials,
                                std::uint64_t seed, const std::vector<RandVar>& probes = {});

}  // namespace comorisk
