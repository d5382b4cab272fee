#include "comorisk/engine.hpp"
#include "comorisk/sampling.hpp"

#include <doctest.h>

#include <cmath>
#include <stdexcept>

using namespace comorisk;

namespace {

struct Instance {
  AcceptanceSpec a;
  EligibleAsset s;
  RandVar x;
};

Instance random_instance(std::uint64_t seed, std::uint64_t t, int kind) {
  Rng rng = trial_rng(seed, t);
  const SpacePtr sp = random_space(rng, 1, 8);
  const double alpha = random_alpha(rng);
  const EligibleAsset asset(uniform(rng, 0.5, 2.0), random_payoff(rng, sp, coin(rng, 0.8)));
  const RandVar x = random_position(rng, sp);
  switch (kind) {
    case 0: return {AcceptanceSpec::var(alpha), asset, x};
    case 1: return {AcceptanceSpec::es(alpha), asset, x};
    case 2: return {AcceptanceSpec::distortion(DistortionWeights({{alpha, 0.5}, {0.0, 0.2}, {1.0, 0.3}})), asset, x};
    default: return {AcceptanceSpec::expectation(), asset, x};
  }
}

}  // namespace

TEST_CASE("eligible asset validation") {
  const SpacePtr s = FiniteSpace::uniform(2);
  CHECK_THROWS_AS(EligibleAsset(0.0, RandVar(s, {1.0, 1.0})), std::domain_error);
  CHECK_THROWS_AS(EligibleAsset(1.0, RandVar(s, {1.0, 0.0})), std::domain_error);
  CHECK_THROWS_AS(EligibleAsset(1.0, RandVar(s, {1.0, -1.0})), std::domain_error);
  CHECK(EligibleAsset::risk_free(s, 2.0, 3.0).is_risk_free());
  CHECK_FALSE(EligibleAsset(1.0, RandVar(s, {1.0, 2.0})).is_risk_free());
}

TEST_CASE("rho examples") {
  const SpacePtr s3 = FiniteSpace::make({0.05, 0.05, 0.9});
  const EligibleAsset asset(1.0, RandVar(s3, {1.0, 2.0, 1.0}));
  const AcceptanceSpec v = AcceptanceSpec::var(0.05);
  const RandVar x(s3, {-2.0, -3.0, 2.0});
  const RandVar y(s3, {-4.0, -9.0, 0.0});
  CHECK(rho(v, asset, x).value == 1.5);
  CHECK(rho(v, asset, y).value == 4.0);
  CHECK(rho(v, asset, x + y).value == 6.0);
  CHECK(rho(v, asset, x).method == Method::closed_form);

  const SpacePtr s2 = FiniteSpace::uniform(2);
  const AcceptanceSpec e = AcceptanceSpec::es(0.5);
  const RandVar z(s2, {0.0, -1.0});
  CHECK(rho(e, EligibleAsset::risk_free(s2, 2.0, 3.0), z).value == doctest::Approx(2.0 / 3.0).epsilon(1e-15));

  const RiskQuote q = rho(e, EligibleAsset(1.0, RandVar(s2, {1.0, 2.0})), z, 1e-10);
  CHECK(q.method == Method::bisection);
  CHECK(std::abs(q.value - 0.5) <= 1e-10);
  CHECK(q.value >= 0.5);
  CHECK(q.bracket_width <= 1e-10);
}

TEST_CASE("rho_cash examples") {
  const SpacePtr s = FiniteSpace::make({0.1, 0.1, 0.8});
  const RandVar x(s, {-2.0, -3.0, 2.0});
  CHECK(rho_cash(AcceptanceSpec::var(0.1), x) == 2.0);
  CHECK(rho_cash(AcceptanceSpec::es(0.2), x) == doctest::Approx(2.5).epsilon(1e-14));
  CHECK(rho_cash(AcceptanceSpec::distortion(DistortionWeights::dirac(1.0)), x) ==
        doctest::Approx(-1.1).epsilon(1e-14));
  CHECK(rho_cash(AcceptanceSpec::var(0.1), RandVar::constant(s, 3.0)) == -3.0);
}

TEST_CASE("change of numeraire examples") {
  const SpacePtr s = FiniteSpace::make({0.1, 0.1, 0.8});
  const RandVar x(s, {-2.0, -3.0, 2.0});
  CHECK(change_numeraire(x, EligibleAsset::cash(s)).to_vector() == x.to_vector());
  const EligibleAsset asset(1.0, RandVar(s, {1.0, 2.0, 1.0}));
  CHECK(change_numeraire(asset.payoff(), asset).to_vector() == std::vector<double>{1.0, 1.0, 1.0});
  CHECK(change_numeraire(x, asset).to_vector() == std::vector<double>{-2.0, -1.5, 2.0});
}

TEST_CASE("errors") {
  const SpacePtr s = FiniteSpace::uniform(2);
  const RandVar x(s, {0.0, -1.0});
  CHECK_THROWS_AS(rho(AcceptanceSpec::es(0.5), EligibleAsset::cash(s), x, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(rho(AcceptanceSpec::es(0.5), EligibleAsset::cash(s), x, -1.0), std::invalid_argument);
  const AcceptanceSpec never =
      AcceptanceSpec::explicit_functional("never", [](const RandVar&) { return 1.0; });
  CHECK_THROWS_AS(rho(never, EligibleAsset::cash(s), x), std::runtime_error);
  CHECK(rho(AcceptanceSpec::es(0.5), EligibleAsset(1.0, RandVar(s, {1.0, 2.0})), RandVar::zero(s)).value == 0.0);
}

TEST_CASE("closed form and bisection agree on VaR") {
  for (std::uint64_t t = 0; t < 1000; ++t) {
    const Instance in = random_instance(41, t, 0);
    const double tol = default_tolerance(in.x, in.s);
    const RiskQuote exact = rho(in.a, in.s, in.x);
    const RiskQuote bis = rho(in.a, in.s, in.x, tol, Path::bisection);
    CHECK(exact.method == Method::closed_form);
    CHECK(bis.method == Method::bisection);
    CHECK(std::abs(bis.value - exact.value) <= tol);
  }
}

TEST_CASE("monotonicity, recovery, determinism and scale covariance") {
  for (int kind = 0; kind < 4; ++kind) {
    for (std::uint64_t t = 0; t < 200; ++t) {
      const Instance in = random_instance(42, t, kind);
      Rng rng = trial_rng(43, t);
      const RandVar bigger = in.x + random_nonnegative(rng, in.x.space());
      const double tol = std::max(default_tolerance(in.x, in.s), default_tolerance(bigger, in.s));
      const double r = rho(in.a, in.s, in.x, tol).value;
      CHECK(rho(in.a, in.s, bigger, tol).value <= r + tol);
      CHECK(rho(in.a, in.s, in.x, tol) == rho(in.a, in.s, in.x, tol));
      CHECK(std::abs(rho(in.a, in.s.scaled(2.5), in.x, tol).value - r) <= 2.0 * tol);

      // The upper bisection endpoint is a member when rebuilt as the engine does.
      const RiskQuote bis = rho(in.a, in.s, in.x, tol, Path::bisection);
      CHECK(accepts(in.a, in.x + bis.value * (in.s.payoff() / in.s.price())));
    }
  }
}

TEST_CASE("S-additivity and numeraire identity on every built-in kind") {
  const SpacePtr s = FiniteSpace::make({0.1, 0.1, 0.8});
  const EligibleAsset asset(1.0, RandVar(s, {1.0, 2.0, 1.0}));
  for (const AcceptanceSpec& a :
       {AcceptanceSpec::var(0.1), AcceptanceSpec::es(0.2),
        AcceptanceSpec::distortion(DistortionWeights({{0.1, 0.5}, {1.0, 0.5}})), AcceptanceSpec::expectation()}) {
    const CheckReport add = s_additivity_check(a, asset, 200, 1);
    CHECK(add.passed());
    const CheckReport num = numeraire_identity_check(a, asset, 200, 2);
    CHECK(num.passed());
    CHECK(s_additivity_check(a, EligibleAsset::risk_free(s, 2.0, 3.0), 100, 3).passed());
    CHECK(numeraire_identity_check(a, EligibleAsset::risk_free(s, 2.0, 3.0), 100, 4).passed());
  }
  const CheckReport exact = s_additivity_check(AcceptanceSpec::var(0.1), asset, 500, 5, 1e-12);
  CHECK(exact.passed());
}
