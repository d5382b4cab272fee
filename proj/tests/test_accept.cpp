#include "comorisk/accept.hpp"
#include "comorisk/engine.hpp"
#include "comorisk/sampling.hpp"

#include <doctest.h>

#include <cmath>

using namespace comorisk;

namespace {

const SpacePtr& three() {
  static const SpacePtr s = FiniteSpace::make({0.1, 0.1, 0.8});
  return s;
}

std::vector<AcceptanceSpec> builtins() {
  return {AcceptanceSpec::var(0.1), AcceptanceSpec::es(0.1),
          AcceptanceSpec::distortion(DistortionWeights({{0.1, 0.5}, {1.0, 0.5}})),
          AcceptanceSpec::expectation()};
}

}  // namespace

TEST_CASE("membership examples") {
  const AcceptanceSpec a = AcceptanceSpec::var(0.1);
  CHECK(accepts(a, RandVar(three(), {-1.0, 0.0, 0.0})));
  CHECK_FALSE(accepts(a, RandVar(three(), {-1.0, -1.0, 0.0})));
  for (const AcceptanceSpec& k : builtins()) CHECK(accepts(k, RandVar::zero(three())));
}

TEST_CASE("membership matches the defining functional and the cash risk measure") {
  for (std::uint64_t t = 0; t < 1000; ++t) {
    Rng rng = trial_rng(31, t);
    const SpacePtr s = random_space(rng, 1, 8);
    const RandVar x = random_position(rng, s, 2.0);
    const double alpha = random_alpha(rng);
    const AcceptanceSpec kinds[] = {AcceptanceSpec::var(alpha), AcceptanceSpec::es(alpha),
                                    AcceptanceSpec::distortion(DistortionWeights({{alpha, 0.5}, {0.0, 0.5}})),
                                    AcceptanceSpec::expectation()};
    CHECK(accepts(kinds[0], x) == (var(x, Level(alpha)) <= 0.0));
    CHECK(accepts(kinds[1], x) == (es(x, Level(alpha)) <= 0.0));
    for (const AcceptanceSpec& a : kinds) {
      CHECK(accepts(a, x) == (rho_cash(a, x) <= 0.0));
      // Bisection returns the upper endpoint, so membership recovery holds up to tol.
      const double r = rho(a, EligibleAsset::cash(s), x, 1e-10, Path::bisection).value;
      if (accepts(a, x)) CHECK(r <= 1e-10);
      else CHECK(r > 0.0);
    }
  }
}

TEST_CASE("accepted positions sit on the boundary") {
  for (std::uint64_t t = 0; t < 500; ++t) {
    Rng rng = trial_rng(32, t);
    const SpacePtr s = random_space(rng, 1, 8);
    const RandVar y = random_position(rng, s);
    for (const AcceptanceSpec& a : builtins()) {
      const auto x = accepted_position(a, y);
      REQUIRE(x.has_value());
      CHECK(accepts(a, *x));
      CHECK(std::abs(a.functional(*x)) <= 1e-10 * (1.0 + y.max_abs()));
    }
  }
  CHECK(accepted_position(AcceptanceSpec::var(0.1), RandVar(three(), {1.0, -2.0, 3.0}))->to_vector() ==
        std::vector<double>{0.0, -3.0, 2.0});
}

TEST_CASE("proper, monotone, cone and convex checkers") {
  for (const AcceptanceSpec& a : builtins()) {
    CHECK(check_proper(a, three()).passed());
    CHECK(check_monotone(a, three(), 1000, 1).passed());
    CHECK(check_cone(a, three(), 1000, 2).passed());
  }
  CHECK(check_convex(AcceptanceSpec::es(0.1), three(), 1000, 3).passed());
  CHECK(check_convex(builtins()[2], three(), 1000, 3).passed());
  CHECK(check_convex(AcceptanceSpec::expectation(), three(), 1000, 3).passed());

  const CheckReport convex_var = check_convex(AcceptanceSpec::var(0.1), three(), 1000, 3);
  REQUIRE(convex_var.failed());
  const AcceptanceSpec var01 = AcceptanceSpec::var(0.1);
  const RandVar x(three(), convex_var.witness("X")->values);
  const RandVar y(three(), convex_var.witness("Y")->values);
  const RandVar blend(three(), convex_var.witness("blend")->values);
  CHECK(accepts(var01, x));
  CHECK(accepts(var01, y));
  CHECK_FALSE(accepts(var01, blend));
}

TEST_CASE("broken functionals are caught") {
  const AcceptanceSpec increasing =
      AcceptanceSpec::explicit_functional("E[X]", [](const RandVar& x) { return expectation(x); });
  const CheckReport m = check_monotone(increasing, three(), 1000, 4);
  REQUIRE(m.failed());
  const RandVar x(three(), m.witness("X")->values);
  const RandVar y(three(), m.witness("Y")->values);
  CHECK(accepts(increasing, x));
  CHECK_FALSE(accepts(increasing, y));
  CHECK(((y.values() - x.values()) >= 0.0).all());

  const AcceptanceSpec shifted = AcceptanceSpec::explicit_functional(
      "VaR + 1", [](const RandVar& x) { return var(x, Level(0.1)) + 1.0; });
  const CheckReport c = check_cone(shifted, three(), 100, 5);
  REQUIRE(c.failed());
  CHECK(c.number("t") == 0.0);

  const AcceptanceSpec everything =
      AcceptanceSpec::explicit_functional("always", [](const RandVar&) { return -1.0; });
  CHECK(check_proper(everything, three()).failed());
}

TEST_CASE("risk invariants") {
  const CheckReport v = find_risk_invariant(AcceptanceSpec::var(0.1), three(), 100, 6);
  REQUIRE(v.failed());
  CHECK(v.witness("X")->values == std::vector<double>{1.0, -1.0, 0.0});

  const SpacePtr two = FiniteSpace::uniform(2);
  const CheckReport e = find_risk_invariant(AcceptanceSpec::expectation(), two, 100, 7);
  REQUIRE(e.failed());
  CHECK(e.witness("X")->values == std::vector<double>{1.0, -1.0});

  for (std::uint64_t t = 0; t < 30; ++t) {
    Rng rng = trial_rng(33, t);
    const SpacePtr s = random_space(rng, 2, 8);
    const double alpha = random_alpha(rng);
    for (const AcceptanceSpec& a : {AcceptanceSpec::es(alpha),
                                    AcceptanceSpec::distortion(DistortionWeights({{alpha, 0.7}, {1.0, 0.3}}))}) {
      const CheckReport r = find_risk_invariant(a, s, 300, t);
      CHECK(r.passed());
      CHECK(r.number("certificate_min").value_or(0.0) > 0.0);
    }
  }
}

TEST_CASE("adding a risk invariant leaves the cash risk measure unchanged") {
  const SpacePtr two = FiniteSpace::uniform(2);
  const AcceptanceSpec mean = AcceptanceSpec::expectation();
  const CheckReport e = find_risk_invariant(mean, two, 100, 7);
  REQUIRE(e.failed());
  const RandVar w(two, e.witness("X")->values);
  for (std::uint64_t t = 0; t < 500; ++t) {
    Rng rng = trial_rng(34, t);
    const RandVar y = random_position(rng, two);
    CHECK(std::abs(rho_cash(mean, y + w) - rho_cash(mean, y)) <= 1e-10);
  }
}
