#include "comorisk/prob_core.hpp"
#include "comorisk/sampling.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

using namespace comorisk;

TEST_CASE("space construction validates and renormalizes") {
  const SpacePtr s = FiniteSpace::make({0.1, 0.1, 0.8});
  CHECK(s->size() == 3);
  CHECK(s->probs().sum() == doctest::Approx(1.0));

  CHECK_THROWS_AS(FiniteSpace::make({0.5, 0.6}), std::invalid_argument);
  CHECK_THROWS_AS(FiniteSpace::make({1.0, 0.0}), std::invalid_argument);
  CHECK_THROWS_AS(FiniteSpace::make({1.2, -0.2}), std::invalid_argument);
  CHECK_THROWS(FiniteSpace::make(std::vector<double>{}));

  // Sum off by less than 1e-12 is accepted and the cumulative mass ends at 1.
  const SpacePtr t = FiniteSpace::make({0.3, 0.3, 0.4 + 4e-13});
  const SortedProfile prof = sorted_profile(RandVar(t, {1.0, 2.0, 3.0}));
  CHECK(prof.cumulative.back() == 1.0);
}

TEST_CASE("random variables check length, finiteness and space") {
  const SpacePtr s = FiniteSpace::uniform(2);
  CHECK_THROWS(RandVar(s, {1.0}));
  CHECK_THROWS(RandVar(s, {1.0, std::numeric_limits<double>::infinity()}));
  const SpacePtr other = FiniteSpace::make({0.25, 0.75});
  CHECK_THROWS(RandVar(s, {1.0, 2.0}) + RandVar(other, {1.0, 2.0}));
  // Equal probabilities on separately built spaces interoperate.
  CHECK((RandVar(s, {1.0, 2.0}) + RandVar(FiniteSpace::uniform(2), {1.0, 2.0}))[1] == 4.0);
  CHECK_THROWS_AS(ratio(RandVar(s, {1.0, 2.0}), RandVar(s, {1.0, 0.0})), std::domain_error);
}

TEST_CASE("expectation examples") {
  const SpacePtr s = FiniteSpace::make({0.1, 0.1, 0.8});
  CHECK(expectation(RandVar(s, {-2.0, -3.0, 2.0})) == doctest::Approx(1.1).epsilon(1e-15));
  CHECK(expectation(RandVar::constant(s, 3.25)) == 3.25);
  CHECK(expectation(RandVar::zero(s)) == 0.0);
}

TEST_CASE("upper quantile examples") {
  const SpacePtr s = FiniteSpace::make({0.1, 0.1, 0.8});
  const RandVar x(s, {-2.0, -3.0, 2.0});
  CHECK(upper_quantile(x, 0.05) == -3.0);
  CHECK(upper_quantile(x, 0.1) == -2.0);
  CHECK(upper_quantile(x, 0.0) == -3.0);
  CHECK(upper_quantile(x, 0.2) == 2.0);
  CHECK(upper_quantile(RandVar::constant(s, 7.0), 0.37) == 7.0);
  CHECK_THROWS_AS(upper_quantile(x, 1.0), std::domain_error);
  CHECK_THROWS_AS(upper_quantile(x, -0.1), std::domain_error);
}

TEST_CASE("essential infimum examples") {
  const SpacePtr s = FiniteSpace::make({0.1, 0.1, 0.8});
  CHECK(essential_infimum(RandVar(s, {-2.0, -3.0, 2.0})) == -3.0);
  CHECK(essential_infimum(RandVar::constant(s, 4.0)) == 4.0);
  CHECK(essential_infimum(RandVar(FiniteSpace::uniform(2), {0.0, 5.0})) == 0.0);
}

TEST_CASE("same distribution examples") {
  const SpacePtr s = FiniteSpace::uniform(2);
  CHECK(same_distribution(RandVar(s, {1.0, 2.0}), RandVar(s, {2.0, 1.0})));
  CHECK_FALSE(same_distribution(RandVar(s, {1.0, 2.0}), RandVar(s, {1.0, 3.0})));
  const RandVar x(FiniteSpace::make({0.1, 0.1, 0.8}), {-2.0, -3.0, 2.0});
  CHECK(same_distribution(x, x));
  CHECK_THROWS(same_distribution(RandVar(s, {1.0, 2.0}), x));
}

TEST_CASE("sorted profile merges ties") {
  const SpacePtr s = FiniteSpace::make({0.2, 0.3, 0.5});
  const SortedProfile p = sorted_profile(RandVar(s, {1.0, 0.0, 1.0}));
  REQUIRE(p.size() == 2);
  CHECK(p.values[0] == 0.0);
  CHECK(p.values[1] == 1.0);
  CHECK(p.cumulative[0] == doctest::Approx(0.3));
  CHECK(p.cumulative[1] == 1.0);
  CHECK(p.below(1) == p.cumulative[0]);
}

TEST_CASE("exact summation is order independent") {
  std::vector<double> terms = {0.1, 0.2, 0.3, 1e16, -1e16, 0.4};
  const double a = exact_sum(terms);
  std::reverse(terms.begin(), terms.end());
  CHECK(exact_sum(terms) == a);
  CHECK(a == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("quantile properties on random instances") {
  for (std::uint64_t t = 0; t < 500; ++t) {
    Rng rng = trial_rng(11, t);
    const SpacePtr s = random_space(rng, 1, 10);
    const RandVar x = random_position(rng, s);
    double last = -std::numeric_limits<double>::infinity();
    for (int k = 0; k < 100; ++k) {
      const double beta = k / 100.0;
      const double q = upper_quantile(x, beta);
      CHECK(q >= last);
      last = q;
      const double c = grid_value(rng, 8.0);
      CHECK(upper_quantile(x + c, beta) == doctest::Approx(q + c).epsilon(1e-12));
    }
    const RandVar y = random_position(rng, s);
    const double a = grid_value(rng, 4.0);
    const double b = grid_value(rng, 4.0);
    CHECK(std::abs(expectation(a * x + b * y) - (a * expectation(x) + b * expectation(y))) <= 1e-12);
  }
}

TEST_CASE("same_distribution is an equivalence on permuted samples") {
  for (std::uint64_t t = 0; t < 300; ++t) {
    Rng rng = trial_rng(12, t);
    const SpacePtr s = FiniteSpace::uniform(uniform_int(rng, 2, 8));
    const RandVar x = random_position(rng, s);
    std::vector<double> v = x.to_vector();
    std::shuffle(v.begin(), v.end(), rng);
    const RandVar y(s, v);
    std::shuffle(v.begin(), v.end(), rng);
    const RandVar z(s, v);
    CHECK(same_distribution(x, x));
    CHECK(same_distribution(x, y) == same_distribution(y, x));
    CHECK(same_distribution(x, y));
    CHECK(same_distribution(y, z));
    CHECK(same_distribution(x, z));
  }
}
