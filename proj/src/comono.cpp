#include "comorisk/comono.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace comorisk {

namespace {

int sign(double d) { return (d > 0.0) - (d < 0.0); }

// f(z) = offset + sum of nonnegative increments up to the rank of z.
RandVar increasing_image(Rng& rng, const RandVar& driver, const std::vector<double>& levels, bool flat) {
  std::vector<double> image(levels.size());
  double level = grid_value(rng, 4.0);
  for (std::size_t k = 0; k < levels.size(); ++k) {
    if (k > 0 && !flat && !coin(rng, 0.25)) level += std::abs(grid_value(rng, 3.0));
    image[k] = level;
  }
  Values v(driver.size());
  for (Index i = 0; i < driver.size(); ++i) {
    const auto k = std::lower_bound(levels.begin(), levels.end(), driver[i]) - levels.begin();
    v[i] = image[static_cast<std::size_t>(k)];
  }
  return RandVar(driver.space(), std::move(v));
}

std::vector<double> distinct_sorted(const RandVar& z) {
  std::vector<double> levels = z.to_vector();
  std::sort(levels.begin(), levels.end());
  levels.erase(std::unique(levels.begin(), levels.end()), levels.end());
  return levels;
}

}  // namespace

bool is_comonotone(const RandVar& x, const RandVar& y) {
  require_same_space(x, y);
  const Index n = x.size();
  for (Index i = 0; i < n; ++i)
    for (Index j = i + 1; j < n; ++j)
      if (sign(x[i] - x[j]) * sign(y[i] - y[j]) < 0) return false;
  return true;
}

bool is_comonotone_sorted(const RandVar& x, const RandVar& y) {
  require_same_space(x, y);
  std::vector<Index> order(static_cast<std::size_t>(x.size()));
  std::iota(order.begin(), order.end(), Index{0});
  std::sort(order.begin(), order.end(), [&](Index a, Index b) { return x[a] < x[b]; });
  double earlier_max = -std::numeric_limits<double>::infinity();
  std::size_t k = 0;
  while (k < order.size()) {
    const double v = x[order[k]];
    double block_min = std::numeric_limits<double>::infinity();
    double block_max = -std::numeric_limits<double>::infinity();
    for (; k < order.size() && x[order[k]] == v; ++k) {
      block_min = std::min(block_min, y[order[k]]);
      block_max = std::max(block_max, y[order[k]]);
    }
    if (block_min < earlier_max) return false;
    earlier_max = std::max(earlier_max, block_max);
  }
  return true;
}

ComonoPair comonotone_pair_with_driver(Rng& rng, const RandVar& driver) {
  const std::vector<double> levels = distinct_sorted(driver);
  RandVar x = increasing_image(rng, driver, levels, coin(rng, 0.05));
  RandVar y = increasing_image(rng, driver, levels, coin(rng, 0.1));
  return {std::move(x), std::move(y), driver};
}

ComonoPair generate_comonotone_pair(Rng& rng, const SpacePtr& space) {
  return comonotone_pair_with_driver(rng, random_position(rng, space));
}

ComonoPair generate_comonotone_pair(const SpacePtr& space, std::uint64_t seed) {
  Rng rng = trial_rng(seed, 0);
  return generate_comonotone_pair(rng, space);
}

double additivity_gap(const Functional& rho, const RandVar& x, const RandVar& y) {
  return rho(x + y) - rho(x) - rho(y);
}

ComonoPair refine_violation(const Functional& rho, ComonoPair pair, double tol) {
  double best = std::abs(additivity_gap(rho, pair.x, pair.y));
  bool changed = false;

  for (Index i = 0; i < pair.x.size(); ++i) {
    if (pair.x[i] == 0.0 && pair.y[i] == 0.0) continue;
    Values xv = pair.x.values();
    Values yv = pair.y.values();
    xv[i] = 0.0;
    yv[i] = 0.0;
    RandVar x(pair.x.space(), std::move(xv));
    RandVar y(pair.y.space(), std::move(yv));
    if (!is_comonotone(x, y)) continue;
    const double g = std::abs(additivity_gap(rho, x, y));
    if (g > tol) {
      pair.x = std::move(x);
      pair.y = std::move(y);
      best = g;
      changed = true;
    }
  }

  const double scale = 1.0 + pair.x.max_abs();
  for (double c : {-2.0, -1.0, -0.5, 0.5, 1.0, 2.0}) {
    RandVar x = pair.x + c * scale;
    const double g = std::abs(additivity_gap(rho, x, pair.y));
    if (g > best) {
      best = g;
      pair.x = std::move(x);
      changed = true;
    }
  }
  if (changed) pair.driver.reset();
  return pair;
}

CheckReport additivity_on_comonotone(const Functional& rho, const SpacePtr& space, std::uint64_t trials,
                                     std::uint64_t seed, double tol, const std::vector<ComonoPair>& probes) {
  CheckReport r;
  r.check = "comonotone-additivity";
  r.seed = seed;
  std::optional<ComonoPair> worst;
  double worst_gap = 0.0;

  const auto consider = [&](const ComonoPair& p) {
    ++r.trials;
    const double g = additivity_gap(rho, p.x, p.y);
    if (std::abs(g) > std::abs(worst_gap)) {
      worst_gap = g;
      worst = p;
    }
  };
  for (const auto& p : probes) consider(p);
  for (std::uint64_t t = 0; t < trials; ++t) {
    Rng rng = trial_rng(seed, t);
    consider(generate_comonotone_pair(rng, space));
  }

  r.set("max_abs_gap", std::abs(worst_gap));
  if (worst && std::abs(worst_gap) > tol) {
    const ComonoPair refined = refine_violation(rho, *worst, tol);
    const double g = additivity_gap(rho, refined.x, refined.y);
    r.verdict = Verdict::fail;
    r.add_witness("X", refined.x.to_vector());
    r.add_witness("Y", refined.y.to_vector());
    r.set("gap", g);
    r.set("rho_X", rho(refined.x));
    r.set("rho_Y", rho(refined.y));
    r.set("rho_X+Y", rho(refined.x + refined.y));
    r.note = g > 0.0 ? "superadditive on a comonotone pair" : "subadditive on a comonotone pair";
  }
  return r;
}

CheckReport additivity_on_s_comonotone(const AcceptanceSpec& a, const EligibleAsset& s, std::uint64_t trials,
                                       std::uint64_t seed, double tol) {
  const double eval_tol = tol / 10.0;
  const Functional rho_s = [&](const RandVar& x) { return rho(a, s, x, eval_tol).value; };
  std::vector<ComonoPair> pairs;
  for (std::uint64_t t = 0; t < trials; ++t) {
    Rng rng = trial_rng(seed, t);
    pairs.push_back(comonotone_pair_with_driver(rng, s.payoff()));
  }
  CheckReport r = additivity_on_comonotone(rho_s, s.space(), 0, seed, tol, pairs);
  r.check = "s-comonotone-additivity";
  return r;
}

CheckReport comono_preservation_under_numeraire(const EligibleAsset& s, std::uint64_t trials, std::uint64_t seed) {
  CheckReport r;
  r.check = "numeraire-comonotonicity";
  r.seed = seed;
  const RandVar& payoff = s.payoff();
  const SpacePtr& space = s.space();

  bool found_a = false;
  bool found_b = false;
  std::uint64_t draws = 0;
  const auto record_a = [&](const RandVar& xd, const RandVar& yd) {
    const RandVar x = product(xd, payoff);
    const RandVar y = product(yd, payoff);
    if (found_a || !is_comonotone(xd, yd) || is_comonotone(x, y)) return;
    found_a = true;
    r.add_witness("a.X'", xd.to_vector());
    r.add_witness("a.Y'", yd.to_vector());
    r.add_witness("a.X", x.to_vector());
    r.add_witness("a.Y", y.to_vector());
    r.set("draws_a", static_cast<double>(draws));
  };
  const auto record_b = [&](const RandVar& x, const RandVar& y) {
    const RandVar xd = ratio(x, payoff);
    const RandVar yd = ratio(y, payoff);
    if (found_b || !is_comonotone(x, y) || is_comonotone(xd, yd)) return;
    found_b = true;
    r.add_witness("b.X", x.to_vector());
    r.add_witness("b.Y", y.to_vector());
    r.add_witness("b.X'", xd.to_vector());
    r.add_witness("b.Y'", yd.to_vector());
    r.set("draws_b", static_cast<double>(draws));
  };

  for (std::uint64_t t = 0; t < trials && !(found_a && found_b); ++t) {
    Rng rng = trial_rng(seed, t);
    const ComonoPair p = generate_comonotone_pair(rng, space);
    ++draws;
    record_a(p.x, p.y);
    record_b(p.x, p.y);
  }
  r.trials = draws;

  if (!s.is_risk_free() && !(found_a && found_b)) {
    // Two atoms i, j with s_i < s_j always give witnesses:
    // (a) X' = 1, Y' = 1 except 2 s_j / s_i at i;  (b) X = 1, Y = s_j 1_{j}.
    const Index n = payoff.size();
    Index i = 0;
    Index j = 0;
    for (Index k = 0; k < n; ++k) {
      if (payoff[k] < payoff[i]) i = k;
      if (payoff[k] > payoff[j]) j = k;
    }
    const RandVar one = RandVar::constant(space, 1.0);
    Values yd = Values::Ones(n);
    yd[i] = 2.0 * payoff[j] / payoff[i];
    record_a(one, RandVar(space, yd));
    const Index at[] = {j};
    record_b(one, RandVar::indicator(space, at, payoff[j]));
    r.note = "structured witnesses after random search";
  }

  r.set("found_a", found_a ? 1.0 : 0.0);
  r.set("found_b", found_b ? 1.0 : 0.0);
  if (found_a || found_b) {
    r.verdict = Verdict::fail;
    if (r.note.empty()) r.note = "comonotonicity is not preserved by the change of numeraire";
  } else {
    r.note = "no witness; comonotonicity preserved";
  }
  return r;
}

}  // namespace comorisk
