#include "comorisk/theorems.hpp"

#include "comorisk/sampling.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <functional>
#include <map>
#include <numeric>
#include <stdexcept>

namespace comorisk {

namespace {

// Rounding allowance for memberships of the computed leveraged payoff W.
constexpr double kLeverageSlack = 1e-10;

bool accepts_with_slack(const AcceptanceSpec& a, const RandVar& x) { return a.functional(x) <= kLeverageSlack; }

// Boundary-translated negative indicators of events; all events for small
// spaces, singletons and pairs otherwise. Ordered by bitmask.
std::vector<RandVar> event_probes(const AcceptanceSpec& a, const SpacePtr& space) {
  std::vector<RandVar> out;
  const Index n = space->size();
  const auto add = [&](const Event& e) {
    if (auto x = accepted_position(a, RandVar::indicator(space, e, -1.0))) out.push_back(std::move(*x));
  };
  if (n <= 12) {
    for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
      Event e(n);
      for (Index i = 0; i < n; ++i) e[i] = (mask >> i) & 1u;
      add(e);
    }
  } else {
    for (Index i = 0; i < n; ++i) {
      Event e = Event::Constant(n, false);
      e[i] = true;
      add(e);
      for (Index j = i + 1; j < n; ++j) {
        Event f = e;
        f[j] = true;
        add(f);
      }
    }
  }
  return out;
}

Functional risk_functional(const AcceptanceSpec& a, const EligibleAsset& s, double eval_tol) {
  return [a, s, eval_tol](const RandVar& x) { return rho(a, s, x, eval_tol).value; };
}

}  // namespace

double rho_of_one(const AcceptanceSpec& a, const EligibleAsset& s) {
  return rho(a, s, RandVar::constant(s.space(), 1.0), 1e-12).value;
}

double leveraged_level(const AcceptanceSpec& a, const EligibleAsset& s) {
  const double r1 = rho_of_one(a, s);
  // rho_of_one bisects at 1e-12, so anything above -1e-12 is zero or positive.
  if (r1 >= -1e-12) throw std::domain_error("rho_{A,S}(1) >= 0: the functional cannot be comonotonic");
  const double level = -s.price() / r1;
  const Values& payoff = s.payoff().values();
  Index nearest = 0;
  (payoff - level).abs().minCoeff(&nearest);
  if (std::abs(payoff[nearest] - level) <= 1e-12 * std::abs(level)) return payoff[nearest];
  return level;
}

RandVar leveraged_payoff(const AcceptanceSpec& a, const EligibleAsset& s) {
  const double level = leveraged_level(a, s);
  return RandVar(s.space(), (level - s.payoff().values()) / level);
}

TheoremVerdict check_corollary_convex(const AcceptanceSpec& a, const EligibleAsset& s) {
  if (!a.is_convex()) throw std::invalid_argument("the convex corollary needs a convex acceptance kind");
  TheoremVerdict v;
  v.check = "corollary-convex";
  v.trials = 1;
  const double r1 = rho_of_one(a, s);
  const double level = leveraged_level(a, s);
  const RandVar w = leveraged_payoff(a, s);
  const RandVar w_prime = s.payoff() - level;
  v.set("rho_1", r1);
  v.set("f(W)", a.functional(w));
  v.set("f(-W)", a.functional(-w));
  v.add_witness("W", w.to_vector());
  v.add_witness("W'", w_prime.to_vector());
  const bool holds = accepts_with_slack(a, w) && accepts_with_slack(a, -w);
  v.verdict = holds ? Verdict::pass : Verdict::fail;
  v.note = holds ? "W is a risk invariant; rho_{A,S} is comonotonic"
                 : "W is not in A ∩ (-A); rho_{A,S} is not comonotonic";
  return v;
}

TheoremVerdict check_theorem_condition_b(const AcceptanceSpec& a, const EligibleAsset& s, std::uint64_t trials,
                                         std::uint64_t seed) {
  if (!a.is_builtin()) {
    TheoremVerdict v;
    v.check = "theorem-b";
    v.verdict = Verdict::inapplicable;
    v.note = "rho_A must be comonotonic; explicit functionals are not checked";
    return v;
  }
  if (a.is_convex()) {
    TheoremVerdict v = check_corollary_convex(a, s);
    v.check = "theorem-b";
    v.note += " (convex kind: exact single test)";
    return v;
  }

  TheoremVerdict v;
  v.check = "theorem-b";
  v.seed = seed;
  const SpacePtr& space = s.space();
  const double level = leveraged_level(a, s);
  const RandVar w = leveraged_payoff(a, s);
  const RandVar w_prime = s.payoff() - level;
  v.set("rho_1", rho_of_one(a, s));
  v.add_witness("W", w.to_vector());
  v.add_witness("W'", w_prime.to_vector());
  v.set("necessary_holds", accepts(a, w_prime) && accepts(a, -w_prime) ? 1.0 : 0.0);

  const auto test = [&](const RandVar& x) {
    ++v.trials;
    const RandVar up = x + w;
    const RandVar down = x - w;
    if (!accepts(a, up) || !accepts(a, down)) {
      v.verdict = Verdict::fail;
      v.add_witness("X", x.to_vector());
      if (!accepts(a, up))
        v.add_witness("X+W", up.to_vector());
      else
        v.add_witness("X-W", down.to_vector());
      v.note = "X is accepted but X +- W is not; rho_{A,S} is not comonotonic";
      return false;
    }
    return true;
  };

  if (!test(RandVar::zero(space))) return v;
  for (const RandVar& x : event_probes(a, space))
    if (!test(x)) return v;
  for (std::uint64_t t = 0; t < trials; ++t) {
    Rng rng = trial_rng(seed, t);
    if (auto x = accepted_position(a, random_position(rng, space)))
      if (!test(*x)) return v;
  }
  v.note = "no boundary member escapes A under +-W";
  return v;
}

TheoremVerdict check_prop_essrhoA(const AcceptanceSpec& a, const EligibleAsset& s, std::uint64_t trials,
                                  std::uint64_t seed, double tol, const std::vector<RandVar>& probes) {
  TheoremVerdict v;
  v.check = "prop-essrhoA";
  v.seed = seed;
  const Functional rho_s = risk_functional(a, s, tol / 10.0);
  const CheckReport additivity = additivity_on_comonotone(rho_s, s.space(), trials, seed, tol);
  const double factor = -rho_of_one(a, s);
  v.set("factor", factor);
  v.set("comonotonic", additivity.passed() ? 1.0 : 0.0);

  std::vector<RandVar> positions = probes;
  for (std::uint64_t t = 0; t < trials; ++t) {
    Rng rng = trial_rng(seed ^ 0x9e3779b97f4a7c15ULL, t);
    positions.push_back(random_position(rng, s.space()));
  }

  std::optional<RandVar> breach;
  double lhs = 0.0;
  double rhs = 0.0;
  for (const RandVar& x : positions) {
    ++v.trials;
    lhs = rho_s(x);
    rhs = factor * rho_cash(a, x, tol / 10.0);
    if (std::abs(lhs - rhs) > tol) {
      breach = x;
      break;
    }
  }
  if (breach) {
    v.add_witness("X", breach->to_vector());
    v.set("lhs", lhs);
    v.set("rhs", rhs);
  }

  if (additivity.passed()) {
    v.verdict = breach ? Verdict::fail : Verdict::pass;
    v.note = breach ? "comonotonic on samples but the identity fails" : "identity holds on all samples";
  } else {
    v.verdict = Verdict::inapplicable;
    v.note = breach ? "not comonotonic; identity fails at X" : "not comonotonic; identity held on samples";
  }
  return v;
}

TheoremVerdict check_lemma_equality(const AcceptanceSpec& a, const EligibleAsset& s, const EligibleAsset& r,
                                    std::uint64_t trials, std::uint64_t seed, double tol) {
  require_same_space(s.payoff(), r.payoff());
  TheoremVerdict v;
  v.check = "lemma-equality";
  v.seed = seed;
  const SpacePtr& space = s.space();
  const double eval_tol = tol / 10.0;

  // (a) equality of the two risk measures.
  bool a_holds = true;
  std::vector<RandVar> positions = {RandVar::constant(space, 1.0), RandVar::constant(space, -1.0)};
  for (std::uint64_t t = 0; t < trials; ++t) {
    Rng rng = trial_rng(seed, t);
    positions.push_back(random_position(rng, space));
  }
  for (const RandVar& x : positions) {
    ++v.trials;
    const double rs = rho(a, s, x, eval_tol).value;
    const double rr = rho(a, r, x, eval_tol).value;
    if (std::abs(rs - rr) > tol) {
      a_holds = false;
      v.add_witness("a.X", x.to_vector());
      v.set("rho_S(X)", rs);
      v.set("rho_R(X)", rr);
      break;
    }
  }

  // (b) stability of A along the gap direction D.
  bool b_holds = true;
  const RandVar gap = s.payoff() / s.price() - r.payoff() / r.price();
  v.add_witness("D", gap.to_vector());
  if (!(gap.is_constant() && gap[0] == 0.0)) {
    std::vector<RandVar> members = event_probes(a, space);
    members.insert(members.begin(), RandVar::zero(space));
    for (std::uint64_t t = 0; t < trials; ++t) {
      Rng rng = trial_rng(seed ^ 0x5bd1e995ULL, t);
      if (auto x = accepted_position(a, random_position(rng, space))) members.push_back(std::move(*x));
    }
    const double unit = 1.0 / gap.max_abs();
    for (const RandVar& x : members) {
      for (double m : {1.0, -1.0, 0.5, -0.5, 2.0, -2.0, 10.0, -10.0, 100.0, -100.0}) {
        ++v.trials;
        const RandVar moved = x + (m * unit) * gap;
        if (!accepts(a, moved)) {
          b_holds = false;
          v.add_witness("b.X", x.to_vector());
          v.add_witness("b.X+mD", moved.to_vector());
          v.set("b.m", m * unit);
          break;
        }
      }
      if (!b_holds) break;
    }
  }

  v.set("a_holds", a_holds ? 1.0 : 0.0);
  v.set("b_holds", b_holds ? 1.0 : 0.0);
  v.verdict = a_holds == b_holds ? Verdict::pass : Verdict::fail;
  v.note = a_holds == b_holds ? "(a) and (b) agree" : "(a) and (b) disagree";
  return v;
}

TheoremVerdict check_var_necessary_condition(const AcceptanceSpec& a, const EligibleAsset& s) {
  const auto* crit = std::get_if<VarCriterion>(&a.kind());
  if (!crit) throw std::invalid_argument("the VaR necessary condition needs a VaR acceptance kind");
  TheoremVerdict v;
  v.check = "var-necessary";
  v.trials = 1;
  const double alpha = crit->level.alpha();
  const RandVar inverse = ratio(RandVar::constant(s.space(), 1.0), s.payoff());
  const double var_inv = var(inverse, crit->level);
  // The quantile of 1/S1 is attained at an atom; read the payoff level there
  // instead of inverting the rounded quantile.
  const double q = -var_inv;
  Event at_level(s.space()->size());
  double level = 0.0;
  for (Index i = 0; i < inverse.size(); ++i)
    if (inverse[i] == q) level = s.payoff()[i];
  for (Index i = 0; i < inverse.size(); ++i) at_level[i] = s.payoff()[i] == level;
  const double prob = s.space()->probability(at_level);
  const double bound = 1.0 - 2.0 * alpha;
  v.set("var_inverse_payoff", var_inv);
  v.set("rho_1", s.price() * var_inv);
  v.set("payoff_level", level);
  v.set("probability", prob);
  v.set("bound", bound);
  v.verdict = prob >= bound ? Verdict::pass : Verdict::fail;
  v.note = prob >= bound ? "necessary condition holds (not sufficient)"
                         : "necessary condition fails; S-VaR is not comonotonic";
  return v;
}

TheoremVerdict check_var_condition_b(const SpacePtr& space, double alpha, std::size_t max_atoms,
                                     std::uint64_t trials, std::uint64_t seed) {
  const Level level(alpha);
  const auto n = static_cast<std::size_t>(space->size());
  if (n > max_atoms || n > 30)
    throw std::length_error("exhaustive event enumeration is capped at " + std::to_string(max_atoms) + " atoms");
  TheoremVerdict v;
  v.check = "var-condition-b";
  v.seed = seed;

  const std::uint32_t full = (n == 32) ? ~0u : ((1u << n) - 1u);
  const std::size_t count = std::size_t{1} << n;
  std::vector<double> prob(count, 0.0);
  for (std::size_t mask = 1; mask < count; ++mask) {
    ExactAccumulator acc;
    for (std::size_t i = 0; i < n; ++i)
      if ((mask >> i) & 1u) acc.add(space->prob(static_cast<Index>(i)));
    prob[mask] = acc.value();
  }
  // best[m]: the largest-probability subset of m with probability <= alpha.
  std::vector<std::uint32_t> best(count, 0);
  for (std::size_t mask = 1; mask < count; ++mask) {
    if (prob[mask] <= alpha) {
      best[mask] = static_cast<std::uint32_t>(mask);
      continue;
    }
    std::uint32_t pick = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (!((mask >> i) & 1u)) continue;
      const std::uint32_t cand = best[mask & ~(std::size_t{1} << i)];
      if (prob[cand] > prob[pick]) pick = cand;
    }
    best[mask] = pick;
  }

  std::optional<std::uint32_t> found;
  std::uint64_t events = 0;
  for (std::size_t mask = 1; mask < count && !found; ++mask) {
    if (!(prob[mask] <= alpha)) continue;
    ++events;
    const std::uint32_t b = best[~static_cast<std::uint32_t>(mask) & full];
    if (prob[mask | b] <= alpha) found = static_cast<std::uint32_t>(mask);
  }
  v.trials = events;
  v.set("events_checked", static_cast<double>(events));
  v.set("holds", found ? 1.0 : 0.0);
  if (!found) {
    v.verdict = Verdict::fail;
    v.note = "no event satisfies condition (b); S-VaR is comonotonic only for risk-free S";
    return v;
  }

  Event event(space->size());
  for (std::size_t i = 0; i < n; ++i) event[static_cast<Index>(i)] = (*found >> i) & 1u;
  const RandVar indicator = RandVar::indicator(space, event);
  const std::uint32_t complement_best = best[~*found & full];
  v.add_witness("A", indicator.to_vector());
  v.set("P(A)", prob[*found]);
  v.set("M", prob[complement_best]);

  const EligibleAsset asset(1.0, indicator + 1.0);
  v.add_witness("S1", asset.payoff().to_vector());
  const AcceptanceSpec acceptance = AcceptanceSpec::var(alpha);
  const CheckReport additivity =
      additivity_on_comonotone(risk_functional(acceptance, asset, 1e-12), space, trials, seed, 1e-10);
  v.set("witness_asset_additive", additivity.passed() ? 1.0 : 0.0);
  v.trials += additivity.trials;
  if (additivity.passed()) {
    v.verdict = Verdict::pass;
    v.note = "condition (b) holds; the asset 1 + 1_A gives a comonotonic S-VaR on all samples";
  } else {
    v.verdict = Verdict::fail;
    v.note = "condition (b) holds but the constructed asset's S-VaR is not additive on samples";
    for (const auto& w : additivity.witnesses) v.add_witness("additivity." + w.name, w.values);
  }
  return v;
}

TheoremVerdict search_var_condition_b(const SpacePtr& space, double alpha, std::uint64_t trials,
                                      std::uint64_t seed) {
  TheoremVerdict v;
  v.check = "var-condition-b";
  v.seed = seed;
  v.heuristic = true;
  const Index n = space->size();
  std::vector<Index> by_prob(static_cast<std::size_t>(n));
  std::iota(by_prob.begin(), by_prob.end(), Index{0});
  std::sort(by_prob.begin(), by_prob.end(), [&](Index a, Index b) { return space->prob(a) < space->prob(b); });

  for (std::uint64_t t = 0; t < trials; ++t) {
    Rng rng = trial_rng(seed, t);
    ++v.trials;
    Event a = Event::Constant(n, false);
    const double p_in = uniform(rng, 0.0, 0.5);
    for (Index i = 0; i < n; ++i) a[i] = coin(rng, p_in);
    const double pa = space->probability(a);
    if (!(pa > 0.0 && pa <= alpha)) continue;
    // Greedy fill of A^c with small atoms: a lower bound for M.
    Event b = Event::Constant(n, false);
    for (Index i : by_prob) {
      if (a[i]) continue;
      b[i] = true;
      if (space->probability(b) > alpha) b[i] = false;
    }
    if (space->probability(a || b) <= alpha) {
      v.verdict = Verdict::pass;
      v.add_witness("A", RandVar::indicator(space, a).to_vector());
      v.note = "candidate event found by randomized search (heuristic)";
      return v;
    }
  }
  v.verdict = Verdict::fail;
  v.note = "no candidate event found by randomized search (heuristic)";
  return v;
}

TheoremVerdict find_additivity_violation(const AcceptanceSpec& a, const EligibleAsset& s, std::uint64_t budget,
                                         std::uint64_t seed, double tol, const std::vector<ComonoPair>& probes) {
  TheoremVerdict v;
  v.check = "additivity-violation";
  v.seed = seed;
  const SpacePtr& space = s.space();
  const Functional rho_s = risk_functional(a, s, tol / 10.0);

  // Superadditive pairs are reported in preference to subadditive ones.
  std::optional<ComonoPair> up;
  std::optional<ComonoPair> down;
  double up_gap = 0.0;
  double down_gap = 0.0;
  const auto consider = [&](ComonoPair p) {
    ++v.trials;
    const double g = additivity_gap(rho_s, p.x, p.y);
    if (g > up_gap) {
      up_gap = g;
      up = p;
    }
    if (g < down_gap) {
      down_gap = g;
      down = std::move(p);
    }
  };

  for (const auto& p : probes) consider(p);

  // Constants are comonotone with everything.
  const RandVar& payoff = s.payoff();
  for (double sx : {1.0, -1.0})
    for (double c : {1.0, -1.0}) consider({sx * payoff, RandVar::constant(space, c), std::nullopt});

  // Step functions of an atom ordering, as in hand-built counterexamples.
  const Index n = space->size();
  for (std::uint64_t t = 0; t < budget; ++t) {
    Rng rng = trial_rng(seed, t);
    if (t % 2 == 0) {
      consider(generate_comonotone_pair(rng, space));
      continue;
    }
    std::vector<Index> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), Index{0});
    for (std::size_t k = order.size(); k > 1; --k)
      std::swap(order[k - 1], order[static_cast<std::size_t>(uniform_int(rng, 0, static_cast<std::int64_t>(k) - 1))]);
    Values z(n);
    for (Index k = 0; k < n; ++k) z[order[static_cast<std::size_t>(k)]] = static_cast<double>(k);
    Values xv(n);
    Values yv(n);
    double fx = static_cast<double>(uniform_int(rng, -10, 0));
    double fy = static_cast<double>(uniform_int(rng, -10, 0));
    for (Index k = 0; k < n; ++k) {
      if (k > 0) {
        fx += static_cast<double>(uniform_int(rng, 0, 6));
        fy += static_cast<double>(uniform_int(rng, 0, 6));
      }
      xv[order[static_cast<std::size_t>(k)]] = fx;
      yv[order[static_cast<std::size_t>(k)]] = fy;
    }
    consider({RandVar(space, xv), RandVar(space, yv), RandVar(space, z)});
  }

  const bool use_up = up_gap > tol || -down_gap <= up_gap;
  const std::optional<ComonoPair>& best = use_up ? up : down;
  const double best_gap = use_up ? up_gap : down_gap;
  v.set("max_gap", up_gap);
  v.set("min_gap", down_gap);
  if (best && std::abs(best_gap) > tol) {
    const bool comonotone = is_comonotone(best->x, best->y);
    const double recomputed = additivity_gap(rho_s, best->x, best->y);
    v.verdict = Verdict::fail;
    v.add_witness("X", best->x.to_vector());
    v.add_witness("Y", best->y.to_vector());
    v.set("gap", best_gap);
    v.set("rho_X", rho_s(best->x));
    v.set("rho_Y", rho_s(best->y));
    v.set("rho_X+Y", rho_s(best->x + best->y));
    v.set("verified", comonotone && std::abs(recomputed - best_gap) <= tol ? 1.0 : 0.0);
    v.note = best_gap > 0.0 ? "superadditive violation on a comonotone pair"
                            : "subadditive violation on a comonotone pair";
  } else {
    v.note = "no violation found";
  }
  return v;
}

namespace {

SpacePtr three_atoms(double alpha) { return FiniteSpace::make({alpha, alpha, 1.0 - 2.0 * alpha}); }

TheoremVerdict fixture_svar_superadditivity() {
  TheoremVerdict v;
  const double alpha = 0.05;
  const SpacePtr space = three_atoms(alpha);
  const EligibleAsset asset(1.0, RandVar(space, {1.0, 2.0, 1.0}));
  const AcceptanceSpec a = AcceptanceSpec::var(alpha);
  const RandVar x(space, {-2.0, -3.0, 2.0});
  const RandVar y(space, {-4.0, -9.0, 0.0});
  const double rx = rho(a, asset, x).value;
  const double ry = rho(a, asset, y).value;
  const double rxy = rho(a, asset, x + y).value;
  v.set("svar_X", rx);
  v.set("svar_Y", ry);
  v.set("svar_X+Y", rxy);
  v.set("gap", rxy - rx - ry);
  v.set("comonotone", is_comonotone(x, y) ? 1.0 : 0.0);
  return v;
}

TheoremVerdict fixture_var_risky() {
  TheoremVerdict v;
  const double alpha = 0.1;
  const SpacePtr space = three_atoms(alpha);
  const EligibleAsset asset(1.0, RandVar(space, {1.0, 2.0, 1.0}));
  const AcceptanceSpec a = AcceptanceSpec::var(alpha);
  const TheoremVerdict necessary = check_var_necessary_condition(a, asset);
  const TheoremVerdict cond_b = check_theorem_condition_b(a, asset, 200, 1);
  const RandVar minus_1a(space, {-1.0, 0.0, 0.0});
  const RandVar minus_1ab(space, {-1.0, -1.0, 0.0});
  v.set("svar_1", rho_of_one(a, asset));
  v.set("necessary_holds", necessary.passed() ? 1.0 : 0.0);
  v.set("theorem_b_holds", cond_b.passed() ? 1.0 : 0.0);
  const Witness* w = cond_b.witness("X");
  v.set("witness_is_minus_1A", w && w->values == minus_1a.to_vector() ? 1.0 : 0.0);
  v.set("accepts_minus_1A", accepts(a, minus_1a) ? 1.0 : 0.0);
  v.set("accepts_minus_1AuB", accepts(a, minus_1ab) ? 1.0 : 0.0);
  return v;
}

TheoremVerdict fixture_es_pointedness() {
  TheoremVerdict v;
  const AcceptanceSpec a = AcceptanceSpec::es(0.1);
  const SpacePtr space = FiniteSpace::make({0.1, 0.1, 0.8});
  const CheckReport inv = find_risk_invariant(a, space, 500, 3);
  v.set("invariant_found", inv.failed() ? 1.0 : 0.0);
  v.set("certificate_holds", inv.number("certificate_min").value_or(0.0) > 0.0 ? 1.0 : 0.0);
  const SpacePtr two = FiniteSpace::make({0.5, 0.5});
  const TheoremVerdict risky = check_corollary_convex(a, EligibleAsset(1.0, RandVar(two, {1.0, 2.0})));
  const TheoremVerdict riskless = check_corollary_convex(a, EligibleAsset::risk_free(two, 1.0, 2.0));
  v.set("leveraged_risky_holds", risky.passed() ? 1.0 : 0.0);
  v.set("leveraged_risk_free_holds", riskless.passed() ? 1.0 : 0.0);
  return v;
}

TheoremVerdict fixture_distortion_pointedness() {
  TheoremVerdict v;
  const SpacePtr space = FiniteSpace::make({0.1, 0.1, 0.8});
  const AcceptanceSpec mixed = AcceptanceSpec::distortion(DistortionWeights({{0.1, 0.5}, {1.0, 0.5}}));
  const CheckReport inv = find_risk_invariant(mixed, space, 500, 5);
  v.set("invariant_found", inv.failed() ? 1.0 : 0.0);
  v.set("certificate_holds", inv.number("certificate_min").value_or(0.0) > 0.0 ? 1.0 : 0.0);
  const SpacePtr two = FiniteSpace::make({0.5, 0.5});
  const EligibleAsset risky(1.0, RandVar(two, {1.0, 2.0}));
  const AcceptanceSpec mean = AcceptanceSpec::distortion(DistortionWeights::dirac(1.0));
  v.set("leveraged_dirac_one_holds", check_corollary_convex(mean, risky).passed() ? 1.0 : 0.0);
  const AcceptanceSpec mixed2 = AcceptanceSpec::distortion(DistortionWeights({{0.1, 0.5}, {1.0, 0.5}}));
  v.set("leveraged_mixed_holds", check_corollary_convex(mixed2, risky).passed() ? 1.0 : 0.0);
  return v;
}

TheoremVerdict fixture_var_not_pointed() {
  TheoremVerdict v;
  const SpacePtr space = FiniteSpace::make({0.1, 0.1, 0.8});
  const CheckReport inv = find_risk_invariant(AcceptanceSpec::var(0.1), space, 100, 7);
  v.set("invariant_found", inv.failed() ? 1.0 : 0.0);
  const Witness* w = inv.witness("X");
  v.set("witness_is_1_minus_1", w && w->values == std::vector<double>{1.0, -1.0, 0.0} ? 1.0 : 0.0);
  return v;
}

using FixtureFn = TheoremVerdict (*)();

std::string shortest(double x) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

const std::map<std::string, FixtureFn>& fixture_table() {
  static const std::map<std::string, FixtureFn> table = {
      {"svar-superadditivity", &fixture_svar_superadditivity},
      {"var-risky-not-comonotonic", &fixture_var_risky},
      {"es-pointedness", &fixture_es_pointedness},
      {"distortion-pointedness", &fixture_distortion_pointedness},
      {"var-not-pointed", &fixture_var_not_pointed},
  };
  return table;
}

}  // namespace

std::vector<PaperFixture> default_paper_fixtures() {
  return {
      {"svar-superadditivity",
       {{"svar_X", 1.5}, {"svar_Y", 4.0}, {"svar_X+Y", 6.0}, {"gap", 0.5}, {"comonotone", 1.0}}},
      {"var-risky-not-comonotonic",
       {{"svar_1", -1.0},
        {"necessary_holds", 1.0},
        {"theorem_b_holds", 0.0},
        {"witness_is_minus_1A", 1.0},
        {"accepts_minus_1A", 1.0},
        {"accepts_minus_1AuB", 0.0}}},
      {"es-pointedness",
       {{"invariant_found", 0.0},
        {"certificate_holds", 1.0},
        {"leveraged_risky_holds", 0.0},
        {"leveraged_risk_free_holds", 1.0}}},
      {"distortion-pointedness",
       {{"invariant_found", 0.0},
        {"certificate_holds", 1.0},
        {"leveraged_dirac_one_holds", 1.0},
        {"leveraged_mixed_holds", 0.0}}},
      {"var-not-pointed", {{"invariant_found", 1.0}, {"witness_is_1_minus_1", 1.0}}},
  };
}

std::vector<TheoremVerdict> replicate_paper(const std::vector<PaperFixture>& fixtures) {
  std::vector<TheoremVerdict> out;
  for (const PaperFixture& fx : fixtures) {
    TheoremVerdict v;
    const auto it = fixture_table().find(fx.id);
    if (it == fixture_table().end()) {
      v.check = fx.id;
      v.verdict = Verdict::fail;
      v.note = "unknown fixture " + fx.id;
      out.push_back(std::move(v));
      continue;
    }
    v = it->second();
    v.check = fx.id;
    v.trials = 1;
    std::string mismatches;
    for (const auto& [name, expected] : fx.expected) {
      const std::optional<double> actual = v.number(name);
      if (!actual || !(std::abs(*actual - expected) <= 1e-12)) {
        if (!mismatches.empty()) mismatches += "; ";
        mismatches += name + " expected " + shortest(expected) + " got " +
                      (actual ? shortest(*actual) : std::string("nothing"));
      }
    }
    v.verdict = mismatches.empty() ? Verdict::pass : Verdict::fail;
    v.note = mismatches.empty() ? "all values reproduced" : "mismatch in " + fx.id + ": " + mismatches;
    out.push_back(std::move(v));
  }
  return out;
}

}  // namespace comorisk
