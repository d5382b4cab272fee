#include "comorisk/accept.hpp"

#include "comorisk/bracket.hpp"
#include "comorisk/sampling.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace comorisk {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

// Relative inset used for the convex kinds so that rescaled or blended
// members do not leave A through rounding alone.
constexpr double kInteriorInset = 1e-12;

}  // namespace

double AcceptanceSpec::functional(const RandVar& x) const {
  return std::visit(Overloaded{
                        [&](const VarCriterion& c) { return comorisk::var(x, c.level); },
                        [&](const EsCriterion& c) { return comorisk::es(x, c.level); },
                        [&](const DistortionCriterion& c) { return comorisk::distortion(x, c.mu); },
                        [&](const ExpectationCriterion&) { return -comorisk::expectation(x); },
                        [&](const ExplicitFunctional& f) { return f.fn(x); },
                    },
                    kind_);
}

bool AcceptanceSpec::is_convex() const {
  return std::holds_alternative<EsCriterion>(kind_) || std::holds_alternative<DistortionCriterion>(kind_) ||
         std::holds_alternative<ExpectationCriterion>(kind_);
}

bool AcceptanceSpec::is_pointed() const {
  if (std::holds_alternative<EsCriterion>(kind_)) return true;
  if (const auto* d = std::get_if<DistortionCriterion>(&kind_)) return d->mu.mass_at_one() < 1.0;
  return false;
}

std::string AcceptanceSpec::describe() const {
  std::ostringstream os;
  std::visit(Overloaded{
                 [&](const VarCriterion& c) { os << "var(alpha=" << c.level.alpha() << ")"; },
                 [&](const EsCriterion& c) { os << "es(alpha=" << c.level.alpha() << ")"; },
                 [&](const DistortionCriterion& c) {
                   os << "distortion(";
                   for (std::size_t j = 0; j < c.mu.points().size(); ++j)
                     os << (j ? ", " : "") << c.mu.points()[j].alpha << ":" << c.mu.points()[j].weight;
                   os << ")";
                 },
                 [&](const ExpectationCriterion&) { os << "expectation"; },
                 [&](const ExplicitFunctional& f) { os << "explicit(" << f.name << ")"; },
             },
             kind_);
  return os.str();
}

bool accepts(const AcceptanceSpec& a, const RandVar& x) { return a.functional(x) <= 0.0; }

std::optional<RandVar> accepted_position(const AcceptanceSpec& a, const RandVar& y) {
  const double scale = 1.0 + y.max_abs();
  if (a.is_builtin()) {
    // Cash-additivity: f(Y + f(Y)) = 0.
    RandVar x = y + a.functional(y);
    if (a.is_convex()) x += kInteriorInset * scale;
    double nudge = 4.0 * std::numeric_limits<double>::epsilon() * scale;
    while (!accepts(a, x)) {
      x += nudge;
      nudge *= 2.0;
    }
    return x;
  }

  const auto member = [&](double m) { return accepts(a, y + m); };
  const double lo = -4.0 * scale;
  const double hi = 4.0 * scale;
  if (member(hi) && !member(lo)) {
    const Threshold t = find_threshold(member, lo, hi, 1e-12 * scale);
    return y + t.value;
  }
  if (member(0.0)) return y;
  if (member(lo)) return y + lo;
  if (member(hi)) return y + hi;
  return std::nullopt;
}

CheckReport check_proper(const AcceptanceSpec& a, const SpacePtr& space) {
  CheckReport r;
  r.check = "proper";
  std::optional<double> accepted_c;
  std::optional<double> rejected_c;
  for (double c : {0.0, 1.0, -1.0, 1e3, -1e3, 1e9, -1e9}) {
    const bool in = accepts(a, RandVar::constant(space, c));
    if (in && !accepted_c) accepted_c = c;
    if (!in && !rejected_c) rejected_c = c;
  }
  r.trials = 7;
  if (accepted_c) r.set("accepted_constant", *accepted_c);
  if (rejected_c) r.set("rejected_constant", *rejected_c);
  r.verdict = accepted_c && rejected_c ? Verdict::pass : Verdict::fail;
  if (!accepted_c) r.note = "no constant is accepted; the set looks empty";
  if (!rejected_c) r.note = "every constant is accepted; the set is not proper";
  return r;
}

CheckReport check_monotone(const AcceptanceSpec& a, const SpacePtr& space, std::uint64_t trials,
                           std::uint64_t seed) {
  CheckReport r;
  r.check = "monotone";
  r.seed = seed;
  std::uint64_t skipped = 0;
  for (std::uint64_t t = 0; t < trials; ++t) {
    Rng rng = trial_rng(seed, t);
    ++r.trials;
    const auto x = accepted_position(a, random_position(rng, space));
    if (!x) {
      ++skipped;
      continue;
    }
    RandVar up = *x;
    if (coin(rng)) {
      up += random_nonnegative(rng, space);
    } else {
      // Raise one atom by enough to move any mean-like functional.
      const auto i = static_cast<Index>(uniform_int(rng, 0, space->size() - 1));
      Values bump = Values::Zero(space->size());
      bump[i] = uniform(rng, 0.0, 2.0) * (1.0 + x->max_abs()) / space->prob(i);
      up += RandVar(space, bump);
    }
    if (!accepts(a, up)) {
      r.verdict = Verdict::fail;
      r.add_witness("X", x->to_vector());
      r.add_witness("Y", up.to_vector());
      r.set("trial", static_cast<double>(t));
      r.note = "X is accepted, Y >= X is rejected";
      break;
    }
  }
  r.set("skipped", static_cast<double>(skipped));
  return r;
}

CheckReport check_cone(const AcceptanceSpec& a, const SpacePtr& space, std::uint64_t trials,
                       std::uint64_t seed) {
  CheckReport r;
  r.check = "cone";
  r.seed = seed;
  std::uint64_t skipped = 0;
  for (std::uint64_t t = 0; t < trials; ++t) {
    Rng rng = trial_rng(seed, t);
    ++r.trials;
    const auto x = accepted_position(a, random_position(rng, space));
    if (!x) {
      ++skipped;
      continue;
    }
    // t = 0 first: it checks that 0 belongs to A.
    double scale;
    if (t == 0)
      scale = 0.0;
    else if (coin(rng))
      scale = static_cast<double>(uniform_int(rng, 0, 10));
    else
      scale = uniform(rng, 0.0, 10.0);
    const RandVar scaled = scale * *x;
    if (!accepts(a, scaled)) {
      r.verdict = Verdict::fail;
      r.add_witness("X", x->to_vector());
      r.add_witness("tX", scaled.to_vector());
      r.set("t", scale);
      r.set("trial", static_cast<double>(t));
      r.note = "X is accepted, tX is rejected";
      break;
    }
  }
  r.set("skipped", static_cast<double>(skipped));
  return r;
}

CheckReport check_convex(const AcceptanceSpec& a, const SpacePtr& space, std::uint64_t trials,
                         std::uint64_t seed) {
  CheckReport r;
  r.check = "convex";
  r.seed = seed;

  const auto report_violation = [&](const RandVar& x, const RandVar& y, double t, const RandVar& blend) {
    r.verdict = Verdict::fail;
    r.add_witness("X", x.to_vector());
    r.add_witness("Y", y.to_vector());
    r.add_witness("blend", blend.to_vector());
    r.set("t", t);
    r.note = "X and Y are accepted, tX + (1-t)Y is rejected";
  };

  // Midpoints of boundary-translated negative indicators of single atoms.
  const Index n = space->size();
  for (Index i = 0; i < n && !r.failed(); ++i) {
    for (Index j = i + 1; j < n && !r.failed(); ++j) {
      const Index ai[] = {i};
      const Index aj[] = {j};
      const auto x = accepted_position(a, RandVar::indicator(space, ai, -1.0));
      const auto y = accepted_position(a, RandVar::indicator(space, aj, -1.0));
      ++r.trials;
      if (!x || !y) continue;
      const RandVar blend = 0.5 * *x + 0.5 * *y;
      if (!accepts(a, blend)) report_violation(*x, *y, 0.5, blend);
    }
  }

  for (std::uint64_t t = 0; t < trials && !r.failed(); ++t) {
    Rng rng = trial_rng(seed, t);
    ++r.trials;
    const auto x = accepted_position(a, random_position(rng, space));
    const auto y = accepted_position(a, random_position(rng, space));
    if (!x || !y) continue;
    const double w = uniform(rng, 0.0, 1.0);
    const RandVar blend = w * *x + (1.0 - w) * *y;
    if (!accepts(a, blend)) report_violation(*x, *y, w, blend);
  }
  return r;
}

CheckReport find_risk_invariant(const AcceptanceSpec& a, const SpacePtr& space, std::uint64_t trials,
                                std::uint64_t seed, const std::vector<RandVar>& probes) {
  CheckReport r;
  r.check = "risk-invariant";
  r.seed = seed;
  const bool pointed = a.is_pointed();
  double certificate = std::numeric_limits<double>::infinity();
  std::optional<RandVar> certificate_breach;

  const auto examine = [&](const RandVar& x) {
    ++r.trials;
    if (x.is_constant() && x[0] == 0.0) return false;
    const double fx = a.functional(x);
    const double fnx = a.functional(-x);
    if (pointed && !x.is_constant()) {
      const double margin = fx + fnx;
      if (margin < certificate) certificate = margin;
      if (!(margin > 0.0) && !certificate_breach) certificate_breach = x;
    }
    if (fx <= 0.0 && fnx <= 0.0) {
      r.verdict = Verdict::fail;
      r.add_witness("X", x.to_vector());
      r.note = "X and -X are both accepted";
      return true;
    }
    return false;
  };

  std::vector<RandVar> candidates = probes;
  const Index n = space->size();
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j) {
      if (i == j) continue;
      Values d = Values::Zero(n);
      d[i] = 1.0;
      d[j] = -1.0;
      candidates.emplace_back(space, std::move(d));
    }
  bool found = false;
  for (const auto& c : candidates)
    if ((found = examine(c))) break;

  for (std::uint64_t t = 0; t < trials && !found; ++t) {
    Rng rng = trial_rng(seed, t);
    const RandVar y = random_position(rng, space);
    if ((found = examine(y))) break;
    if (const auto x = accepted_position(a, y)) found = examine(*x);
  }

  if (pointed) {
    r.set("certificate_min", certificate);
    if (certificate_breach && !found) {
      r.verdict = Verdict::fail;
      r.add_witness("certificate_breach", certificate_breach->to_vector());
      r.note = "f(X) + f(-X) > 0 fails for a nonconstant X";
    }
  }
  if (r.passed()) r.note = "none found";
  return r;
}

}  // namespace comorisk
