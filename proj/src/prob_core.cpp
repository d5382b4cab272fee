#include "comorisk/prob_core.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace comorisk {

void ExactAccumulator::add(double x) {
  std::size_t kept = 0;
  for (std::size_t j = 0; j < partials_.size(); ++j) {
    double y = partials_[j];
    if (std::abs(x) < std::abs(y)) std::swap(x, y);
    const double hi = x + y;
    const double lo = y - (hi - x);
    if (lo != 0.0) partials_[kept++] = lo;
    x = hi;
  }
  partials_.resize(kept);
  partials_.push_back(x);
}

double ExactAccumulator::value() const {
  // Same final rounding as CPython's math.fsum (round half to even).
  std::size_t n = partials_.size();
  if (n == 0) return 0.0;
  double hi = partials_[--n];
  double lo = 0.0;
  while (n > 0) {
    const double x = hi;
    const double y = partials_[--n];
    hi = x + y;
    const double yr = hi - x;
    lo = y - yr;
    if (lo != 0.0) break;
  }
  if (n > 0 && ((lo < 0.0 && partials_[n - 1] < 0.0) || (lo > 0.0 && partials_[n - 1] > 0.0))) {
    const double y = lo * 2.0;
    const double x = hi + y;
    const double yr = x - hi;
    if (y == yr) hi = x;
  }
  return hi;
}

double exact_sum(std::span<const double> terms) {
  ExactAccumulator acc;
  for (double t : terms) acc.add(t);
  return acc.value();
}

FiniteSpace::FiniteSpace(std::span<const double> probs) {
  if (probs.empty()) throw std::invalid_argument("probability space needs at least one atom");
  for (std::size_t i = 0; i < probs.size(); ++i) {
    if (!std::isfinite(probs[i]) || probs[i] <= 0.0)
      throw std::invalid_argument("atom " + std::to_string(i) +
                                  " has non-positive probability; null atoms are not allowed");
  }
  const double total = exact_sum(probs);
  if (std::abs(total - 1.0) > 1e-12)
    throw std::invalid_argument("probabilities sum to " + std::to_string(total) + ", expected 1");
  probs_.resize(static_cast<Index>(probs.size()));
  for (std::size_t i = 0; i < probs.size(); ++i) probs_[static_cast<Index>(i)] = probs[i] / total;
}

SpacePtr FiniteSpace::make(std::span<const double> probs) {
  return std::make_shared<const FiniteSpace>(probs);
}

SpacePtr FiniteSpace::make(std::initializer_list<double> probs) {
  return make(std::span<const double>(probs.begin(), probs.size()));
}

SpacePtr FiniteSpace::uniform(Index n) {
  if (n < 1) throw std::invalid_argument("probability space needs at least one atom");
  std::vector<double> p(static_cast<std::size_t>(n), 1.0 / static_cast<double>(n));
  // 1/n rounded n times may miss 1 by a few ulps; the constructor renormalizes.
  return make(p);
}

double FiniteSpace::probability(const Event& event) const {
  if (event.size() != size()) throw std::invalid_argument("event size does not match space");
  ExactAccumulator acc;
  for (Index i = 0; i < size(); ++i)
    if (event[i]) acc.add(probs_[i]);
  return acc.value();
}

bool FiniteSpace::operator==(const FiniteSpace& other) const {
  return size() == other.size() && (probs_ == other.probs_).all();
}

bool same_space(const FiniteSpace& a, const FiniteSpace& b) { return &a == &b || a == b; }

namespace {

void require_finite(const Values& v) {
  if (!v.allFinite()) throw std::invalid_argument("random variable has non-finite values");
}

}  // namespace

RandVar::RandVar(SpacePtr space, Values values) : space_(std::move(space)), values_(std::move(values)) {
  if (!space_) throw std::invalid_argument("random variable needs a probability space");
  if (values_.size() != space_->size())
    throw std::invalid_argument("random variable has " + std::to_string(values_.size()) +
                                " values but the space has " + std::to_string(space_->size()) +
                                " atoms");
  require_finite(values_);
}

RandVar::RandVar(SpacePtr space, std::span<const double> values)
    : RandVar(std::move(space), Values(Eigen::Map<const Values>(values.data(),
                                                                static_cast<Index>(values.size())))) {}

RandVar::RandVar(SpacePtr space, std::initializer_list<double> values)
    : RandVar(std::move(space), std::span<const double>(values.begin(), values.size())) {}

RandVar RandVar::constant(SpacePtr space, double c) {
  const Index n = space ? space->size() : 0;
  return RandVar(std::move(space), Values::Constant(n, c));
}

RandVar RandVar::indicator(SpacePtr space, std::span<const Index> atoms, double level) {
  Values v = Values::Zero(space->size());
  for (Index i : atoms) {
    if (i < 0 || i >= v.size()) throw std::out_of_range("indicator atom out of range");
    v[i] = level;
  }
  return RandVar(std::move(space), std::move(v));
}

RandVar RandVar::indicator(SpacePtr space, const Event& event, double level) {
  if (event.size() != space->size()) throw std::invalid_argument("event size does not match space");
  Values v = event.select(Values::Constant(event.size(), level), Values::Zero(event.size()));
  return RandVar(std::move(space), std::move(v));
}

bool RandVar::is_constant() const { return (values_ == values_[0]).all(); }

std::vector<double> RandVar::to_vector() const {
  return std::vector<double>(values_.data(), values_.data() + values_.size());
}

bool RandVar::identical(const RandVar& other) const {
  return same_space(*space_, *other.space_) && (values_ == other.values_).all();
}

void require_same_space(const RandVar& a, const RandVar& b) {
  if (!same_space(*a.space(), *b.space()))
    throw std::invalid_argument("random variables live on different probability spaces");
}

RandVar& RandVar::operator+=(const RandVar& other) {
  require_same_space(*this, other);
  values_ += other.values_;
  require_finite(values_);
  return *this;
}

RandVar& RandVar::operator-=(const RandVar& other) {
  require_same_space(*this, other);
  values_ -= other.values_;
  require_finite(values_);
  return *this;
}

RandVar& RandVar::operator+=(double c) {
  values_ += c;
  require_finite(values_);
  return *this;
}

RandVar& RandVar::operator-=(double c) {
  values_ -= c;
  require_finite(values_);
  return *this;
}

RandVar& RandVar::operator*=(double c) {
  values_ *= c;
  require_finite(values_);
  return *this;
}

RandVar operator+(RandVar a, const RandVar& b) { return a += b; }
RandVar operator-(RandVar a, const RandVar& b) { return a -= b; }
RandVar operator-(RandVar a) { return a *= -1.0; }
RandVar operator+(RandVar a, double c) { return a += c; }
RandVar operator+(double c, RandVar a) { return a += c; }
RandVar operator-(RandVar a, double c) { return a -= c; }
RandVar operator*(double t, RandVar a) { return a *= t; }
RandVar operator*(RandVar a, double t) { return a *= t; }
RandVar operator/(RandVar a, double t) { return RandVar(a.space(), a.values() / t); }

RandVar product(const RandVar& a, const RandVar& b) {
  require_same_space(a, b);
  return RandVar(a.space(), a.values() * b.values());
}

RandVar ratio(const RandVar& a, const RandVar& b) {
  require_same_space(a, b);
  if ((b.values() == 0.0).any()) throw std::domain_error("atomwise ratio by a zero value");
  return RandVar(a.space(), a.values() / b.values());
}

SortedProfile sorted_profile(const RandVar& x) {
  const Index n = x.size();
  std::vector<Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Index{0});
  std::sort(order.begin(), order.end(),
            [&](Index a, Index b) { return x[a] < x[b] || (x[a] == x[b] && a < b); });

  const Values& p = x.space()->probs();
  SortedProfile profile;
  ExactAccumulator running;
  std::size_t k = 0;
  while (k < order.size()) {
    const double v = x[order[k]];
    ExactAccumulator group;
    while (k < order.size() && x[order[k]] == v) {
      running.add(p[order[k]]);
      group.add(p[order[k]]);
      ++k;
    }
    profile.values.push_back(v);
    profile.cumulative.push_back(running.value());
    profile.mass.push_back(group.value());
  }
  profile.cumulative.back() = 1.0;
  return profile;
}

double expectation(const RandVar& x) {
  // Grouping by value first makes the result depend on the distribution only.
  const SortedProfile profile = sorted_profile(x);
  ExactAccumulator acc;
  for (std::size_t k = 0; k < profile.size(); ++k) acc.add(profile.values[k] * profile.mass[k]);
  return acc.value();
}

std::size_t quantile_piece(const SortedProfile& profile, double beta) {
  if (!(beta >= 0.0 && beta < 1.0)) throw std::domain_error("quantile level must lie in [0, 1)");
  const auto it = std::upper_bound(profile.cumulative.begin(), profile.cumulative.end(), beta);
  return static_cast<std::size_t>(it - profile.cumulative.begin());
}

double upper_quantile(const SortedProfile& profile, double beta) {
  return profile.values[quantile_piece(profile, beta)];
}

double upper_quantile(const RandVar& x, double beta) {
  if (!(beta >= 0.0 && beta < 1.0)) throw std::domain_error("quantile level must lie in [0, 1)");
  return upper_quantile(sorted_profile(x), beta);
}

double essential_infimum(const RandVar& x) { return x.min(); }

bool same_distribution(const RandVar& x, const RandVar& y) {
  require_same_space(x, y);
  const SortedProfile px = sorted_profile(x);
  const SortedProfile py = sorted_profile(y);
  return px.values == py.values && px.cumulative == py.cumulative;
}

}  // namespace comorisk
