#pragma once

// Finite probability spaces and random variables on them.
//
// Every atom carries strictly positive probability, so "almost surely" and
// "at every atom" coincide everywhere in this library. Random variables store
// one value per atom in an Eigen array and support atomwise arithmetic.

#include <Eigen/Core>

#include <initializer_list>
#include <memory>
#include <span>
#include <vector>

namespace comorisk {

using Index = Eigen::Index;
using Values = Eigen::ArrayXd;
using Event = Eigen::Array<bool, Eigen::Dynamic, 1>;

/// Running sum of doubles that is correctly rounded at every read.
///
/// Keeps the exact sum as a list of non-overlapping partials (Shewchuk), so
/// the result depends only on the multiset of terms, not on their order.
class ExactAccumulator {
 public:
  void add(double x);
  double value() const;

 private:
  std::vector<double> partials_;
};

double exact_sum(std::span<const double> terms);

class FiniteSpace;
using SpacePtr = std::shared_ptr<const FiniteSpace>;

class FiniteSpace {
 public:
  /// Validates positivity and unit mass (within 1e-12), then divides every
  /// probability by the exact sum.
  explicit FiniteSpace(std::span<const double> probs);

  static SpacePtr make(std::span<const double> probs);
  static SpacePtr make(std::initializer_list<double> probs);
  static SpacePtr uniform(Index n);

  Index size() const { return probs_.size(); }
  const Values& probs() const { return probs_; }
  double prob(Index i) const { return probs_[i]; }

  /// Correctly rounded probability of the event.
  double probability(const Event& event) const;

  bool operator==(const FiniteSpace& other) const;

 private:
  Values probs_;
};

class RandVar {
 public:
  RandVar(SpacePtr space, Values values);
  RandVar(SpacePtr space, std::span<const double> values);
  RandVar(SpacePtr space, std::initializer_list<double> values);

  static RandVar constant(SpacePtr space, double c);
  static RandVar zero(SpacePtr space) { return constant(std::move(space), 0.0); }
  static RandVar indicator(SpacePtr space, std::span<const Index> atoms, double level = 1.0);
  static RandVar indicator(SpacePtr space, const Event& event, double level = 1.0);

  const SpacePtr& space() const { return space_; }
  const Values& values() const { return values_; }
  Index size() const { return values_.size(); }
  double operator[](Index i) const { return values_[i]; }

  bool is_constant() const;
  double max_abs() const { return values_.abs().maxCoeff(); }
  double min() const { return values_.minCoeff(); }
  double max() const { return values_.maxCoeff(); }
  std::vector<double> to_vector() const;

  /// Positions on the same space with the same atom values.
  bool identical(const RandVar& other) const;

  RandVar& operator+=(const RandVar& other);
  RandVar& operator-=(const RandVar& other);
  RandVar& operator+=(double c);
  RandVar& operator-=(double c);
  RandVar& operator*=(double c);

 private:
  SpacePtr space_;
  Values values_;
};

/// Throws std::invalid_argument unless both live on the same space.
void require_same_space(const RandVar& a, const RandVar& b);
bool same_space(const FiniteSpace& a, const FiniteSpace& b);

RandVar operator+(RandVar a, const RandVar& b);
RandVar operator-(RandVar a, const RandVar& b);
RandVar operator-(RandVar a);
RandVar operator+(RandVar a, double c);
RandVar operator+(double c, RandVar a);
RandVar operator-(RandVar a, double c);
RandVar operator*(double t, RandVar a);
RandVar operator*(RandVar a, double t);
RandVar operator/(RandVar a, double t);

/// Atomwise product and ratio.
RandVar product(const RandVar& a, const RandVar& b);
RandVar ratio(const RandVar& a, const RandVar& b);

/// Distinct values in ascending order with P(X <= value) at each.
struct SortedProfile {
  std::vector<double> values;
  std::vector<double> cumulative;  // strictly increasing, back() == 1
  std::vector<double> mass;        // P(X == value), correctly rounded

  std::size_t size() const { return values.size(); }
  /// P(X < values[k]).
  double below(std::size_t k) const { return k == 0 ? 0.0 : cumulative[k - 1]; }
};

SortedProfile sorted_profile(const RandVar& x);

double expectation(const RandVar& x);

/// sup{x : P(X < x) <= beta} for beta in [0, 1).
double upper_quantile(const RandVar& x, double beta);
double upper_quantile(const SortedProfile& profile, double beta);

/// Index into the profile of the piece containing beta.
std::size_t quantile_piece(const SortedProfile& profile, double beta);

double essential_infimum(const RandVar& x);

bool same_distribution(const RandVar& x, const RandVar& y);

}  // namespace comorisk
