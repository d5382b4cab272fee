#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>

namespace comorisk {

struct Threshold {
  double value;            // upper bracket end; the predicate holds here
  std::size_t iterations;  // bisection steps
  double width;            // final hi - lo
};

/// Locates the switch point of a predicate that is false below some m* and
/// true above it. The bracket [lo, hi] is widened geometrically (at most
/// `max_doublings` times on each side) until pred(lo) is false and pred(hi)
/// is true, then bisected until hi - lo <= tol.
template <class Pred>
Threshold find_threshold(Pred&& pred, double lo, double hi, double tol, int max_doublings = 128) {
  if (!(tol > 0.0)) throw std::invalid_argument("bisection tolerance must be positive");
  if (!(lo < hi)) throw std::invalid_argument("bisection bracket must satisfy lo < hi");

  int doublings = 0;
  while (pred(lo)) {
    if (++doublings > max_doublings) throw std::runtime_error("bracket expansion failed below");
    lo -= (hi - lo);
  }
  doublings = 0;
  while (!pred(hi)) {
    if (++doublings > max_doublings) throw std::runtime_error("bracket expansion failed above");
    const double step = hi - lo;
    lo = hi;
    hi += step;
  }

  std::size_t iterations = 0;
  while (hi - lo > tol) {
    const double mid = lo + 0.5 * (hi - lo);
    if (!(mid > lo && mid < hi)) break;  // bracket at floating-point resolution
    if (pred(mid))
      hi = mid;
    else
      lo = mid;
    ++iterations;
  }
  return {hi, iterations, hi - lo};
}

}  // namespace comorisk
