#pragma once

// Test-only oracles written straight from the definitions, independent of
// SortedProfile and of the library's quantile code.

#include "comorisk/prob_core.hpp"

#include <algorithm>
#include <limits>
#include <vector>

namespace comorisk::testing {

/// P(X + m < 0), summed naively.
inline double loss_probability(const RandVar& x, double m) {
  double p = 0.0;
  for (Index i = 0; i < x.size(); ++i)
    if (x[i] + m < 0.0) p += x.space()->prob(i);
  return p;
}

/// inf{m : P(X + m < 0) <= alpha} by scanning the candidates m = -x_i; the
/// infimum of a right-continuous step condition is attained at one of them.
inline double var_threshold_scan(const RandVar& x, double alpha) {
  double best = std::numeric_limits<double>::infinity();
  for (Index i = 0; i < x.size(); ++i) {
    const double m = -x[i];
    if (loss_probability(x, m) <= alpha + 1e-15) best = std::min(best, m);
  }
  return best;
}

/// (1/alpha) * integral of the scanned VaR_beta over (0, alpha], using that
/// VaR_beta is constant between consecutive cumulative breakpoints.
inline double es_from_var_scan(const RandVar& x, double alpha) {
  std::vector<double> breaks = {0.0, alpha};
  std::vector<Index> order(static_cast<std::size_t>(x.size()));
  for (Index i = 0; i < x.size(); ++i) order[static_cast<std::size_t>(i)] = i;
  std::sort(order.begin(), order.end(), [&](Index a, Index b) { return x[a] < x[b]; });
  double c = 0.0;
  for (Index i : order) {
    c += x.space()->prob(i);
    if (c < alpha) breaks.push_back(c);
  }
  std::sort(breaks.begin(), breaks.end());
  double total = 0.0;
  for (std::size_t k = 0; k + 1 < breaks.size(); ++k) {
    const double lo = breaks[k];
    const double hi = breaks[k + 1];
    if (hi <= lo) continue;
    total += (hi - lo) * var_threshold_scan(x, 0.5 * (lo + hi));
  }
  return total / alpha;
}

}  // namespace comorisk::testing
