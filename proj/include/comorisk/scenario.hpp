#pragma once

// Scenario documents: a finite space, named positions, an eligible asset and
// an acceptance kind, read from JSON.
//
//   {
//     "space": {"probs": [0.05, 0.05, 0.9], "labels": ["a", "b", "c"]},
//     "positions": {"X": [-2, -3, 2], "Y": [-4, -9, 0]},
//     "asset": {"price": 1, "payoff": [1, 2, 1]},
//     "acceptance": {"kind": "var", "alpha": 0.05},
//     "options": {"tol": 1e-10, "seed": 7, "trials": 1000}
//   }
//
// "asset" defaults to cash. "alt_asset" is an optional second asset used by
// the lemma-equality statement. Distortion kinds take
// "weights": [{"alpha": a, "w": w}, ...].

#include "comorisk/accept.hpp"
#include "comorisk/engine.hpp"
#include "comorisk/prob_core.hpp"

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace comorisk {

/// Schema or domain violation; `field` is a path such as "positions.X[2]",
/// or "line 4" for syntax errors.
class ScenarioError : public std::runtime_error {
 public:
  ScenarioError(std::string field, const std::string& message)
      : std::runtime_error(field + ": " + message), field_(std::move(field)) {}
  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

struct ScenarioOptions {
  std::optional<double> tol;
  std::optional<std::uint64_t> seed;
  std::optional<std::uint64_t> trials;
};

struct Scenario {
  SpacePtr space;
  std::vector<std::string> labels;
  std::vector<std::pair<std::string, RandVar>> positions;
  std::optional<EligibleAsset> asset;
  std::optional<EligibleAsset> alt_asset;
  std::optional<AcceptanceSpec> acceptance;
  ScenarioOptions options;

  /// The declared asset, or cash.
  EligibleAsset eligible() const;

  /// Named position; "X+Y" sums declared positions. Throws ScenarioError.
  RandVar position(std::string_view name) const;

  /// Throws ScenarioError naming "acceptance" when absent.
  const AcceptanceSpec& require_acceptance() const;
};

Scenario parse_scenario(std::string_view text);
Scenario load_scenario(const std::string& path);

std::string read_text_file(const std::string& path);

}  // namespace comorisk
