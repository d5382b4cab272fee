#pragma once

// Subcommands behind the `comorisk` executable. Each returns a Report; the
// exit code is derived from it (0 computed or passed, 1 failed or witness
// found, 2 usage or schema error).

#include "comorisk/engine.hpp"
#include "comorisk/report.hpp"
#include "comorisk/scenario.hpp"
#include "comorisk/theorems.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace comorisk {

std::string_view tool_version();

/// Statement ids accepted by cmd_check.
const std::vector<std::string>& statement_ids();

struct QuoteItem {
  std::string position;
  RiskQuote quote;
  bool accepted = false;

  bool operator==(const QuoteItem&) const = default;
};

struct Report {
  std::string command;
  std::vector<std::string> args;
  std::string version;
  std::uint64_t seed = 0;
  std::vector<QuoteItem> quotes;
  std::vector<CheckReport> verdicts;

  /// 1 when any verdict failed, else 0.
  int exit_code() const;
  bool operator==(const Report&) const = default;
};

struct RunOptions {
  std::uint64_t seed = 0;
  std::uint64_t trials = 1000;
  std::optional<double> tol;
  std::optional<std::uint64_t> budget;
};

/// Flags override the scenario's "options" block, which overrides defaults.
RunOptions resolve_options(const Scenario& s, std::optional<std::uint64_t> seed, std::optional<std::uint64_t> trials,
                           std::optional<double> tol, std::optional<std::uint64_t> budget);

/// All declared positions when `names` is empty.
Report cmd_eval(const Scenario& s, const std::vector<std::string>& names, const RunOptions& o);
/// Throws std::invalid_argument for unknown statement ids.
Report cmd_check(const Scenario& s, std::string_view statement, const RunOptions& o);
/// statement: "additivity" (default) or "numeraire".
Report cmd_search(const Scenario& s, std::string_view statement, const RunOptions& o);
Report cmd_replicate(const std::vector<PaperFixture>& fixtures, const RunOptions& o);

/// Replaces the expected numbers of matching fixture ids; unknown ids are
/// appended. Format: {"fixtures": [{"id": ..., "expected": {name: value}}]}.
std::vector<PaperFixture> apply_fixture_overrides(std::vector<PaperFixture> fixtures, std::string_view text);

std::string to_json(const Report& r);
Report report_from_json(std::string_view text);
std::string to_text(const Report& r);

/// Full command-line entry point; args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace comorisk
