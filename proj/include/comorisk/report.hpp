#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace comorisk {

enum class Verdict {
  pass,          // no violation found (sampled checks) or condition holds (exact checks)
  fail,          // violation found; witnesses attached
  inapplicable,  // hypotheses of the statement are not met
};

std::string_view to_string(Verdict v);
Verdict verdict_from_string(std::string_view s);

struct Witness {
  std::string name;
  std::vector<double> values;

  bool operator==(const Witness&) const = default;
};

/// Outcome of a property, theorem or search check.
///
/// A sampled "pass" means "no violation in `trials` draws from `seed`"; it is
/// never a proof. Witnesses are plain value vectors on the checked space so
/// they can be re-verified independently.
struct CheckReport {
  std::string check;
  Verdict verdict = Verdict::pass;
  std::uint64_t trials = 0;
  std::uint64_t seed = 0;
  bool heuristic = false;
  std::vector<Witness> witnesses;
  std::vector<std::pair<std::string, double>> numbers;
  std::string note;

  bool passed() const { return verdict == Verdict::pass; }
  bool failed() const { return verdict == Verdict::fail; }

  void set(std::string name, double value);
  void add_witness(std::string name, std::vector<double> values);

  std::optional<double> number(std::string_view name) const;
  const Witness* witness(std::string_view name) const;

  bool operator==(const CheckReport&) const = default;
};

/// Theorem checks report the same shape; `check` holds the statement id and
/// the condition variable (e.g. "W") is stored as a witness.
using TheoremVerdict = CheckReport;

}  // namespace comorisk
