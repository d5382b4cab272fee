#include "comorisk/report.hpp"

#include <stdexcept>

namespace comorisk {

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::pass: return "pass";
    case Verdict::fail: return "fail";
    case Verdict::inapplicable: return "inapplicable";
  }
  return "unknown";
}

Verdict verdict_from_string(std::string_view s) {
  if (s == "pass") return Verdict::pass;
  if (s == "fail") return Verdict::fail;
  if (s == "inapplicable") return Verdict::inapplicable;
  throw std::invalid_argument("unknown verdict '" + std::string(s) + "'");
}

void CheckReport::set(std::string name, double value) {
  for (auto& [k, v] : numbers)
    if (k == name) {
      v = value;
      return;
    }
  numbers.emplace_back(std::move(name), value);
}

void CheckReport::add_witness(std::string name, std::vector<double> values) {
  witnesses.push_back({std::move(name), std::move(values)});
}

std::optional<double> CheckReport::number(std::string_view name) const {
  for (const auto& [k, v] : numbers)
    if (k == name) return v;
  return std::nullopt;
}

const Witness* CheckReport::witness(std::string_view name) const {
  for (const auto& w : witnesses)
    if (w.name == name) return &w;
  return nullptr;
}

}  // namespace comorisk
