#include "comorisk/scenario.hpp"

#include <json.hpp>

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace comorisk {

namespace {

using json = nlohmann::json;

std::string index_path(const std::string& path, std::size_t i) { return path + "[" + std::to_string(i) + "]"; }

const json& require(const json& obj, const std::string& path, const char* key) {
  const auto it = obj.find(key);
  if (it == obj.end()) throw ScenarioError(path.empty() ? key : path + "." + key, "missing");
  return *it;
}

void require_object(const json& j, const std::string& path) {
  if (!j.is_object()) throw ScenarioError(path, "expected an object");
}

void reject_unknown(const json& obj, const std::string& path, std::initializer_list<const char*> known) {
  const std::set<std::string> allowed(known.begin(), known.end());
  for (const auto& item : obj.items())
    if (!allowed.count(item.key()))
      throw ScenarioError(path.empty() ? item.key() : path + "." + item.key(), "unknown key");
}

double number(const json& j, const std::string& path) {
  if (!j.is_number()) throw ScenarioError(path, "expected a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) throw ScenarioError(path, "expected a finite number");
  return v;
}

std::uint64_t count(const json& j, const std::string& path) {
  if (!j.is_number_unsigned()) throw ScenarioError(path, "expected a nonnegative integer");
  return j.get<std::uint64_t>();
}

std::vector<double> numbers(const json& j, const std::string& path) {
  if (!j.is_array()) throw ScenarioError(path, "expected an array of numbers");
  std::vector<double> out;
  out.reserve(j.size());
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(number(j[i], index_path(path, i)));
  return out;
}

RandVar vector_on(const SpacePtr& space, const json& j, const std::string& path) {
  const std::vector<double> v = numbers(j, path);
  if (static_cast<Index>(v.size()) != space->size())
    throw ScenarioError(path, "expected " + std::to_string(space->size()) + " values, got " +
                                  std::to_string(v.size()));
  return RandVar(space, Values(Eigen::Map<const Values>(v.data(), static_cast<Index>(v.size()))));
}

SpacePtr parse_space(const json& j, std::vector<std::string>& labels) {
  require_object(j, "space");
  reject_unknown(j, "space", {"probs", "labels"});
  const std::vector<double> probs = numbers(require(j, "space", "probs"), "space.probs");
  if (probs.empty()) throw ScenarioError("space.probs", "at least one atom is required");
  for (std::size_t i = 0; i < probs.size(); ++i)
    if (!(probs[i] > 0.0)) throw ScenarioError(index_path("space.probs", i), "probabilities must be positive");
  if (const auto it = j.find("labels"); it != j.end()) {
    if (!it->is_array() || it->size() != probs.size())
      throw ScenarioError("space.labels", "expected " + std::to_string(probs.size()) + " strings");
    for (std::size_t i = 0; i < it->size(); ++i) {
      if (!(*it)[i].is_string()) throw ScenarioError(index_path("space.labels", i), "expected a string");
      labels.push_back((*it)[i].get<std::string>());
    }
  }
  try {
    return FiniteSpace::make(probs);
  } catch (const std::exception& e) {
    throw ScenarioError("space.probs", e.what());
  }
}

EligibleAsset parse_asset(const SpacePtr& space, const json& j, const std::string& path) {
  require_object(j, path);
  reject_unknown(j, path, {"price", "payoff"});
  const double price = number(require(j, path, "price"), path + ".price");
  if (!(price > 0.0)) throw ScenarioError(path + ".price", "price must be positive");
  RandVar payoff = vector_on(space, require(j, path, "payoff"), path + ".payoff");
  for (Index i = 0; i < payoff.size(); ++i)
    if (!(payoff[i] > 0.0))
      throw ScenarioError(index_path(path + ".payoff", static_cast<std::size_t>(i)), "payoff must be positive");
  return EligibleAsset(price, std::move(payoff));
}

double alpha_field(const json& j, const std::string& path) {
  const double alpha = number(j, path);
  if (!(alpha > 0.0 && alpha < 1.0)) throw ScenarioError(path, "alpha must lie in (0, 1)");
  return alpha;
}

AcceptanceSpec parse_acceptance(const json& j) {
  require_object(j, "acceptance");
  const json& kind_j = require(j, "acceptance", "kind");
  if (!kind_j.is_string()) throw ScenarioError("acceptance.kind", "expected a string");
  const std::string kind = kind_j.get<std::string>();
  if (kind == "var" || kind == "es") {
    reject_unknown(j, "acceptance", {"kind", "alpha"});
    const double alpha = alpha_field(require(j, "acceptance", "alpha"), "acceptance.alpha");
    return kind == "var" ? AcceptanceSpec::var(alpha) : AcceptanceSpec::es(alpha);
  }
  if (kind == "expectation") {
    reject_unknown(j, "acceptance", {"kind"});
    return AcceptanceSpec::expectation();
  }
  if (kind == "distortion") {
    reject_unknown(j, "acceptance", {"kind", "weights"});
    const json& w = require(j, "acceptance", "weights");
    if (!w.is_array() || w.empty()) throw ScenarioError("acceptance.weights", "expected a nonempty array");
    std::vector<DistortionPoint> points;
    for (std::size_t i = 0; i < w.size(); ++i) {
      const std::string p = index_path("acceptance.weights", i);
      require_object(w[i], p);
      reject_unknown(w[i], p, {"alpha", "w"});
      const double alpha = number(require(w[i], p, "alpha"), p + ".alpha");
      if (!(alpha >= 0.0 && alpha <= 1.0)) throw ScenarioError(p + ".alpha", "alpha must lie in [0, 1]");
      const double weight = number(require(w[i], p, "w"), p + ".w");
      if (!(weight > 0.0)) throw ScenarioError(p + ".w", "weights must be positive");
      points.push_back({alpha, weight});
    }
    try {
      return AcceptanceSpec::distortion(DistortionWeights(std::move(points)));
    } catch (const std::exception& e) {
      throw ScenarioError("acceptance.weights", e.what());
    }
  }
  throw ScenarioError("acceptance.kind", "unknown kind \"" + kind + "\" (var, es, distortion, expectation)");
}

ScenarioOptions parse_options(const json& j) {
  require_object(j, "options");
  reject_unknown(j, "options", {"tol", "seed", "trials"});
  ScenarioOptions o;
  if (const auto it = j.find("tol"); it != j.end()) {
    o.tol = number(*it, "options.tol");
    if (!(*o.tol > 0.0)) throw ScenarioError("options.tol", "tolerance must be positive");
  }
  if (const auto it = j.find("seed"); it != j.end()) o.seed = count(*it, "options.seed");
  if (const auto it = j.find("trials"); it != j.end()) o.trials = count(*it, "options.trials");
  return o;
}

std::size_t line_of(std::string_view text, std::size_t byte) {
  byte = std::min(byte, text.size());
  return 1 + static_cast<std::size_t>(std::count(text.begin(), text.begin() + static_cast<long>(byte), '\n'));
}

}  // namespace

EligibleAsset Scenario::eligible() const { return asset ? *asset : EligibleAsset::cash(space); }

RandVar Scenario::position(std::string_view name) const {
  RandVar total = RandVar::zero(space);
  std::size_t start = 0;
  while (start <= name.size()) {
    const std::size_t plus = name.find('+', start);
    const std::string_view part = name.substr(start, plus == std::string_view::npos ? name.npos : plus - start);
    const auto it = std::find_if(positions.begin(), positions.end(), [&](const auto& p) { return p.first == part; });
    if (it == positions.end()) throw ScenarioError("positions." + std::string(part), "no such position");
    total += it->second;
    if (plus == std::string_view::npos) break;
    start = plus + 1;
  }
  return total;
}

const AcceptanceSpec& Scenario::require_acceptance() const {
  if (!acceptance) throw ScenarioError("acceptance", "missing");
  return *acceptance;
}

Scenario parse_scenario(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw ScenarioError("line " + std::to_string(line_of(text, e.byte)), "malformed JSON");
  }
  require_object(doc, "scenario");
  reject_unknown(doc, "", {"space", "positions", "asset", "alt_asset", "acceptance", "options"});

  Scenario s;
  s.space = parse_space(require(doc, "", "space"), s.labels);
  if (const auto it = doc.find("positions"); it != doc.end()) {
    require_object(*it, "positions");
    for (const auto& item : it->items()) {
      if (item.key().empty() || item.key().find('+') != std::string::npos)
        throw ScenarioError("positions." + item.key(), "names must be nonempty and must not contain '+'");
      s.positions.emplace_back(item.key(), vector_on(s.space, item.value(), "positions." + item.key()));
    }
  }
  if (const auto it = doc.find("asset"); it != doc.end()) s.asset = parse_asset(s.space, *it, "asset");
  if (const auto it = doc.find("alt_asset"); it != doc.end()) s.alt_asset = parse_asset(s.space, *it, "alt_asset");
  if (const auto it = doc.find("acceptance"); it != doc.end()) s.acceptance = parse_acceptance(*it);
  if (const auto it = doc.find("options"); it != doc.end()) s.options = parse_options(*it);
  return s;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ScenarioError(path, "cannot open file");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

Scenario load_scenario(const std::string& path) { return parse_scenario(read_text_file(path)); }

}  // namespace comorisk
