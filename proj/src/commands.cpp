#include "comorisk/commands.hpp"

#include "comorisk/accept.hpp"
#include "comorisk/comono.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <functional>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace comorisk {

namespace {

using ojson = nlohmann::ordered_json;

constexpr double kDefaultCheckTol = 1e-9;

std::string_view method_name(Method m) { return m == Method::closed_form ? "closed_form" : "bisection"; }

Method method_from(const std::string& s) {
  if (s == "closed_form") return Method::closed_form;
  if (s == "bisection") return Method::bisection;
  throw std::invalid_argument("unknown method " + s);
}

ojson check_json(const CheckReport& c) {
  ojson j;
  j["check"] = c.check;
  j["verdict"] = std::string(to_string(c.verdict));
  j["trials"] = c.trials;
  j["seed"] = c.seed;
  j["heuristic"] = c.heuristic;
  ojson numbers = ojson::object();
  for (const auto& [name, value] : c.numbers) numbers[name] = value;
  j["numbers"] = numbers;
  ojson witnesses = ojson::array();
  for (const Witness& w : c.witnesses) witnesses.push_back({{"name", w.name}, {"values", w.values}});
  j["witnesses"] = witnesses;
  j["note"] = c.note;
  return j;
}

CheckReport check_from(const ojson& j) {
  CheckReport c;
  c.check = j.at("check").get<std::string>();
  c.verdict = verdict_from_string(j.at("verdict").get<std::string>());
  c.trials = j.at("trials").get<std::uint64_t>();
  c.seed = j.at("seed").get<std::uint64_t>();
  c.heuristic = j.at("heuristic").get<bool>();
  for (const auto& item : j.at("numbers").items()) c.numbers.emplace_back(item.key(), item.value().get<double>());
  for (const auto& w : j.at("witnesses"))
    c.witnesses.push_back({w.at("name").get<std::string>(), w.at("values").get<std::vector<double>>()});
  c.note = j.at("note").get<std::string>();
  return c;
}

std::string fmt(double v) { return ojson(v).dump(); }

std::vector<RandVar> declared_positions(const Scenario& s) {
  std::vector<RandVar> out;
  for (const auto& p : s.positions) out.push_back(p.second);
  return out;
}

std::vector<ComonoPair> declared_pairs(const Scenario& s) {
  std::vector<ComonoPair> out;
  for (std::size_t i = 0; i < s.positions.size(); ++i)
    for (std::size_t j = i + 1; j < s.positions.size(); ++j)
      if (is_comonotone(s.positions[i].second, s.positions[j].second))
        out.push_back({s.positions[i].second, s.positions[j].second, std::nullopt});
  return out;
}

double var_alpha(const AcceptanceSpec& a) {
  const auto* v = std::get_if<VarCriterion>(&a.kind());
  if (!v) throw std::invalid_argument("statement needs acceptance.kind = \"var\"");
  return v->level.alpha();
}

Report make_report(std::string command, const RunOptions& o) {
  Report r;
  r.command = std::move(command);
  r.version = std::string(tool_version());
  r.seed = o.seed;
  return r;
}

}  // namespace

std::string_view tool_version() { return COMORISK_VERSION; }

const std::vector<std::string>& statement_ids() {
  static const std::vector<std::string> ids = {
      "theorem-b",          "corollary-convex", "prop-essrhoA", "lemma-equality",        "var-necessary",
      "var-condition-b",    "proper",           "monotone",     "cone",                  "convex",
      "risk-invariant",     "s-additivity",     "numeraire-identity", "comonotone-additivity",
      "s-comonotone-additivity",
  };
  return ids;
}

int Report::exit_code() const {
  for (const CheckReport& c : verdicts)
    if (c.failed()) return 1;
  return 0;
}

RunOptions resolve_options(const Scenario& s, std::optional<std::uint64_t> seed, std::optional<std::uint64_t> trials,
                           std::optional<double> tol, std::optional<std::uint64_t> budget) {
  RunOptions o;
  o.seed = seed.value_or(s.options.seed.value_or(0));
  o.trials = trials.value_or(s.options.trials.value_or(1000));
  o.tol = tol ? tol : s.options.tol;
  o.budget = budget;
  return o;
}

Report cmd_eval(const Scenario& s, const std::vector<std::string>& names, const RunOptions& o) {
  const AcceptanceSpec& a = s.require_acceptance();
  const EligibleAsset asset = s.eligible();
  Report r = make_report("eval", o);
  std::vector<std::string> wanted = names;
  if (wanted.empty())
    for (const auto& p : s.positions) wanted.push_back(p.first);
  for (const std::string& name : wanted) {
    const RandVar x = s.position(name);
    r.quotes.push_back({name, rho(a, asset, x, o.tol), accepts(a, x)});
  }
  return r;
}

Report cmd_check(const Scenario& s, std::string_view statement, const RunOptions& o) {
  Report r = make_report("check", o);
  const EligibleAsset asset = s.eligible();
  const double tol = o.tol.value_or(kDefaultCheckTol);
  const std::string id(statement);

  CheckReport v;
  if (id == "var-condition-b") {
    const double alpha = var_alpha(s.require_acceptance());
    v = s.space->size() <= 20 ? check_var_condition_b(s.space, alpha, 20, o.trials, o.seed)
                              : search_var_condition_b(s.space, alpha, o.trials, o.seed);
  } else {
    const AcceptanceSpec& a = s.require_acceptance();
    if (id == "theorem-b") {
      v = check_theorem_condition_b(a, asset, o.trials, o.seed);
    } else if (id == "corollary-convex") {
      v = check_corollary_convex(a, asset);
    } else if (id == "prop-essrhoA") {
      v = check_prop_essrhoA(a, asset, o.trials, o.seed, tol, declared_positions(s));
    } else if (id == "lemma-equality") {
      if (!s.alt_asset) throw ScenarioError("alt_asset", "missing (required by lemma-equality)");
      v = check_lemma_equality(a, asset, *s.alt_asset, o.trials, o.seed, tol);
    } else if (id == "var-necessary") {
      v = check_var_necessary_condition(a, asset);
    } else if (id == "proper") {
      v = check_proper(a, s.space);
    } else if (id == "monotone") {
      v = check_monotone(a, s.space, o.trials, o.seed);
    } else if (id == "cone") {
      v = check_cone(a, s.space, o.trials, o.seed);
    } else if (id == "convex") {
      v = check_convex(a, s.space, o.trials, o.seed);
    } else if (id == "risk-invariant") {
      v = find_risk_invariant(a, s.space, o.trials, o.seed, declared_positions(s));
    } else if (id == "s-additivity") {
      v = s_additivity_check(a, asset, o.trials, o.seed, o.tol.value_or(0.0));
    } else if (id == "numeraire-identity") {
      v = numeraire_identity_check(a, asset, o.trials, o.seed, o.tol.value_or(0.0));
    } else if (id == "comonotone-additivity") {
      const Functional f = [&](const RandVar& x) { return rho(a, asset, x, tol / 10.0).value; };
      v = additivity_on_comonotone(f, s.space, o.trials, o.seed, tol, declared_pairs(s));
    } else if (id == "s-comonotone-additivity") {
      v = additivity_on_s_comonotone(a, asset, o.trials, o.seed, tol);
    } else {
      throw std::invalid_argument("unknown statement \"" + id + "\"");
    }
  }
  r.verdicts.push_back(std::move(v));
  return r;
}

Report cmd_search(const Scenario& s, std::string_view statement, const RunOptions& o) {
  Report r = make_report("search", o);
  const EligibleAsset asset = s.eligible();
  const std::uint64_t budget = o.budget.value_or(o.trials);
  if (statement.empty() || statement == "additivity") {
    r.verdicts.push_back(find_additivity_violation(s.require_acceptance(), asset, budget, o.seed,
                                                   o.tol.value_or(kDefaultCheckTol), declared_pairs(s)));
  } else if (statement == "numeraire") {
    r.verdicts.push_back(comono_preservation_under_numeraire(asset, budget, o.seed));
  } else {
    throw std::invalid_argument("unknown search \"" + std::string(statement) + "\" (additivity, numeraire)");
  }
  return r;
}

Report cmd_replicate(const std::vector<PaperFixture>& fixtures, const RunOptions& o) {
  Report r = make_report("replicate", o);
  r.verdicts = replicate_paper(fixtures);
  return r;
}

std::vector<PaperFixture> apply_fixture_overrides(std::vector<PaperFixture> fixtures, std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text.begin(), text.end());
  } catch (const nlohmann::json::parse_error& e) {
    throw ScenarioError("line " + std::to_string(1 + std::count(text.begin(),
                                                                text.begin() + static_cast<long>(std::min(
                                                                                   e.byte, text.size())),
                                                                '\n')),
                        "malformed JSON");
  }
  if (!doc.is_object() || !doc.contains("fixtures") || !doc["fixtures"].is_array())
    throw ScenarioError("fixtures", "expected an array");
  for (std::size_t i = 0; i < doc["fixtures"].size(); ++i) {
    const auto& f = doc["fixtures"][i];
    const std::string path = "fixtures[" + std::to_string(i) + "]";
    if (!f.is_object() || !f.contains("id") || !f["id"].is_string()) throw ScenarioError(path + ".id", "missing");
    if (!f.contains("expected") || !f["expected"].is_object())
      throw ScenarioError(path + ".expected", "expected an object");
    const std::string id = f["id"].get<std::string>();
    auto it = std::find_if(fixtures.begin(), fixtures.end(), [&](const PaperFixture& p) { return p.id == id; });
    if (it == fixtures.end()) {
      fixtures.push_back({id, {}});
      it = std::prev(fixtures.end());
    }
    for (const auto& item : f["expected"].items()) {
      if (!item.value().is_number()) throw ScenarioError(path + ".expected." + item.key(), "expected a number");
      const double value = item.value().get<double>();
      auto e = std::find_if(it->expected.begin(), it->expected.end(),
                            [&](const auto& kv) { return kv.first == item.key(); });
      if (e == it->expected.end())
        it->expected.emplace_back(item.key(), value);
      else
        e->second = value;
    }
  }
  return fixtures;
}

std::string to_json(const Report& r) {
  ojson j;
  j["tool"] = "comorisk";
  j["version"] = r.version;
  j["command"] = r.command;
  j["args"] = r.args;
  j["seed"] = r.seed;
  ojson quotes = ojson::array();
  for (const QuoteItem& q : r.quotes)
    quotes.push_back({{"position", q.position},
                      {"value", q.quote.value},
                      {"method", std::string(method_name(q.quote.method))},
                      {"iterations", q.quote.iterations},
                      {"bracket_width", q.quote.bracket_width},
                      {"accepted", q.accepted}});
  j["quotes"] = quotes;
  ojson verdicts = ojson::array();
  for (const CheckReport& c : r.verdicts) verdicts.push_back(check_json(c));
  j["verdicts"] = verdicts;
  j["exit_code"] = r.exit_code();
  return j.dump(2) + "\n";
}

Report report_from_json(std::string_view text) {
  const ojson j = ojson::parse(text.begin(), text.end());
  Report r;
  r.version = j.at("version").get<std::string>();
  r.command = j.at("command").get<std::string>();
  r.args = j.at("args").get<std::vector<std::string>>();
  r.seed = j.at("seed").get<std::uint64_t>();
  for (const auto& q : j.at("quotes")) {
    QuoteItem item;
    item.position = q.at("position").get<std::string>();
    item.quote.value = q.at("value").get<double>();
    item.quote.method = method_from(q.at("method").get<std::string>());
    item.quote.iterations = q.at("iterations").get<std::size_t>();
    item.quote.bracket_width = q.at("bracket_width").get<double>();
    item.accepted = q.at("accepted").get<bool>();
    r.quotes.push_back(std::move(item));
  }
  for (const auto& c : j.at("verdicts")) r.verdicts.push_back(check_from(c));
  return r;
}

std::string to_text(const Report& r) {
  std::ostringstream out;
  out << "comorisk " << r.version << " " << r.command << " seed=" << r.seed << "\n";
  for (const QuoteItem& q : r.quotes)
    out << q.position << ": " << fmt(q.quote.value) << " (" << method_name(q.quote.method)
        << (q.quote.method == Method::bisection ? ", " + std::to_string(q.quote.iterations) + " iterations" : "")
        << ")" << (q.accepted ? " accepted" : "") << "\n";
  for (const CheckReport& c : r.verdicts) {
    out << c.check << ": " << to_string(c.verdict) << (c.heuristic ? " (heuristic)" : "") << ", " << c.trials
        << " trials";
    if (!c.note.empty()) out << ", " << c.note;
    out << "\n";
    for (const auto& [name, value] : c.numbers) out << "  " << name << " = " << fmt(value) << "\n";
    for (const Witness& w : c.witnesses) out << "  " << w.name << " = " << ojson(w.values).dump() << "\n";
  }
  return out.str();
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Risk measures with a general eligible asset: evaluation, checks and searches", "comorisk"};
  app.set_version_flag("--version", std::string(tool_version()));
  app.require_subcommand(1);

  std::string scenario_path;
  std::vector<std::string> positions;
  std::string statement;
  std::optional<std::uint64_t> seed;
  std::optional<std::uint64_t> trials;
  std::optional<double> tol;
  std::optional<std::uint64_t> budget;
  std::string out_path;
  std::string format = "json";

  const auto common = [&](CLI::App* sub) {
    sub->add_option("--seed", seed, "RNG seed");
    sub->add_option("--trials", trials, "Number of sampled cases");
    sub->add_option("--tol", tol, "Numerical tolerance")->check(CLI::PositiveNumber);
    sub->add_option("--out", out_path, "Write the report here instead of stdout");
    sub->add_option("--format", format, "Report format")->check(CLI::IsMember({"json", "text"}));
  };

  CLI::App* eval = app.add_subcommand("eval", "Evaluate rho_{A,S} for named positions");
  eval->add_option("--scenario", scenario_path, "Scenario JSON file")->required();
  eval->add_option("--position", positions, "Position name; X+Y sums positions (repeatable)");
  common(eval);

  CLI::App* check = app.add_subcommand("check", "Check a statement on a scenario");
  check->add_option("--scenario", scenario_path, "Scenario JSON file")->required();
  check->add_option("--statement", statement, "Statement id")->required();
  common(check);

  CLI::App* search = app.add_subcommand("search", "Search for a witness (additivity, numeraire)");
  search->add_option("--scenario", scenario_path, "Scenario JSON file")->required();
  search->add_option("--statement", statement, "additivity (default) or numeraire");
  search->add_option("--budget", budget, "Number of candidates");
  common(search);

  CLI::App* replicate = app.add_subcommand("replicate", "Recompute the reference fixtures");
  replicate->add_option("--scenario", scenario_path, "Optional JSON overriding expected values");
  common(replicate);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    Report report;
    if (replicate->parsed()) {
      std::vector<PaperFixture> fixtures = default_paper_fixtures();
      if (!scenario_path.empty()) fixtures = apply_fixture_overrides(fixtures, read_text_file(scenario_path));
      RunOptions o;
      o.seed = seed.value_or(0);
      o.trials = trials.value_or(1000);
      report = cmd_replicate(fixtures, o);
    } else {
      const Scenario s = load_scenario(scenario_path);
      const RunOptions o = resolve_options(s, seed, trials, tol, budget);
      if (eval->parsed())
        report = cmd_eval(s, positions, o);
      else if (check->parsed())
        report = cmd_check(s, statement, o);
      else
        report = cmd_search(s, statement, o);
    }
    report.args = args;
    const std::string text = format == "text" ? to_text(report) : to_json(report);
    if (out_path.empty()) {
      out << text;
    } else {
      std::ofstream file(out_path, std::ios::binary);
      if (!file) throw ScenarioError(out_path, "cannot write file");
      file << text;
    }
    return report.exit_code();
  } catch (const ScenarioError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::length_error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace comorisk
