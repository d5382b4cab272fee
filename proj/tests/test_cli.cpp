#include "comorisk/commands.hpp"

#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace comorisk;
namespace fs = std::filesystem;

namespace {

const std::string kFixtures = COMORISK_FIXTURES;

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome invoke(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string fixture(const std::string& name) { return kFixtures + "/" + name; }

}  // namespace

TEST_CASE("eval reports the reference values") {
  const Outcome o = invoke({"eval", "--scenario", fixture("superadditivity.json"), "--position", "X", "--position",
                            "Y", "--position", "X+Y"});
  REQUIRE(o.code == 0);
  const Report r = report_from_json(o.out);
  REQUIRE(r.quotes.size() == 3);
  CHECK(r.quotes[0].quote.value == 1.5);
  CHECK(r.quotes[1].quote.value == 4.0);
  CHECK(r.quotes[2].quote.value == 6.0);
  CHECK(r.quotes[2].position == "X+Y");
  CHECK(r.seed == 1);
  CHECK(r.version == tool_version());
}

TEST_CASE("reports round-trip through JSON") {
  for (const std::vector<std::string>& args :
       {std::vector<std::string>{"eval", "--scenario", fixture("es_two_atom.json")},
        {"check", "--scenario", fixture("var_risky_asset.json"), "--statement", "theorem-b"},
        {"search", "--scenario", fixture("superadditivity.json"), "--budget", "200"},
        {"replicate"}}) {
    const Outcome o = invoke(args);
    const Report r = report_from_json(o.out);
    CHECK(r.exit_code() == o.code);
    CHECK(to_json(r) == o.out);
    CHECK(r.args == args);
  }
}

TEST_CASE("exit codes") {
  CHECK(invoke({"replicate"}).code == 0);
  CHECK(invoke({"replicate", "--scenario", fixture("tampered_replication.json")}).code == 1);
  CHECK(invoke({"check", "--scenario", fixture("var_risky_asset.json"), "--statement", "theorem-b"}).code == 1);
  CHECK(invoke({"check", "--scenario", fixture("es_risk_free.json"), "--statement", "corollary-convex"}).code == 0);
  CHECK(invoke({"check", "--scenario", fixture("superadditivity.json"), "--statement", "no-such"}).code == 2);
  CHECK(invoke({"check", "--scenario", fixture("superadditivity.json"), "--statement", "corollary-convex"}).code ==
        2);
  CHECK(invoke({}).code == 2);
  CHECK(invoke({"eval"}).code == 2);
  CHECK(invoke({"eval", "--scenario", fixture("missing.json")}).code == 2);
  CHECK(invoke({"eval", "--scenario", fixture("superadditivity.json"), "--position", "Z"}).code == 2);
  CHECK(invoke({"eval", "--scenario", fixture("superadditivity.json"), "--format", "xml"}).code == 2);
  CHECK(invoke({"--help"}).code == 0);
}

TEST_CASE("tampered replication names the fixture") {
  const Outcome o = invoke({"replicate", "--scenario", fixture("tampered_replication.json")});
  const Report r = report_from_json(o.out);
  bool named = false;
  for (const CheckReport& v : r.verdicts)
    if (v.failed() && v.note.find("svar-superadditivity") != std::string::npos) named = true;
  CHECK(named);
}

TEST_CASE("same seed gives byte-identical output") {
  for (const std::vector<std::string>& args :
       {std::vector<std::string>{"search", "--scenario", fixture("es_two_atom.json"), "--seed", "7"},
        {"search", "--scenario", fixture("distortion_mixed.json"), "--statement", "numeraire"},
        {"check", "--scenario", fixture("lemma_equality.json"), "--statement", "lemma-equality"},
        {"check", "--scenario", fixture("es_two_atom.json"), "--statement", "comonotone-additivity"}}) {
    CHECK(invoke(args).out == invoke(args).out);
  }
  const Outcome a = invoke({"search", "--scenario", fixture("es_two_atom.json"), "--seed", "7"});
  const Outcome b = invoke({"search", "--scenario", fixture("es_two_atom.json"), "--seed", "8"});
  CHECK(report_from_json(a.out).seed == 7);
  CHECK(report_from_json(b.out).seed == 8);
}

TEST_CASE("malformed scenarios exit 2 and name the field") {
  const std::vector<std::pair<std::string, std::string>> expected = {
      {"alpha_missing.json", "acceptance.alpha"},
      {"alpha_out_of_range.json", "acceptance.alpha"},
      {"missing_space.json", "space"},
      {"negative_prob.json", "space.probs[1]"},
      {"not_an_object.json", "scenario"},
      {"payoff_length.json", "asset.payoff"},
      {"payoff_zero.json", "asset.payoff[1]"},
      {"position_length.json", "positions.X"},
      {"position_not_number.json", "positions.X[1]"},
      {"price_negative.json", "asset.price"},
      {"probs_not_normalized.json", "space.probs"},
      {"tol_zero.json", "options.tol"},
      {"truncated.json", "line 3"},
      {"unknown_key.json", "option"},
      {"unknown_kind.json", "acceptance.kind"},
      {"weights_negative.json", "acceptance.weights[0].w"},
      {"weights_not_normalized.json", "acceptance.weights"},
  };
  std::size_t seen = 0;
  for (const auto& entry : fs::directory_iterator(fixture("malformed"))) {
    ++seen;
    const Outcome o = invoke({"eval", "--scenario", entry.path().string()});
    CHECK_MESSAGE(o.code == 2, entry.path().filename());
    CHECK(o.out.empty());
  }
  CHECK(seen == expected.size());
  for (const auto& [name, field] : expected) {
    const Outcome o = invoke({"eval", "--scenario", fixture("malformed/" + name)});
    CHECK_MESSAGE(o.err.find(field + ":") != std::string::npos, name << " -> " << o.err);
  }
}

TEST_CASE("witnesses in reports re-verify") {
  const Outcome o = invoke({"check", "--scenario", fixture("var_risky_asset.json"), "--statement", "theorem-b"});
  const Report r = report_from_json(o.out);
  REQUIRE(r.verdicts.size() == 1);
  const Scenario s = load_scenario(fixture("var_risky_asset.json"));
  const AcceptanceSpec& a = s.require_acceptance();
  const RandVar x(s.space, r.verdicts[0].witness("X")->values);
  CHECK(accepts(a, x));
  const Witness* moved = r.verdicts[0].witness("X+W") ? r.verdicts[0].witness("X+W") : r.verdicts[0].witness("X-W");
  REQUIRE(moved != nullptr);
  CHECK_FALSE(accepts(a, RandVar(s.space, moved->values)));

  const Outcome sr = invoke({"search", "--scenario", fixture("superadditivity.json")});
  const Report found = report_from_json(sr.out);
  const CheckReport& v = found.verdicts.at(0);
  const Scenario sup = load_scenario(fixture("superadditivity.json"));
  const RandVar wx(sup.space, v.witness("X")->values);
  const RandVar wy(sup.space, v.witness("Y")->values);
  CHECK(is_comonotone(wx, wy));
  const EligibleAsset asset = sup.eligible();
  const double gap = rho(sup.require_acceptance(), asset, wx + wy).value -
                     rho(sup.require_acceptance(), asset, wx).value - rho(sup.require_acceptance(), asset, wy).value;
  CHECK(gap >= 0.5);
  CHECK(gap == *v.number("gap"));
}

TEST_CASE("--out writes the report to a file") {
  const fs::path path = fs::temp_directory_path() / "comorisk_cli_out.json";
  fs::remove(path);
  const Outcome o = invoke({"eval", "--scenario", fixture("var_cash.json"), "--out", path.string()});
  CHECK(o.code == 0);
  CHECK(o.out.empty());
  std::ifstream in(path);
  std::stringstream buf;
  buf << in.rdbuf();
  const Report r = report_from_json(buf.str());
  CHECK(r.quotes.at(0).quote.value == 2.0);
  fs::remove(path);
}

TEST_CASE("text format") {
  const Outcome o = invoke({"eval", "--scenario", fixture("superadditivity.json"), "--format", "text"});
  CHECK(o.code == 0);
  CHECK(o.out.find("X: 1.5") != std::string::npos);
  CHECK(o.out.find("Y: 4.0") != std::string::npos);
  const Outcome c = invoke({"check", "--scenario", fixture("var_risky_asset.json"), "--statement", "theorem-b", "--format",
                            "text"});
  CHECK(c.code == 1);
  CHECK(c.out.find("fail") != std::string::npos);
}

TEST_CASE("options resolve flags over scenario over defaults") {
  const Scenario s = load_scenario(fixture("superadditivity.json"));
  const RunOptions d = resolve_options(s, std::nullopt, std::nullopt, std::nullopt, std::nullopt);
  CHECK(d.seed == 1);
  CHECK(d.trials == 1000);
  CHECK_FALSE(d.tol.has_value());
  const RunOptions f = resolve_options(s, 9, 20, 1e-6, 5);
  CHECK(f.seed == 9);
  CHECK(f.trials == 20);
  CHECK(f.tol == 1e-6);
  CHECK(f.budget == 5);
}

TEST_CASE("every statement id runs on a suitable scenario") {
  const std::vector<std::pair<std::string, std::string>> pairs = {
      {"theorem-b", "var_risky_asset.json"},
      {"corollary-convex", "es_two_atom.json"},
      {"prop-essrhoA", "superadditivity.json"},
      {"lemma-equality", "lemma_equality.json"},
      {"var-necessary", "var_risky_asset.json"},
      {"var-condition-b", "var_event_two_atoms.json"},
      {"proper", "distortion_mixed.json"},
      {"monotone", "distortion_mixed.json"},
      {"cone", "distortion_mixed.json"},
      {"convex", "distortion_mixed.json"},
      {"risk-invariant", "var_cash.json"},
      {"s-additivity", "es_two_atom.json"},
      {"numeraire-identity", "es_two_atom.json"},
      {"comonotone-additivity", "es_risk_free.json"},
      {"s-comonotone-additivity", "es_risk_free.json"},
  };
  CHECK(pairs.size() == statement_ids().size());
  for (const auto& [id, file] : pairs) {
    const Outcome o = invoke({"check", "--scenario", fixture(file), "--statement", id, "--trials", "200"});
    CHECK_MESSAGE(o.code != 2, id << ": " << o.err);
  }
}
