#include <cstdlib>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "json.hpp"
#include "rcg/cli.hpp"
#include "rcg/decomp.hpp"
#include "rcg/parse.hpp"

using namespace rcg;
using namespace rcg::cli;

namespace {

using Json = nlohmann::ordered_json;

const std::string kGoldenDir = RCG_GOLDEN_DIR;

struct GoldenCase {
  std::string name, command;
  Inputs inputs;
  FieldKind field = FieldKind::Tower;
  Rational trunc{8};
  std::size_t samples = 0;
  std::uint64_t seed = 0;
};

std::vector<GoldenCase> golden_cases() {
  return {
      {"iwasawa_identity", "iwasawa", {{"g", "1, 0, 0; 0, 1, 0; 0, 0, 1"}}},
      {"cartan_unipotent", "cartan", {{"g", "1, 1; 0, 1"}}},
      {"bruhat_sl3", "bruhat", {{"g", "1, 2, 0\n0, 1, 0\n3, 0, 1\n"}}},
      {"bch_heisenberg", "bch", {{"x", "0, 1, 0; 0, 0, 0; 0, 0, 0"}, {"y", "0, 0, 0; 0, 0, 1; 0, 0, 0"}}},
      {"jm_regular_sl3", "jm-triple", {{"x", "0, 1, 0; 0, 0, 1; 0, 0, 0"}}},
      {"kostant_sl3", "kostant-check", {{"a", "2, 0, 0; 0, 1, 0; 0, 0, 1/2"}, {"b", "4, 0, 0; 0, 2, 0; 0, 0, 1/8"}},
       FieldKind::Tower, Rational(8), 50, 3},
      {"roots_a2", "roots", {{"type", "A2"}}},
      {"iwasawa_puiseux", "iwasawa", {{"g", "X, 1; 0, X^(-1)"}}, FieldKind::Puiseux},
      {"cartan_puiseux", "cartan", {{"g", "1, X; 0, 1"}}, FieldKind::Puiseux, Rational(4)},
  };
}

RunResult run_case(const GoldenCase& c, Format format) {
  Config config;
  config.field = c.field;
  config.trunc = c.trunc;
  config.format = format;
  config.samples = c.samples;
  config.seed = c.seed;
  return run(c.command, config, c.inputs);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<std::string> split_entries(const std::string& s) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t i = s.find(", ", start);
    out.push_back(s.substr(start, i == std::string::npos ? std::string::npos : i - start));
    if (i == std::string::npos) return out;
    start = i + 2;
  }
}

/// Leaf path -> entries, read from the JSON report.
void json_leaves(const Json& j, const std::string& prefix, std::map<std::string, std::vector<std::string>>& out) {
  const auto text = [](const Json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); };
  for (const auto& [key, value] : j.items()) {
    const std::string path = prefix + key;
    if (value.is_object()) {
      json_leaves(value, path + ".", out);
    } else if (value.is_array()) {
      for (std::size_t r = 0; r < value.size(); ++r) {
        if (value[r].is_array())
          for (const auto& e : value[r]) out[path + "[" + std::to_string(r) + "]"].push_back(text(e));
        else
          out[path].push_back(text(value[r]));
      }
    } else {
      out[path].push_back(text(value));
    }
  }
}

/// Leaf path -> entries, read from the text report by indentation alone.
std::map<std::string, std::vector<std::string>> text_leaves(const std::string& report) {
  std::map<std::string, std::vector<std::string>> out;
  std::istringstream in(report);
  std::string line;
  std::vector<std::pair<std::size_t, std::string>> open;  // indent, key of blocks
  std::map<std::string, std::size_t> rows;
  while (std::getline(in, line)) {
    const std::size_t indent = line.find_first_not_of(' ');
    const std::string body = line.substr(indent);
    while (!open.empty() && open.back().first >= indent) open.pop_back();
    std::string prefix;
    for (const auto& [_, k] : open) prefix += k + ".";
    const std::size_t colon = body.find(':');
    const bool is_key = colon != std::string::npos && body.find(", ") > colon &&
                        (colon + 1 == body.size() || body[colon + 1] == ' ');
    if (!is_key) {
      // a matrix row under the innermost open block
      std::string path = prefix.substr(0, prefix.size() - 1);
      path += "[" + std::to_string(rows[path]++) + "]";
      out[path] = split_entries(body);
    } else if (colon + 1 == body.size()) {
      open.emplace_back(indent, body.substr(0, colon));
    } else {
      out[prefix + body.substr(0, colon)] = split_entries(body.substr(colon + 2));
    }
  }
  return out;
}

TowerMatrix tower_block(const Json& rows) {
  std::string text;
  for (const auto& r : rows) {
    for (std::size_t j = 0; j < r.size(); ++j) text += (j ? ", " : "") + r[j].get<std::string>();
    text += "\n";
  }
  return parse_tower_matrix(text);
}

PuiseuxMatrix puiseux_block(const Json& rows) {
  std::string text;
  for (const auto& r : rows) {
    for (std::size_t j = 0; j < r.size(); ++j) text += (j ? ", " : "") + r[j].get<std::string>();
    text += "\n";
  }
  return parse_puiseux_matrix(text);
}

}  // namespace

TEST_CASE("golden reports, text and JSON") {
  const bool update = std::getenv("RCG_UPDATE_GOLDEN") != nullptr;
  for (const auto& c : golden_cases()) {
    CAPTURE(c.name);
    const RunResult text = run_case(c, Format::Text);
    const RunResult json = run_case(c, Format::Json);
    REQUIRE(text.exit_code == 0);
    REQUIRE(json.exit_code == 0);
    CHECK(text.err.empty());
    const std::string text_path = kGoldenDir + "/" + c.name + ".txt";
    const std::string json_path = kGoldenDir + "/" + c.name + ".json";
    if (update) {
      std::ofstream(text_path) << text.out;
      std::ofstream(json_path) << json.out;
    }
    CHECK(text.out == read_file(text_path));
    CHECK(json.out == read_file(json_path));
    std::map<std::string, std::vector<std::string>> from_json;
    json_leaves(Json::parse(json.out), "", from_json);
    CHECK(text_leaves(text.out) == from_json);
  }
}

TEST_CASE("printed decompositions re-parse and re-verify") {
  Config config;
  config.format = Format::Json;
  {
    const Json r = Json::parse(run("cartan", config, {{"g", "1, 1; 0, 1"}}).out);
    const TowerMatrix k1 = tower_block(r["k1"]), a = tower_block(r["a"]), k2 = tower_block(r["k2"]);
    CHECK(k1 * a * k2 == parse_tower_matrix("1, 1; 0, 1"));
    CHECK(a(0, 0) == parse_tower("(1 + sqrt(5))/2"));
    CHECK(member_K(k1));
    CHECK(member_K(k2));
  }
  {
    const std::string g = "1, 2, 0; 0, 1, 0; 3, 0, 1";
    const Json r = Json::parse(run("bruhat", config, {{"g", g}}).out);
    const TowerMatrix b1 = tower_block(r["b1"]), w = tower_block(r["w"]), b2 = tower_block(r["b2"]);
    CHECK(b1 * w * b2 == parse_tower_matrix(g));
    CHECK(member_B(b1));
    CHECK(member_B(b2));
    CHECK(member_N(w));
  }
  {
    const std::string g = "2, 1, 1; 1, 1, 0; 1, 1, 1";
    const Json r = Json::parse(run("iwasawa", config, {{"g", g}}).out);
    const TowerMatrix k = tower_block(r["k"]), a = tower_block(r["a"]), u = tower_block(r["u"]);
    CHECK(k * a * u == parse_tower_matrix(g));
    CHECK(member_K(k));
    CHECK(member_A(a));
    CHECK(member_U(u));
  }
  {
    config.field = FieldKind::Puiseux;
    config.trunc = 5;
    const PuiseuxMatrix g = parse_puiseux_matrix("1, X; 0, 1");
    const Json r = Json::parse(run("cartan", config, {{"g", "1, X; 0, 1"}}).out);
    const KAKResult<PuiseuxScalar> kak{puiseux_block(r["k1"]), puiseux_block(r["a"]), puiseux_block(r["k2"]),
                                       std::nullopt};
    CHECK(kak_certified_order(g, kak) >= 5);
    CHECK(parse_tower(r["certified_order"].get<std::string>()).rational_value() >= 5);
  }
}

TEST_CASE("exit codes") {
  Config config;
  const auto expect = [&](const std::string& command, const Inputs& inputs, int code, const std::string& needle) {
    const RunResult r = run(command, config, inputs);
    CAPTURE(command);
    CAPTURE(r.err);
    CHECK(r.exit_code == code);
    CHECK(r.out.empty());
    CHECK(r.err.find(needle) != std::string::npos);
  };
  expect("cartan", {{"g", "1, 0; 0, 1"}}, 2, "RepeatedEigenvalue");
  expect("cartan", {{"g", "0, -1; 1, 0"}}, 2, "RepeatedEigenvalue");
  expect("iwasawa", {{"g", "2, 0; 0, 1"}}, 2, "NotInGroup");
  expect("jm-triple", {{"x", "1, 0; 0, -1"}}, 2, "NotNilpotent");
  expect("bch", {{"x", "0, 1; 1, 0"}, {"y", "0, 1; 0, 0"}}, 2, "NotNilpotent");
  expect("kostant-check", {{"a", "1/2, 0; 0, 2"}, {"b", "2, 0; 0, 1/2"}}, 2, "NotInChamber");
  expect("roots", {{"type", "E8"}}, 2, "UnsupportedType");
  expect("iwasawa", {{"g", "1, 0\n0, 1, 3"}}, 1, "line 2, column 1");
  expect("iwasawa", {{"g", "X, 0; 0, 1"}}, 1, "Puiseux");
  expect("iwasawa", {}, 1, "missing input");
  expect("transpose", {{"g", "1"}}, 1, "unknown command");
  config.n = 3;
  expect("iwasawa", {{"g", "1, 0; 0, 1"}}, 2, "DimensionMismatch");
  config.n.reset();
  config.field = FieldKind::Puiseux;
  expect("iwasawa", {{"g", "X + O(X^(-1)), 0; 0, X^(-1)"}}, 3, "--trunc");
  config.trunc = 0;
  expect("iwasawa", {{"g", "1"}}, 1, "positive");
}

TEST_CASE("truncation configuration") {
  CHECK(parse_trunc("17/2") == make_rational(17, 2));
  CHECK_THROWS_AS(parse_trunc("0"), ParseError);
  CHECK_THROWS_AS(parse_trunc("-1"), ParseError);
  CHECK_THROWS_AS(parse_trunc("sqrt(2)"), ParseError);
  ::unsetenv("RCG_TRUNC");
  CHECK(default_config().trunc == 8);
  ::setenv("RCG_TRUNC", "12", 1);
  CHECK(default_config().trunc == 12);
  ::setenv("RCG_TRUNC", "twelve", 1);
  CHECK_THROWS_AS(default_config(), ParseError);
  ::unsetenv("RCG_TRUNC");
}

TEST_CASE("runs are deterministic given the seed") {
  Config config;
  config.samples = 30;
  config.seed = 99;
  const Inputs in{{"a", "2, 0, 0; 0, 1, 0; 0, 0, 1/2"}, {"b", "4, 0, 0; 0, 2, 0; 0, 0, 1/8"}};
  const RunResult first = run("kostant-check", config, in);
  CHECK(first.exit_code == 0);
  CHECK(run("kostant-check", config, in).out == first.out);
  config.seed = 100;
  CHECK(run("kostant-check", config, in).out != first.out);
}
