#include <filesystem>
#include <fstream>
#include <sstream>

#include "commands.hpp"
#include "doctest.h"
#include "json.hpp"

using nlohmann::json;

namespace {

struct Result {
  int code = 0;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  Result r;
  r.code = treeset::cli::run(args, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

json run_json(std::vector<std::string> args) {
  const auto r = run(std::move(args));
  REQUIRE(r.code == 0);
  return json::parse(r.out);
}

// Node statements of a DOT document: lines with a label but no edge.
std::size_t dot_nodes(const std::string& dot) {
  std::istringstream in(dot);
  std::size_t n = 0;
  for (std::string line; std::getline(in, line);) {
    if (line.find("[label=") != std::string::npos && line.find("->") == std::string::npos &&
        line.find("--") == std::string::npos) {
      ++n;
    }
  }
  return n;
}

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("classify fibonacci") {
    const auto r = run_json({"classify", "--morphism", "a->ab;b->a", "--seed", "a", "--horizon", "20"});
    CHECK(r["classification"]["tree"] == true);
    CHECK(r["neutrality"]["verdict"] == "neutral");
    CHECK(r["complexity"]["linear"] == "1n+1");
    CHECK(r["horizon"] == 20);
    CHECK(r["parameters"]["stabilization"]["margin"] == 2);
    CHECK_FALSE(r["caveats"].empty());
  }

  TEST_CASE("classify chacon") {
    const auto r = run_json({"classify", "--morphism", "a->aabc;b->bc;c->abc", "--seed", "a", "--horizon", "20"});
    CHECK(r["classification"]["acyclic"] == false);
    CHECK(r["neutrality"]["verdict"] == "mixed");
    CHECK(r["complexity"]["linear"] == "2n+1");
  }

  TEST_CASE("classify a finite word list") {
    const auto path = std::filesystem::temp_directory_path() / "treeset_cli_words.txt";
    {
      std::ofstream f(path);
      f << "# the finite set\nu\nv\nvu\nvv\nvvu\n";
    }
    const auto r = run_json({"classify", "--words", path.string()});
    CHECK(r["classification"]["biextendable"] == false);
    bool warned = false;
    for (const auto& wmsg : r["warnings"]) warned |= wmsg.get<std::string>().find("not biextendable") != std::string::npos;
    CHECK(warned);
    std::filesystem::remove(path);
  }

  TEST_CASE("verify") {
    const auto ret = run_json({"verify", "return", "--source", "fibonacci", "--word", "aa"});
    CHECK(ret["theorem"] == "return");
    CHECK(ret["verdict"] == "basis");
    CHECK(ret["witnesses"]["basis"] == true);

    const auto free = run_json({"verify", "freeness", "--code", "{2231,31,231}"});
    CHECK(free["verdict"] == "not free");
    CHECK(free["witnesses"]["rank"] == 2);

    const auto sat = run_json({"verify", "saturation", "--source", "cassaigne-acyclic", "--code", "layer:2", "--bound", "6"});
    CHECK(sat["verdict"] == "saturated");

    const auto rg = run_json({"verify", "rauzy-group", "--source", "fibonacci", "--order", "7", "--base", "aababaa"});
    CHECK(rg["verdict"] == "free group");

    const auto q = run_json({"verify", "quotient", "--source", "chacon", "--order", "1"});
    CHECK(q["verdict"] == "not isomorphic");

    const auto card = run_json({"verify", "card-return", "--source", "fibonacci", "--order", "3"});
    CHECK(card["verdict"] == "holds");

    for (const auto& rep : {ret, free, sat, rg, q, card}) {
      for (const char* key : {"theorem", "instance", "verdict", "witnesses", "horizon", "caveats"}) CHECK(rep.contains(key));
    }
  }

  TEST_CASE("export") {
    auto dot = [](std::vector<std::string> args) {
      const auto r = run(std::move(args));
      REQUIRE(r.code == 0);
      return r.out;
    };
    CHECK(dot_nodes(dot({"export", "rauzy", "--source", "fibonacci", "--order", "7"})) == 8);
    CHECK(dot_nodes(dot({"export", "coset", "--code", "{a,baab,babaabab,babaabaabab}"})) == 3);
    CHECK(dot_nodes(dot({"export", "extension-graph", "--source", "tribonacci", "--word", "ab"})) == 4);
    CHECK(dot_nodes(dot({"export", "automaton", "--code", "{aa,ab,ba}", "--kind", "stallings"})) == 2);
    CHECK(dot_nodes(dot({"export", "incidence", "--code", "{ab,ac,bc,ca,cd,da}"})) == 8);

    const auto text = dot({"export", "automaton", "--code", "{aa,ab,ba}", "--kind", "folded", "--format", "text"});
    CHECK(text.rfind("base 1\n", 0) == 0);
  }

  TEST_CASE("output is deterministic and can go to a file") {
    const std::vector<std::string> args = {"classify", "--source", "chacon", "--horizon", "16"};
    CHECK(run(args).out == run(args).out);

    const auto path = std::filesystem::temp_directory_path() / "treeset_cli_out.dot";
    const auto r = run({"export", "rauzy", "--source", "fibonacci", "--order", "3", "--out", path.string()});
    CHECK(r.code == 0);
    std::ifstream f(path);
    std::stringstream content;
    content << f.rdbuf();
    CHECK(dot_nodes(content.str()) == 4);
    std::filesystem::remove(path);
  }

  TEST_CASE("exit codes") {
    CHECK(run({"export", "bogus", "--source", "fibonacci"}).code == 1);
    CHECK(run({}).code == 1);
    CHECK(run({"classify", "--horizon", "abc", "--source", "fibonacci"}).code == 1);

    const auto missing = run({"verify", "return", "--source", "fibonacci", "--word", "bb"});
    CHECK(missing.code == 2);
    CHECK(missing.err.find("not a factor") != std::string::npos);
    CHECK(run({"classify", "--source", "nosuch"}).code == 2);
    CHECK(run({"classify", "--morphism", "a->"}).code == 2);
    CHECK(run({"export", "rauzy", "--source", "fibonacci", "--order", "9", "--horizon", "8"}).code == 2);

    // an incomplete return set is reported, not an error
    const auto short_horizon = run({"verify", "return", "--source", "fibonacci", "--word", "ab", "--horizon", "3"});
    CHECK(short_horizon.code == 0);
    CHECK(json::parse(short_horizon.out)["verdict"] == "inconclusive");

    // a failing theorem instance is still a successful run
    CHECK(run({"verify", "return", "--source", "cassaigne-neutral", "--word", "1"}).code == 0);
  }
}
