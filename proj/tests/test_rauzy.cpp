#include <map>
#include <set>

#include "doctest.h"
#include "fixtures.hpp"
#include "oracles.hpp"
#include "treeset/codes.hpp"
#include "treeset/error.hpp"
#include "treeset/extension_graph.hpp"
#include "treeset/rauzy.hpp"

using namespace treeset;
using fixture::named;
using fixture::w;

namespace {

std::string iterate(const std::map<char, std::string>& rules, char seed, std::size_t len) {
  std::string x(1, seed);
  while (x.size() < len) {
    std::string next;
    for (char c : x) next += rules.at(c);
    x = std::move(next);
  }
  return x;
}

// Gaps between consecutive occurrences of w in a long prefix.
std::vector<std::string> returns_in(const std::string& x, const std::string& w) {
  std::set<std::string> out;
  std::size_t prev = x.find(w);
  while (prev != std::string::npos) {
    std::size_t next = x.find(w, prev + 1);
    if (next == std::string::npos) break;
    out.insert(x.substr(prev + w.size(), next - prev));
    prev = next;
  }
  return {out.begin(), out.end()};
}

std::vector<std::string> returns(const FactorSet& s, std::string_view base, ReturnSide side = ReturnSide::right) {
  const auto r = return_words(s, w(s, base), side);
  CHECK(r.complete);
  return fixture::shown(s.alphabet(), r.words);
}

const std::map<char, std::string> kFib = {{'a', "ab"}, {'b', "a"}};
const std::map<char, std::string> kChacon = {{'a', "aabc"}, {'b', "bc"}, {'c', "abc"}};
const std::map<char, std::string> kTrib = {{'a', "ab"}, {'b', "ac"}, {'c', "a"}};

std::string neutral_word() {
  const std::string x = iterate({{'a', "ab"}, {'b', "cda"}, {'c', "cd"}, {'d', "abc"}}, 'a', 200000);
  const std::map<char, std::string> tau = {{'a', "12"}, {'b', "2"}, {'c', "3"}, {'d', "13"}};
  std::string out;
  for (char c : x) out += tau.at(c);
  return out;
}

}  // namespace

TEST_SUITE("rauzy") {
  TEST_CASE("rauzy graphs") {
    const auto& fib = named("fibonacci");
    const auto g7 = rauzy_graph(fib, 7);
    CHECK(g7.vertices.size() == 8);
    CHECK(g7.edges.size() == 9);
    CHECK(strongly_connected(g7.labeled(fib.alphabet())));

    const auto& chacon = named("chacon");
    const auto g1 = rauzy_graph(chacon, 1);
    CHECK(g1.vertices.size() == 3);
    CHECK(g1.edges.size() == 5);

    const auto g0 = rauzy_graph(chacon, 0);
    CHECK(g0.vertices.size() == 1);
    CHECK(g0.edges.size() == 3);
    for (const auto& e : g0.edges) CHECK(e.from == e.to);

    CHECK_THROWS_AS(rauzy_graph(fib, 20), HorizonError);
  }

  TEST_CASE("rauzy graphs match windows of a long prefix") {
    const std::string x = iterate(kTrib, 'a', 100000);
    const auto& s = named("tribonacci");
    for (std::size_t n = 1; n <= 8; ++n) {
      const auto g = rauzy_graph(s, n);
      std::set<std::string> edges;
      for (const auto& e : g.edges) edges.insert(s.format(g.vertices[e.from]) + s.alphabet().token(e.label));
      CHECK(edges == oracle::factors_of_length(x, n + 1));
      for (const auto& e : g.edges) {
        CHECK(s.format(g.vertices[e.to]) == (s.format(g.vertices[e.from]) + s.alphabet().token(e.label)).substr(1));
      }
    }
  }

  TEST_CASE("paths in rauzy graphs") {
    const auto& s = named("fibonacci");
    const std::size_t n = 4;
    const auto g = rauzy_graph(s, n);
    const auto a = rauzy_automaton(g, s.alphabet(), 0);
    // (i) a stored word uw with |u| = n labels a path from u
    for (std::size_t len = n; len <= 12; ++len) {
      for (const auto& uw : s.words_of_length(len)) {
        const Word u(uw.begin(), uw.begin() + n);
        const Word rest(uw.begin() + n, uw.end());
        const auto end = a.read(static_cast<State>(*g.find(u)), rest);
        REQUIRE(end);
        CHECK(g.vertices[*end] == Word(uw.end() - n, uw.end()));
      }
    }
    // (ii) labels of paths of length at most n + 1 are stored
    for (std::size_t v = 0; v < g.vertices.size(); ++v) {
      std::vector<std::pair<State, Word>> frontier{{static_cast<State>(v), Word{}}};
      for (std::size_t step = 0; step <= n; ++step) {
        std::vector<std::pair<State, Word>> next;
        for (const auto& [p, label] : frontier) {
          for (Letter c = 0; c < 2; ++c) {
            if (auto q = a.next(p, c)) {
              Word l = label;
              l.push_back(c);
              CHECK(s.contains(l));
              next.push_back({*q, l});
            }
          }
        }
        frontier = std::move(next);
      }
    }
  }

  TEST_CASE("theta classes") {
    const auto& fib = named("fibonacci");
    const auto decoded = bifix_decode(fib, Morphism::parse("u->aa; v->ab; w->ba"));
    const auto classes = theta_partition(decoded, 2);
    std::set<std::vector<std::string>> got;
    for (const auto& c : classes) got.insert(fixture::shown(decoded.alphabet(), c));
    CHECK(got == std::set<std::vector<std::string>>{{"vv", "wv"}, {"vu"}, {"uw", "ww"}});

    const auto q = check_quotient(decoded, 2);
    CHECK(q.quotient.vertex_count() == 3);
    CHECK(q.isomorphism.has_value());

    const auto c = check_quotient(named("chacon"), 1);
    CHECK(c.quotient.vertex_count() == 2);
    CHECK_FALSE(c.isomorphism.has_value());

    // singletons leave the graph unchanged
    const auto g = rauzy_graph(fib, 3);
    Partition singletons;
    for (const auto& v : g.vertices) singletons.push_back({v});
    CHECK(find_isomorphism(quotient_graph(g, singletons, fib.alphabet()), g.labeled(fib.alphabet())).has_value());
  }

  TEST_CASE("theta quotients of connected sets") {
    for (const char* name : {"fibonacci", "tribonacci"}) {
      const auto& s = named(name);
      for (std::size_t n = 1; n <= 8; ++n) {
        CAPTURE(n);
        CHECK(check_quotient(s, n).isomorphism.has_value());
      }
    }
    bool fails_somewhere = false;
    for (std::size_t n = 1; n <= 8; ++n) fails_somewhere |= !check_quotient(named("chacon"), n).isomorphism.has_value();
    CHECK(fails_somewhere);
  }

  TEST_CASE("labeled graph isomorphism") {
    LabeledGraph a{{"x", "y", "z"}, {{0, 0, 1}, {1, 1, 2}, {2, 0, 0}}};
    LabeledGraph b{{"p", "q", "r"}, {{0, 1, 1}, {1, 0, 2}, {2, 0, 0}}};
    const auto m = find_isomorphism(a, b);
    REQUIRE(m);
    CHECK(*m == std::vector<std::size_t>{2, 0, 1});
    LabeledGraph c{{"p", "q", "r"}, {{0, 0, 1}, {1, 0, 2}, {2, 0, 0}}};
    CHECK_FALSE(find_isomorphism(a, c).has_value());
  }

  TEST_CASE("groups described by rauzy graphs") {
    const auto& fib = named("fibonacci");
    const auto r = rauzy_group(fib, 7, w(fib, "aababaa"));
    CHECK(r.describes_free_group);
    CHECK(r.folded.state_count() == 1);
    CHECK(r.rank == 2);

    const auto& chacon = named("chacon");
    CHECK_FALSE(rauzy_group(chacon, 1, w(chacon, "a")).describes_free_group);
    CHECK(rauzy_group(chacon, 0, Word{}).describes_free_group);
    CHECK(rauzy_group(fib, 0, Word{}).describes_free_group);

    CHECK_THROWS_AS(rauzy_group(fib, 2, w(fib, "bb")), NotAFactorError);
  }

  TEST_CASE("cycle code of G7 factorizes over the return words of aa") {
    const auto& fib = named("fibonacci");
    const auto g = rauzy_graph(fib, 7);
    const auto a = rauzy_automaton(g, fib.alphabet(), *g.find(w(fib, "aababaa")));
    const auto cycles = cycle_code(a, 24);
    const auto shown = fixture::shown(fib.alphabet(), cycles.words);
    CHECK(std::find(shown.begin(), shown.end(), "babaa") != shown.end());
    CHECK(std::find(shown.begin(), shown.end(), "baababaa") != shown.end());
    const auto r = return_words(fib, w(fib, "aa")).words;
    for (const auto& x : cycles.words) CHECK(oracle::in_star(r, x));
  }

  TEST_CASE("return words") {
    CHECK(returns(named("fibonacci"), "aa") == fixture::sorted({"baa", "babaa"}));
    CHECK(returns(named("chacon"), "a") == fixture::sorted({"a", "bca", "bcbca"}));
    CHECK(returns(named("chacon"), "ab") == fixture::sorted({"caab", "cbcab"}));
    CHECK(returns(named("cassaigne-neutral"), "1") == fixture::sorted({"2231", "31", "231"}));
    CHECK_THROWS_AS(return_words(named("fibonacci"), w(named("fibonacci"), "bb")), NotAFactorError);
  }

  TEST_CASE("return words match occurrences in a long prefix") {
    const std::string fib = iterate(kFib, 'a', 100000);
    const std::string chacon = iterate(kChacon, 'a', 200000);
    const std::string neutral = neutral_word();
    struct Case {
      const char* name;
      const std::string* text;
    };
    for (const Case c : {Case{"fibonacci", &fib}, Case{"chacon", &chacon}, Case{"cassaigne-neutral", &neutral}}) {
      const auto& s = named(c.name);
      for (std::size_t n = 1; n <= 3; ++n) {
        for (const auto& x : s.words_of_length(n)) {
          CAPTURE(s.format(x));
          const auto r = return_words(s, x);
          if (!r.complete) continue;
          CHECK(fixture::shown(s.alphabet(), r.words) == returns_in(*c.text, s.format(x)));
        }
      }
    }
  }

  TEST_CASE("left and right returns are conjugate by w") {
    for (const char* name : {"fibonacci", "chacon", "tribonacci"}) {
      const auto& s = named(name);
      for (std::size_t n = 1; n <= 3; ++n) {
        for (const auto& x : s.words_of_length(n)) {
          const auto right = return_words(s, x, ReturnSide::right);
          const auto left = return_words(s, x, ReturnSide::left);
          std::set<Word> a, b;
          for (const auto& r : right.words) a.insert(concat(x, r));
          for (const auto& l : left.words) b.insert(concat(l, x));
          CHECK(a == b);
        }
      }
    }
  }

  TEST_CASE("return theorem") {
    const auto fib = verify_return_theorem(named("fibonacci"), w(named("fibonacci"), "aa"));
    CHECK(fib.cardinality == 2);
    CHECK(fib.is_basis);
    CHECK(fib.verdict == "basis");

    const auto& g = named("cassaigne-neutral");
    const auto tau = verify_return_theorem(g, w(g, "1"));
    CHECK(tau.cardinality == 3);
    CHECK(tau.card_equals_alphabet);
    CHECK(tau.rank == 2);
    CHECK_FALSE(tau.is_basis);

    const auto& chacon = named("chacon");
    const auto ch = verify_return_theorem(chacon, w(chacon, "ab"));
    CHECK(ch.cardinality == 2);
    CHECK_FALSE(ch.card_equals_alphabet);

    // tribonacci returns to bab have length 24
    for (const char* name : {"fibonacci", "tribonacci"}) {
      const auto& s = named(name, 30);
      for (std::size_t n = 0; n <= 4; ++n) {
        for (const auto& x : s.words_of_length(n)) {
          CAPTURE(s.format(x));
          const auto r = verify_return_theorem(s, x);
          CHECK(r.complete);
          CHECK(r.card_equals_alphabet);
          CHECK(r.is_basis);
        }
      }
    }
  }

  TEST_CASE("incomplete returns are inconclusive") {
    const auto& s = named("fibonacci", 8);
    const auto r = verify_return_theorem(s, w(s, "abaab"));
    CHECK_FALSE(r.complete);
    CHECK(r.verdict == "inconclusive");
  }

  TEST_CASE("dot export") {
    const auto& fib = named("fibonacci");
    const auto dot = to_dot(rauzy_graph(fib, 7).labeled(fib.alphabet()), fib.alphabet());
    std::size_t nodes = 0;
    for (std::size_t pos = dot.find("[label=\""); pos != std::string::npos; pos = dot.find("[label=\"", pos + 1)) ++nodes;
    CHECK(nodes >= 8);
    CHECK(dot.find("aababaa") != std::string::npos);
  }
}
