#pragma once

// Brute-force reference implementations used by the unit tests and the
// acceptance runner. Nothing here calls into the library algorithms it checks.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "treeset/automaton.hpp"
#include "treeset/codes.hpp"
#include "treeset/words.hpp"

namespace oracle {

using treeset::Letter;
using treeset::SignedLetter;
using treeset::SignedWord;
using treeset::Word;

// Fibonacci word by the recurrence s(n) = s(n-1) s(n-2).
inline std::string fibonacci_word(std::size_t min_len) {
  std::string a = "a", b = "ab";
  while (b.size() < min_len) {
    std::string c = b + a;
    a = std::move(b);
    b = std::move(c);
  }
  return b;
}

inline std::set<std::string> factors_of_length(const std::string& x, std::size_t n) {
  std::set<std::string> out;
  for (std::size_t i = 0; i + n <= x.size(); ++i) out.insert(x.substr(i, n));
  return out;
}

inline bool starts_with(const Word& w, std::size_t from, const Word& u) {
  if (from + u.size() > w.size()) return false;
  return std::equal(u.begin(), u.end(), w.begin() + static_cast<std::ptrdiff_t>(from));
}

// x in X* by plain recursion on the first factor.
inline bool in_star(const std::vector<Word>& x, const Word& w, std::size_t from = 0) {
  if (from == w.size()) return true;
  for (const auto& u : x) {
    if (!u.empty() && starts_with(w, from, u) && in_star(x, w, from + u.size())) return true;
  }
  return false;
}

// Number of triples (v, x, u) with w = vxu, v without a suffix in X, x in X*
// and u without a prefix in X.
inline std::size_t direct_parse_count(const std::vector<Word>& x, const Word& w) {
  auto has_suffix_in = [&](std::size_t end) {
    for (const auto& u : x) {
      if (u.size() <= end && starts_with(w, end - u.size(), u)) return true;
    }
    return false;
  };
  auto has_prefix_in = [&](std::size_t begin) {
    for (const auto& u : x) {
      if (starts_with(w, begin, u)) return true;
    }
    return false;
  };
  std::size_t count = 0;
  for (std::size_t i = 0; i <= w.size(); ++i) {
    if (has_suffix_in(i)) continue;
    for (std::size_t j = i; j <= w.size(); ++j) {
      if (has_prefix_in(j)) continue;
      Word mid(w.begin() + static_cast<std::ptrdiff_t>(i), w.begin() + static_cast<std::ptrdiff_t>(j));
      if (in_star(x, mid)) ++count;
    }
  }
  return count;
}

inline bool is_bifix(const std::vector<Word>& x) {
  for (const auto& u : x) {
    for (const auto& v : x) {
      if (u == v || u.size() > v.size()) continue;
      if (std::equal(u.begin(), u.end(), v.begin())) return false;
      if (std::equal(u.begin(), u.end(), v.end() - static_cast<std::ptrdiff_t>(u.size()))) return false;
    }
  }
  return true;
}

inline SignedWord free_reduce(const SignedWord& w) {
  SignedWord out;
  for (auto s : w) {
    if (!out.empty() && out.back().base == s.base && out.back().inverse != s.inverse) {
      out.pop_back();
    } else {
      out.push_back(s);
    }
  }
  return out;
}

inline SignedWord inverse_of(const SignedWord& w) {
  SignedWord out(w.rbegin(), w.rend());
  for (auto& s : out) s.inverse = !s.inverse;
  return out;
}

inline SignedWord as_signed(const Word& w) {
  SignedWord out;
  for (Letter a : w) out.push_back({a, false});
  return out;
}

// Reduced forms of all products of at most k factors from X ∪ X⁻¹.
inline std::set<SignedWord> products(const std::vector<SignedWord>& x, std::size_t k) {
  std::vector<SignedWord> factors;
  for (const auto& g : x) {
    factors.push_back(free_reduce(g));
    factors.push_back(free_reduce(inverse_of(g)));
  }
  std::set<SignedWord> out{SignedWord{}};
  std::set<SignedWord> frontier{SignedWord{}};
  for (std::size_t step = 0; step < k; ++step) {
    std::set<SignedWord> next;
    for (const auto& p : frontier) {
      for (const auto& f : factors) {
        SignedWord q = p;
        q.insert(q.end(), f.begin(), f.end());
        q = free_reduce(q);
        if (out.insert(q).second) next.insert(q);
      }
    }
    frontier = std::move(next);
  }
  return out;
}

// Every reduced word of length at most n over an alphabet of size k.
inline std::vector<SignedWord> reduced_words(std::size_t k, std::size_t n) {
  std::vector<SignedWord> out{SignedWord{}};
  std::size_t begin = 0;
  for (std::size_t len = 1; len <= n; ++len) {
    const std::size_t end = out.size();
    for (std::size_t i = begin; i < end; ++i) {
      for (Letter a = 0; a < k; ++a) {
        for (bool inv : {false, true}) {
          SignedLetter s{a, inv};
          const SignedWord base = out[i];
          if (!base.empty() && base.back().base == a && base.back().inverse != inv) continue;
          SignedWord w = base;
          w.push_back(s);
          out.push_back(std::move(w));
        }
      }
    }
    begin = end;
  }
  return out;
}

// Quadratic folding on an edge set, merging the higher-numbered state into the
// lower one until no two edges with the same label share a source or target.
struct NaiveFold {
  std::size_t states = 1;
  std::set<std::tuple<std::size_t, Letter, std::size_t>> edges;

  static NaiveFold from_generators(const std::vector<SignedWord>& x) {
    NaiveFold g;
    for (const auto& w : x) {
      std::size_t at = 0;
      for (std::size_t i = 0; i < w.size(); ++i) {
        std::size_t to = (i + 1 == w.size()) ? 0 : g.states++;
        if (w[i].inverse) {
          g.edges.insert({to, w[i].base, at});
        } else {
          g.edges.insert({at, w[i].base, to});
        }
        at = to;
      }
    }
    g.fold();
    return g;
  }

  void fold() {
    for (;;) {
      std::optional<std::pair<std::size_t, std::size_t>> pair;
      for (auto it = edges.begin(); it != edges.end() && !pair; ++it) {
        for (auto jt = std::next(it); jt != edges.end() && !pair; ++jt) {
          const auto& [p1, a1, q1] = *it;
          const auto& [p2, a2, q2] = *jt;
          if (a1 != a2) continue;
          if (p1 == p2 && q1 != q2) pair = std::make_pair(std::min(q1, q2), std::max(q1, q2));
          if (q1 == q2 && p1 != p2) pair = std::make_pair(std::min(p1, p2), std::max(p1, p2));
        }
      }
      if (!pair) break;
      std::set<std::tuple<std::size_t, Letter, std::size_t>> next;
      for (auto [p, a, q] : edges) {
        if (p == pair->second) p = pair->first;
        if (q == pair->second) q = pair->first;
        next.insert({p, a, q});
      }
      edges = std::move(next);
    }
    std::set<std::size_t> live{0};
    for (const auto& [p, a, q] : edges) {
      live.insert(p);
      live.insert(q);
    }
    states = live.size();
  }

  bool member(const SignedWord& g) const {
    std::size_t at = 0;
    for (auto s : g) {
      bool moved = false;
      for (const auto& [p, a, q] : edges) {
        if (a != s.base) continue;
        if (!s.inverse && p == at) {
          at = q;
          moved = true;
          break;
        }
        if (s.inverse && q == at) {
          at = p;
          moved = true;
          break;
        }
      }
      if (!moved) return false;
    }
    return at == 0;
  }
};

// Isomorphism of two reversible automata fixing the base, found by walking
// both from their bases along forward and backward edges.
inline bool same_reversible(const treeset::Automaton& a, const treeset::Automaton& b) {
  if (a.state_count() != b.state_count() || a.transition_count() != b.transition_count()) return false;
  const std::size_t k = a.alphabet().size();
  std::map<treeset::State, treeset::State> fwd;
  std::vector<treeset::State> work{a.base()};
  fwd[a.base()] = b.base();
  auto back = [](const treeset::Automaton& m, treeset::State q, Letter x) -> std::optional<treeset::State> {
    for (const auto& t : m.transitions()) {
      if (t.letter == x && t.to == q) return t.from;
    }
    return std::nullopt;
  };
  while (!work.empty()) {
    const auto p = work.back();
    work.pop_back();
    const auto p2 = fwd.at(p);
    for (Letter x = 0; x < k; ++x) {
      for (bool forward : {true, false}) {
        auto q = forward ? a.next(p, x) : back(a, p, x);
        auto q2 = forward ? b.next(p2, x) : back(b, p2, x);
        if (q.has_value() != q2.has_value()) return false;
        if (!q) continue;
        auto it = fwd.find(*q);
        if (it == fwd.end()) {
          fwd[*q] = *q2;
          work.push_back(*q);
        } else if (it->second != *q2) {
          return false;
        }
      }
    }
  }
  if (fwd.size() != a.state_count()) return false;
  for (auto [p, q] : fwd) {
    if (a.is_terminal(p) != b.is_terminal(q)) return false;
  }
  return true;
}

// Height at most one: w = z0 v1 z1 ... vn zn where every z_i is a product of
// blocks u u⁻¹ and v1...vn is reduced.
inline bool height_at_most_one(const SignedWord& w) {
  const std::size_t n = w.size();
  auto block = [&](std::size_t i, std::size_t j) {
    if ((j - i) % 2 != 0 || j == i) return false;
    for (std::size_t t = 0; t < (j - i) / 2; ++t) {
      const auto x = w[i + t];
      const auto y = w[j - 1 - t];
      if (x.base != y.base || x.inverse == y.inverse) return false;
    }
    return true;
  };
  // blocks_to[i][j]: w[i, j) is a nonempty product of blocks
  std::vector<std::vector<char>> blocks(n + 1, std::vector<char>(n + 1, 0));
  for (std::size_t len = 2; len <= n; len += 2) {
    for (std::size_t i = 0; i + len <= n; ++i) {
      const std::size_t j = i + len;
      if (block(i, j)) {
        blocks[i][j] = 1;
        continue;
      }
      for (std::size_t m = i + 2; m < j; m += 2) {
        if (blocks[i][m] && blocks[m][j]) {
          blocks[i][j] = 1;
          break;
        }
      }
    }
  }
  std::map<std::pair<std::size_t, std::size_t>, bool> memo;
  std::function<bool(std::size_t, std::size_t)> go = [&](std::size_t i, std::size_t last) -> bool {
    if (i == n) return true;
    auto key = std::make_pair(i, last);
    if (auto it = memo.find(key); it != memo.end()) return it->second;
    bool ok = false;
    const bool clash = last != 0 && w[last - 1].base == w[i].base && w[last - 1].inverse != w[i].inverse;
    if (!clash) ok = go(i + 1, i + 1);
    for (std::size_t m = i + 2; m <= n && !ok; m += 2) {
      if (blocks[i][m]) ok = go(m, last);
    }
    memo[key] = ok;
    return ok;
  };
  return go(0, 0);
}

struct PropertyResult {
  std::size_t checked = 0;
  std::size_t failures = 0;
  std::string first_failure;
  bool ok() const { return checked > 0 && failures == 0; }
};

inline Word random_word(std::mt19937_64& rng, std::size_t k, std::size_t min_len, std::size_t max_len) {
  std::uniform_int_distribution<std::size_t> len(min_len, max_len);
  std::uniform_int_distribution<Letter> letter(0, static_cast<Letter>(k - 1));
  Word w(len(rng));
  for (auto& a : w) a = letter(rng);
  return w;
}

inline SignedWord random_reduced(std::mt19937_64& rng, std::size_t k, std::size_t min_len, std::size_t max_len) {
  std::uniform_int_distribution<std::size_t> len(min_len, max_len);
  std::uniform_int_distribution<Letter> letter(0, static_cast<Letter>(k - 1));
  std::bernoulli_distribution sign(0.5);
  const std::size_t n = len(rng);
  SignedWord w;
  while (w.size() < n) {
    SignedLetter s{letter(rng), sign(rng)};
    if (!w.empty() && w.back().base == s.base && w.back().inverse != s.inverse) continue;
    w.push_back(s);
  }
  return w;
}

inline std::string show(const SignedWord& w) {
  std::string out;
  for (auto s : w) {
    out += static_cast<char>('a' + s.base);
    if (s.inverse) out += '\'';
  }
  return out.empty() ? "1" : out;
}

inline std::string show(const Word& w) {
  std::string out;
  for (auto a : w) out += static_cast<char>('a' + a);
  return out.empty() ? "1" : out;
}

inline treeset::Alphabet letters(std::size_t k) {
  std::vector<std::string> tokens;
  for (std::size_t i = 0; i < k; ++i) tokens.push_back(std::string(1, static_cast<char>('a' + i)));
  return treeset::Alphabet(tokens);
}

// Suffix characterization of d_X against direct parse enumeration on random
// bifix codes over two or three letters.
inline PropertyResult parse_count_property(std::size_t instances, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  PropertyResult r;
  while (r.checked < instances) {
    const std::size_t k = 2 + rng() % 2;
    std::vector<Word> x;
    const std::size_t target = 1 + rng() % 4;
    for (int tries = 0; tries < 20 && x.size() < target; ++tries) {
      Word u = random_word(rng, k, 1, 3);
      auto candidate = x;
      candidate.push_back(u);
      if (std::find(x.begin(), x.end(), u) == x.end() && is_bifix(candidate)) x = std::move(candidate);
    }
    const Word w = random_word(rng, k, 0, 9);
    const treeset::Code code(letters(k), x);
    const std::size_t got = treeset::parse_count(code, w);
    const std::size_t want = direct_parse_count(x, w);
    ++r.checked;
    if (got != want) {
      ++r.failures;
      if (r.first_failure.empty()) {
        r.first_failure = code.format() + " on " + show(w) + ": " + std::to_string(got) + " vs " + std::to_string(want);
      }
    }
  }
  return r;
}

inline std::vector<treeset::ReducedWord> random_generators(std::mt19937_64& rng, std::size_t k) {
  std::vector<treeset::ReducedWord> x;
  const std::size_t count = 1 + rng() % 3;
  while (x.size() < count) x.push_back(treeset::reduce(random_reduced(rng, k, 1, 4)));
  return x;
}

inline std::vector<SignedWord> symbols_of(const std::vector<treeset::ReducedWord>& x) {
  std::vector<SignedWord> out;
  for (const auto& g : x) out.push_back(g.symbols());
  return out;
}

// Folding a bouquet with shuffled merge orders always gives the same
// automaton, which is also the one found by naive folding.
inline PropertyResult fold_confluence_property(std::size_t bouquets, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  PropertyResult r;
  for (std::size_t i = 0; i < bouquets; ++i) {
    const std::size_t k = 2 + rng() % 2;
    const auto alphabet = letters(k);
    const auto x = random_generators(rng, k);
    const auto g = treeset::bouquet(alphabet, x);
    const auto reference = treeset::stallings_fold(g).result;
    const auto naive = NaiveFold::from_generators(symbols_of(x));
    bool ok = reference.state_count() == naive.states && reference.transition_count() == naive.edges.size();
    for (int s = 0; s < 4 && ok; ++s) {
      const auto shuffled = treeset::stallings_fold(g, rng()).result;
      ok = same_reversible(reference, shuffled);
    }
    ++r.checked;
    if (!ok) {
      ++r.failures;
      if (r.first_failure.empty()) {
        std::string gens;
        for (const auto& w : x) gens += show(w.symbols()) + " ";
        r.first_failure = "bouquet " + gens;
      }
    }
  }
  return r;
}

// membership against products of at most four generators (every such product
// is a member) and against naive folding on all reduced words of length <= 4.
inline PropertyResult membership_property(std::size_t automata, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  PropertyResult r;
  for (std::size_t i = 0; i < automata; ++i) {
    const std::size_t k = 2 + rng() % 2;
    const auto alphabet = letters(k);
    const auto x = random_generators(rng, k);
    const auto a = treeset::stallings_automaton(alphabet, x);
    const auto naive = NaiveFold::from_generators(symbols_of(x));
    std::string failure;
    for (const auto& p : products(symbols_of(x), 4)) {
      if (!treeset::membership(a, treeset::reduce(p))) {
        failure = "product " + show(p) + " rejected";
        break;
      }
    }
    if (failure.empty()) {
      for (const auto& w : reduced_words(k, 4)) {
        const bool got = treeset::membership(a, treeset::reduce(w));
        if (got != naive.member(w)) {
          failure = show(w) + (got ? " accepted" : " rejected");
          break;
        }
      }
    }
    ++r.checked;
    if (!failure.empty()) {
      ++r.failures;
      if (r.first_failure.empty()) {
        std::string gens;
        for (const auto& w : x) gens += show(w.symbols()) + " ";
        r.first_failure = "generators " + gens + ": " + failure;
      }
    }
  }
  return r;
}

// Products y1...yn over X ∪ X⁻¹ with no y_{i+1} = y_i⁻¹, X the length-2
// factors of the acyclic Cassaigne set.
inline PropertyResult height_property(std::size_t samples, std::uint64_t seed) {
  const std::vector<std::string> code = {"ab", "ac", "bc", "ca", "cd", "da"};
  std::vector<SignedWord> factors;
  for (const auto& c : code) {
    SignedWord w;
    for (char ch : c) w.push_back({static_cast<Letter>(ch - 'a'), false});
    factors.push_back(w);
  }
  std::mt19937_64 rng(seed);
  PropertyResult r;
  while (r.checked < samples) {
    const std::size_t n = 1 + rng() % 6;
    SignedWord w;
    std::size_t prev = 0;
    bool prev_inv = false;
    for (std::size_t i = 0; i < n; ++i) {
      std::size_t f;
      bool inv;
      do {
        f = rng() % factors.size();
        inv = rng() % 2 == 1;
      } while (i > 0 && f == prev && inv != prev_inv);
      const auto piece = inv ? inverse_of(factors[f]) : factors[f];
      w.insert(w.end(), piece.begin(), piece.end());
      prev = f;
      prev_inv = inv;
    }
    const std::size_t h = treeset::height(w);
    const bool oracle = height_at_most_one(w);
    ++r.checked;
    if (h > 1 || !oracle) {
      ++r.failures;
      if (r.first_failure.empty()) r.first_failure = show(w) + " has height " + std::to_string(h);
    }
  }
  return r;
}

}  // namespace oracle
