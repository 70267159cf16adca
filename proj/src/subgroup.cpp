#include "treeset/subgroup.hpp"

#include <algorithm>
#include <map>
#include <unordered_map>

namespace treeset {

namespace {

std::string word_label(const Alphabet& alphabet, std::span<const Letter> w) {
  return w.empty() ? std::string("ε") : alphabet.format(w);
}

void require_contained(const Code& x, const FactorSet& s) {
  for (const auto& u : x.words()) {
    if (!s.contains(u)) throw ContainmentError("code word '" + s.format(u) + "' is not in the set");
  }
}

}  // namespace

BipartiteGraph incidence_graph(const Code& x) {
  x.require_bifix("incidence graph");
  BipartiteGraph g;
  for (const auto& w : x.words()) {
    for (std::size_t i = 1; i < w.size(); ++i) {
      g.left.emplace_back(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(i));
      g.right.emplace_back(w.begin() + static_cast<std::ptrdiff_t>(i), w.end());
    }
  }
  for (auto* side : {&g.left, &g.right}) {
    std::sort(side->begin(), side->end(), ShortlexLess{});
    side->erase(std::unique(side->begin(), side->end()), side->end());
  }
  auto index = [](const std::vector<Word>& side, const Word& w) {
    return static_cast<std::size_t>(std::lower_bound(side.begin(), side.end(), w, ShortlexLess{}) - side.begin());
  };
  for (const auto& w : x.words()) {
    for (std::size_t i = 1; i < w.size(); ++i) {
      Word p(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(i));
      Word s(w.begin() + static_cast<std::ptrdiff_t>(i), w.end());
      g.edges.emplace_back(index(g.left, p), index(g.right, s));
    }
  }
  std::sort(g.edges.begin(), g.edges.end());
  g.edges.erase(std::unique(g.edges.begin(), g.edges.end()), g.edges.end());
  return g;
}

Partition theta_x_partition(const Code& x) {
  const BipartiteGraph g = incidence_graph(x);
  const auto labels = component_labels(g);
  std::map<std::size_t, std::vector<Word>> grouped;
  for (std::size_t i = 0; i < g.left.size(); ++i) grouped[labels[i]].push_back(g.left[i]);
  Partition out{{Word{}}};
  for (auto& [label, cls] : grouped) out.push_back(std::move(cls));
  std::sort(out.begin() + 1, out.end(), [](const auto& a, const auto& b) { return shortlex_less(a.front(), b.front()); });
  return out;
}

Automaton coset_automaton(const Code& x) {
  const Partition classes = theta_x_partition(x);
  const Automaton literal = literal_automaton(x);
  // Literal states are the proper prefixes in shortlex order.
  std::vector<Word> prefixes;
  for (const auto& w : x.words()) {
    for (std::size_t n = 0; n < w.size(); ++n) prefixes.emplace_back(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(n));
  }
  std::sort(prefixes.begin(), prefixes.end(), ShortlexLess{});
  prefixes.erase(std::unique(prefixes.begin(), prefixes.end()), prefixes.end());

  std::unordered_map<Word, State, WordHash> class_of;
  std::vector<std::string> names;
  for (State c = 0; c < classes.size(); ++c) {
    std::string name;
    for (const auto& p : classes[c]) {
      class_of.emplace(p, c);
      if (!name.empty()) name += ",";
      name += word_label(x.alphabet(), p);
    }
    names.push_back(classes[c].size() == 1 ? name : "{" + name + "}");
  }

  Automaton b(x.alphabet(), classes.size(), 0);
  b.set_terminal(0);
  const std::size_t k = x.alphabet().size();
  // First member seen for each (class, letter), kept as the witness.
  std::vector<std::optional<State>> source(classes.size() * k);
  for (State p = 0; p < literal.state_count(); ++p) {
    const State cp = class_of.at(prefixes[p]);
    for (Letter a = 0; a < k; ++a) {
      auto q = literal.next(p, a);
      if (!q) continue;
      const State cq = class_of.at(prefixes[*q]);
      auto existing = b.next(cp, a);
      if (existing && *existing != cq) {
        const Word& other = prefixes[*source[cp * k + a]];
        throw ConsistencyError("θ_X is not compatible with the literal automaton: " +
                                   word_label(x.alphabet(), other) + " and " + word_label(x.alphabet(), prefixes[p]) +
                                   " are equivalent but their " + x.alphabet().token(a) + "-successors are not",
                               other, prefixes[p], a);
      }
      if (!existing) {
        b.add_transition(cp, a, cq);
        source[cp * k + a] = p;
      }
    }
  }
  b.set_labels(std::move(names));
  return b;
}

std::vector<Word> words_outside_return_code(const Automaton& b, const Code& x) {
  std::vector<Word> out;
  for (const auto& w : x.words()) {
    State cur = b.base();
    bool ok = true;
    for (std::size_t i = 0; i < w.size() && ok; ++i) {
      auto q = b.next(cur, w[i]);
      if (!q || (i + 1 < w.size() && *q == b.base())) ok = false;
      if (q) cur = *q;
    }
    if (!ok || cur != b.base()) out.push_back(w);
  }
  return out;
}

FreenessReport is_free(const Code& x) {
  Automaton folded = stallings_automaton(x);
  FreenessReport out{false, rank(folded), x.size(), std::move(folded)};
  out.free = out.rank == out.size;
  return out;
}

SaturationReport verify_saturation(const Code& x, const FactorSet& s, std::size_t bound) {
  require_contained(x, s);
  if (s.truncated() && bound > s.horizon()) {
    throw HorizonError("saturation bound " + std::to_string(bound) + " exceeds the horizon");
  }
  const Automaton h = stallings_automaton(x);
  SaturationReport out;
  out.bound = bound;
  for (std::size_t n = 1; n <= std::min(bound, s.horizon()); ++n) {
    for (const auto& w : s.words_of_length(n)) {
      ++out.checked;
      if (membership(h, ReducedWord::from_positive(w)) && !in_star(x.words(), w)) out.violations.push_back(w);
    }
  }
  const std::size_t k = x.alphabet().size();
  const std::size_t longest = std::min(x.max_length(), s.horizon());
  std::vector<Word> layer{Word{}};
  for (std::size_t n = 1; n <= longest; ++n) {
    std::vector<Word> next;
    for (const auto& u : layer) {
      for (Letter a = 0; a < k; ++a) {
        Word w = u;
        w.push_back(a);
        if (!s.contains(w) && membership(h, ReducedWord::from_positive(w)) && !in_star(x.words(), w)) {
          out.outside_witnesses.push_back(w);
        }
        next.push_back(std::move(w));
      }
    }
    layer = std::move(next);
  }
  out.saturated = out.violations.empty();
  return out;
}

std::vector<UnitaryViolation> verify_unitary_corollary(const Code& x, const FactorSet& s, std::size_t bound) {
  require_contained(x, s);
  if (s.truncated() && bound > s.horizon()) {
    throw HorizonError("bound " + std::to_string(bound) + " exceeds the horizon");
  }
  const Automaton h = stallings_automaton(x);
  std::unordered_map<Word, bool, WordHash> in_h;
  auto member = [&](const Word& w) {
    auto it = in_h.find(w);
    if (it != in_h.end()) return it->second;
    bool m = membership(h, ReducedWord::from_positive(w));
    in_h.emplace(w, m);
    return m;
  };
  std::vector<UnitaryViolation> out;
  for (std::size_t n = 2; n <= std::min(bound, s.horizon()); ++n) {
    for (const auto& w : s.words_of_length(n)) {
      if (!member(w)) continue;
      for (std::size_t i = 1; i < n; ++i) {
        Word u(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(i));
        Word v(w.begin() + static_cast<std::ptrdiff_t>(i), w.end());
        if (member(u) && !in_star(x.words(), v)) out.push_back({u, v, true});
        if (member(v) && !in_star(x.words(), u)) out.push_back({u, v, false});
      }
    }
  }
  return out;
}

}  // namespace treeset
