#include "treeset/automaton.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>
#include <random>
#include <sstream>
#include <unordered_map>

#include "treeset/error.hpp"

namespace treeset {

Automaton::Automaton(Alphabet alphabet, std::size_t states, State base)
    : alphabet_(std::move(alphabet)), base_(base), terminal_(states, 0), delta_(states * alphabet_.size(), -1) {
  if (states == 0) throw InputError("an automaton needs at least one state");
  if (base >= states) throw InputError("base state out of range");
}

std::vector<State> Automaton::terminals() const {
  std::vector<State> out;
  for (State p = 0; p < state_count(); ++p) {
    if (terminal_[p]) out.push_back(p);
  }
  return out;
}

void Automaton::add_transition(State p, Letter a, State q) {
  if (p >= state_count() || q >= state_count() || a >= alphabet_.size()) {
    throw InputError("transition out of range");
  }
  auto& slot = delta_[p * alphabet_.size() + a];
  if (slot >= 0 && slot != static_cast<std::int64_t>(q)) {
    throw InputError("transition " + std::to_string(p + 1) + " " + alphabet_.token(a) + " is already defined");
  }
  slot = q;
}

std::optional<State> Automaton::next(State p, Letter a) const {
  auto v = delta_.at(p * alphabet_.size() + a);
  if (v < 0) return std::nullopt;
  return static_cast<State>(v);
}

std::optional<State> Automaton::read(State p, std::span<const Letter> w) const {
  std::optional<State> cur = p;
  for (Letter a : w) {
    cur = next(*cur, a);
    if (!cur) break;
  }
  return cur;
}

bool Automaton::accepts(std::span<const Letter> w) const {
  auto q = read(base_, w);
  return q && is_terminal(*q);
}

std::vector<Transition> Automaton::transitions() const {
  std::vector<Transition> out;
  for (State p = 0; p < state_count(); ++p) {
    for (Letter a = 0; a < alphabet_.size(); ++a) {
      if (auto q = next(p, a)) out.push_back({p, a, *q});
    }
  }
  return out;
}

std::size_t Automaton::transition_count() const {
  return static_cast<std::size_t>(std::count_if(delta_.begin(), delta_.end(), [](std::int64_t v) { return v >= 0; }));
}

void Automaton::set_labels(std::vector<std::string> labels) {
  if (!labels.empty() && labels.size() != state_count()) throw InputError("one label per state expected");
  labels_ = std::move(labels);
}

std::vector<std::optional<Word>> Automaton::access_words() const {
  std::vector<std::optional<Word>> out(state_count());
  std::deque<State> queue{base_};
  out[base_] = Word{};
  while (!queue.empty()) {
    State p = queue.front();
    queue.pop_front();
    for (Letter a = 0; a < alphabet_.size(); ++a) {
      auto q = next(p, a);
      if (q && !out[*q]) {
        Word w = *out[p];
        w.push_back(a);
        out[*q] = std::move(w);
        queue.push_back(*q);
      }
    }
  }
  return out;
}

bool Automaton::operator==(const Automaton& other) const {
  return alphabet_ == other.alphabet_ && base_ == other.base_ && terminal_ == other.terminal_ &&
         delta_ == other.delta_;
}

AutomatonFlags predicates(const Automaton& a) {
  AutomatonFlags f;
  const auto terms = a.terminals();
  f.simple = terms.size() == 1 && terms[0] == a.base();

  const std::size_t n = a.state_count();
  const std::size_t k = a.alphabet().size();
  std::vector<char> reach(n, 0);
  std::vector<char> coreach(n, 0);
  std::vector<std::vector<State>> preds(n);
  for (const auto& t : a.transitions()) preds[t.to].push_back(t.from);
  std::vector<State> stack{a.base()};
  reach[a.base()] = 1;
  while (!stack.empty()) {
    State p = stack.back();
    stack.pop_back();
    for (Letter c = 0; c < k; ++c) {
      auto q = a.next(p, c);
      if (q && !reach[*q]) {
        reach[*q] = 1;
        stack.push_back(*q);
      }
    }
  }
  stack = terms;
  for (State t : terms) coreach[t] = 1;
  while (!stack.empty()) {
    State q = stack.back();
    stack.pop_back();
    for (State p : preds[q]) {
      if (!coreach[p]) {
        coreach[p] = 1;
        stack.push_back(p);
      }
    }
  }
  f.trim = std::all_of(reach.begin(), reach.end(), [](char c) { return c != 0; }) &&
           std::all_of(coreach.begin(), coreach.end(), [](char c) { return c != 0; });
  f.complete = a.transition_count() == n * k;

  f.reversible = true;
  for (Letter c = 0; c < k && f.reversible; ++c) {
    std::vector<char> hit(n, 0);
    for (State p = 0; p < n; ++p) {
      auto q = a.next(p, c);
      if (!q) continue;
      if (hit[*q]) {
        f.reversible = false;
        break;
      }
      hit[*q] = 1;
    }
  }
  f.group = f.reversible && f.complete;
  return f;
}

namespace {

// New numbering as the list of old states in new order.
std::vector<State> canonical_order(const Automaton& a) {
  const std::size_t n = a.state_count();
  const std::size_t k = a.alphabet().size();
  std::vector<char> seen(n, 0);
  std::vector<State> order{a.base()};
  seen[a.base()] = 1;
  for (std::size_t i = 0; i < order.size(); ++i) {
    for (Letter c = 0; c < k; ++c) {
      auto q = a.next(order[i], c);
      if (q && !seen[*q]) {
        seen[*q] = 1;
        order.push_back(*q);
      }
    }
  }
  std::vector<std::vector<std::vector<State>>> preds(n, std::vector<std::vector<State>>(k));
  for (const auto& t : a.transitions()) preds[t.to][t.letter].push_back(t.from);
  for (std::size_t i = 0; i < order.size(); ++i) {
    const State p = order[i];
    for (Letter c = 0; c < k; ++c) {
      auto q = a.next(p, c);
      if (q && !seen[*q]) {
        seen[*q] = 1;
        order.push_back(*q);
      }
    }
    for (Letter c = 0; c < k; ++c) {
      for (State q : preds[p][c]) {
        if (!seen[q]) {
          seen[q] = 1;
          order.push_back(q);
        }
      }
    }
  }
  for (State p = 0; p < n; ++p) {
    if (!seen[p]) order.push_back(p);
  }
  return order;
}

Automaton renumber(const Automaton& a, const std::vector<State>& order) {
  std::vector<State> index(a.state_count());
  for (State i = 0; i < order.size(); ++i) index[order[i]] = i;
  Automaton out(a.alphabet(), a.state_count(), index[a.base()]);
  for (State p = 0; p < a.state_count(); ++p) out.set_terminal(index[p], a.is_terminal(p));
  for (const auto& t : a.transitions()) out.add_transition(index[t.from], t.letter, index[t.to]);
  if (!a.labels().empty()) {
    std::vector<std::string> labels(a.state_count());
    for (State p = 0; p < a.state_count(); ++p) labels[index[p]] = a.labels()[p];
    out.set_labels(std::move(labels));
  }
  return out;
}

std::string word_label(const Alphabet& alphabet, std::span<const Letter> w) {
  return w.empty() ? std::string("ε") : alphabet.format(w);
}

}  // namespace

Automaton canonical(const Automaton& a) { return renumber(a, canonical_order(a)); }

bool isomorphic(const Automaton& a, const Automaton& b) {
  return a.state_count() == b.state_count() && canonical(a) == canonical(b);
}

Automaton literal_automaton(const Code& x) {
  x.require_prefix("literal automaton");
  std::vector<Word> prefixes;
  for (const auto& w : x.words()) {
    for (std::size_t n = 0; n < w.size(); ++n) prefixes.emplace_back(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(n));
  }
  std::sort(prefixes.begin(), prefixes.end(), ShortlexLess{});
  prefixes.erase(std::unique(prefixes.begin(), prefixes.end()), prefixes.end());
  std::unordered_map<Word, State, WordHash> index;
  for (State i = 0; i < prefixes.size(); ++i) index.emplace(prefixes[i], i);

  Automaton out(x.alphabet(), prefixes.size(), 0);
  out.set_terminal(0);
  std::vector<std::string> labels;
  for (State p = 0; p < prefixes.size(); ++p) {
    labels.push_back(word_label(x.alphabet(), prefixes[p]));
    Word pa = prefixes[p];
    pa.push_back(0);
    for (Letter c = 0; c < x.alphabet().size(); ++c) {
      pa.back() = c;
      if (auto it = index.find(pa); it != index.end()) {
        out.add_transition(p, c, it->second);
      } else if (x.contains(pa)) {
        out.add_transition(p, c, 0);
      }
    }
  }
  out.set_labels(std::move(labels));
  return out;
}

Automaton minimize(const Automaton& a) {
  const std::size_t n = a.state_count();
  const std::size_t k = a.alphabet().size();
  const AutomatonFlags flags = predicates(a);
  std::vector<char> keep(n, 1);
  if (!flags.trim) {
    std::vector<char> reach(n, 0);
    std::vector<char> coreach(n, 0);
    std::vector<State> stack{a.base()};
    reach[a.base()] = 1;
    while (!stack.empty()) {
      State p = stack.back();
      stack.pop_back();
      for (Letter c = 0; c < k; ++c) {
        auto q = a.next(p, c);
        if (q && !reach[*q]) {
          reach[*q] = 1;
          stack.push_back(*q);
        }
      }
    }
    std::vector<std::vector<State>> preds(n);
    for (const auto& t : a.transitions()) preds[t.to].push_back(t.from);
    stack = a.terminals();
    for (State t : stack) coreach[t] = 1;
    while (!stack.empty()) {
      State q = stack.back();
      stack.pop_back();
      for (State p : preds[q]) {
        if (!coreach[p]) {
          coreach[p] = 1;
          stack.push_back(p);
        }
      }
    }
    for (State p = 0; p < n; ++p) keep[p] = reach[p] && coreach[p];
    keep[a.base()] = 1;
  }
  auto target = [&](State p, Letter c) -> long {
    auto q = a.next(p, c);
    return q && keep[*q] ? static_cast<long>(*q) : -1;
  };

  // Moore refinement; undefined transitions go to an implicit sink.
  std::vector<long> cls(n, -1);
  for (State p = 0; p < n; ++p) {
    if (keep[p]) cls[p] = a.is_terminal(p) ? 1 : 0;
  }
  std::size_t classes = 0;
  while (true) {
    std::map<std::vector<long>, long> ids;
    std::vector<long> next(n, -1);
    for (State p = 0; p < n; ++p) {
      if (!keep[p]) continue;
      std::vector<long> sig{cls[p]};
      for (Letter c = 0; c < k; ++c) {
        long q = target(p, c);
        sig.push_back(q < 0 ? -1 : cls[static_cast<std::size_t>(q)]);
      }
      next[p] = ids.emplace(std::move(sig), static_cast<long>(ids.size())).first->second;
    }
    const bool stable = ids.size() == classes;
    classes = ids.size();
    cls = std::move(next);
    if (stable) break;
  }

  Automaton out(a.alphabet(), classes, static_cast<State>(cls[a.base()]));
  for (State p = 0; p < n; ++p) {
    if (!keep[p]) continue;
    const auto cp = static_cast<State>(cls[p]);
    if (a.is_terminal(p)) out.set_terminal(cp);
    for (Letter c = 0; c < k; ++c) {
      long q = target(p, c);
      if (q >= 0) out.add_transition(cp, c, static_cast<State>(cls[static_cast<std::size_t>(q)]));
    }
  }
  return canonical(out);
}

Automaton minimal_automaton(const Code& x) { return minimize(literal_automaton(x)); }

FoldReport stallings_fold(const EdgeGraph& g, std::optional<std::uint64_t> shuffle_seed) {
  if (g.states == 0 || g.base >= g.states) throw InputError("edge graph needs a base state");
  std::vector<State> parent(g.states);
  std::iota(parent.begin(), parent.end(), State{0});
  auto find = [&](State p) {
    while (parent[p] != p) {
      parent[p] = parent[parent[p]];
      p = parent[p];
    }
    return p;
  };
  std::mt19937_64 rng(shuffle_seed.value_or(0));
  std::vector<Merge> log;
  std::vector<Transition> cur;
  while (true) {
    cur.clear();
    for (const auto& e : g.edges) cur.push_back({find(e.from), e.letter, find(e.to)});
    std::sort(cur.begin(), cur.end());
    cur.erase(std::unique(cur.begin(), cur.end()), cur.end());

    // (anchor state, forward first) ordering for the deterministic choice.
    std::vector<std::pair<State, Merge>> violations;
    for (std::size_t i = 1; i < cur.size(); ++i) {
      const auto& x = cur[i - 1];
      const auto& y = cur[i];
      if (x.from == y.from && x.letter == y.letter) {
        violations.push_back({x.from, {std::min(x.to, y.to), std::max(x.to, y.to), x.letter, true}});
      }
    }
    auto by_target = cur;
    std::sort(by_target.begin(), by_target.end(), [](const Transition& x, const Transition& y) {
      return std::tie(x.to, x.letter, x.from) < std::tie(y.to, y.letter, y.from);
    });
    for (std::size_t i = 1; i < by_target.size(); ++i) {
      const auto& x = by_target[i - 1];
      const auto& y = by_target[i];
      if (x.to == y.to && x.letter == y.letter) {
        violations.push_back({x.to, {std::min(x.from, y.from), std::max(x.from, y.from), x.letter, false}});
      }
    }
    if (violations.empty()) break;
    Merge m;
    if (shuffle_seed) {
      std::uniform_int_distribution<std::size_t> pick(0, violations.size() - 1);
      m = violations[pick(rng)].second;
    } else {
      auto best = std::min_element(violations.begin(), violations.end(), [](const auto& x, const auto& y) {
        return std::make_tuple(x.first, !x.second.forward, x.second.letter) <
               std::make_tuple(y.first, !y.second.forward, y.second.letter);
      });
      m = best->second;
    }
    parent[m.merged] = m.kept;
    log.push_back(m);
  }

  std::vector<State> roots;
  std::vector<State> id(g.states, 0);
  for (State p = 0; p < g.states; ++p) {
    if (find(p) == p) {
      id[p] = static_cast<State>(roots.size());
      roots.push_back(p);
    }
  }
  Automaton folded(g.alphabet, roots.size(), id[find(g.base)]);
  folded.set_terminal(folded.base());
  for (const auto& e : cur) folded.add_transition(id[e.from], e.letter, id[e.to]);
  const auto order = canonical_order(folded);
  std::vector<State> position(order.size());
  for (State i = 0; i < order.size(); ++i) position[order[i]] = i;
  std::vector<State> map(g.states);
  for (State p = 0; p < g.states; ++p) map[p] = position[id[find(p)]];
  return {std::move(log), renumber(folded, order), std::move(map)};
}

FoldReport stallings_fold(const Automaton& a, std::optional<std::uint64_t> shuffle_seed) {
  if (!predicates(a).simple) throw PreconditionError("Stallings folding needs a simple automaton");
  return stallings_fold(EdgeGraph{a.alphabet(), a.state_count(), a.base(), a.transitions()}, shuffle_seed);
}

EdgeGraph bouquet(const Alphabet& alphabet, std::span<const ReducedWord> x) {
  if (x.empty()) throw InputError("a bouquet needs at least one generator");
  EdgeGraph g{alphabet, 1, 0, {}};
  for (const auto& w : x) {
    if (w.empty()) throw InputError("generators must be nontrivial");
    State cur = g.base;
    for (std::size_t i = 0; i < w.size(); ++i) {
      const SignedLetter s = w.symbols()[i];
      if (s.base >= alphabet.size()) throw InputError("generator letter outside the alphabet");
      State target = g.base;
      if (i + 1 < w.size()) target = static_cast<State>(g.states++);
      if (s.inverse) {
        g.edges.push_back({target, s.base, cur});
      } else {
        g.edges.push_back({cur, s.base, target});
      }
      cur = target;
    }
  }
  return g;
}

Automaton stallings_automaton(const Alphabet& alphabet, std::span<const ReducedWord> x,
                              std::optional<std::uint64_t> shuffle_seed) {
  return stallings_fold(bouquet(alphabet, x), shuffle_seed).result;
}

Automaton stallings_automaton(const Code& x) {
  std::vector<ReducedWord> gens;
  for (const auto& w : x.words()) gens.push_back(ReducedWord::from_positive(w));
  return stallings_automaton(x.alphabet(), gens);
}

bool membership(const Automaton& a, const ReducedWord& g) {
  if (!predicates(a).reversible) throw PreconditionError("membership needs a reversible (folded) automaton");
  const std::size_t k = a.alphabet().size();
  std::vector<std::int64_t> back(a.state_count() * k, -1);
  for (const auto& t : a.transitions()) back[t.to * k + t.letter] = t.from;
  State cur = a.base();
  for (const auto& s : g.symbols()) {
    if (s.base >= k) throw InputError("letter outside the automaton alphabet");
    if (s.inverse) {
      auto p = back[cur * k + s.base];
      if (p < 0) return false;
      cur = static_cast<State>(p);
    } else {
      auto q = a.next(cur, s.base);
      if (!q) return false;
      cur = *q;
    }
  }
  return cur == a.base();
}

std::size_t rank(const Automaton& a) { return a.transition_count() + 1 - a.state_count(); }

std::optional<std::size_t> subgroup_index(const Automaton& a) {
  if (predicates(a).group) return a.state_count();
  return std::nullopt;
}

bool is_rose(const Automaton& a, std::span<const Letter> letters) {
  if (a.state_count() != 1 || a.transition_count() != letters.size()) return false;
  return std::all_of(letters.begin(), letters.end(), [&](Letter c) { return a.next(0, c).has_value(); });
}

CycleCode cycle_code(const Automaton& a, std::size_t max_len) {
  CycleCode out;
  Word path;
  std::vector<std::pair<State, Letter>> stack;  // state and next letter to try
  stack.push_back({a.base(), 0});
  const auto k = static_cast<Letter>(a.alphabet().size());
  while (!stack.empty()) {
    auto& [p, c] = stack.back();
    if (c == k) {
      stack.pop_back();
      if (!path.empty()) path.pop_back();
      continue;
    }
    const Letter letter = c++;
    auto q = a.next(p, letter);
    if (!q) continue;
    if (*q == a.base()) {
      Word w = path;
      w.push_back(letter);
      out.words.push_back(std::move(w));
    } else if (path.size() + 1 < max_len) {
      path.push_back(letter);
      stack.push_back({*q, 0});
    } else {
      out.complete = false;
    }
  }
  std::sort(out.words.begin(), out.words.end(), ShortlexLess{});
  return out;
}

std::string to_text(const Automaton& a) {
  std::ostringstream out;
  out << "base " << a.base() + 1 << "\n";
  const auto terms = a.terminals();
  if (!(terms.size() == 1 && terms[0] == a.base())) {
    out << "terminal";
    for (State t : terms) out << " " << t + 1;
    out << "\n";
  }
  for (const auto& t : a.transitions()) {
    out << t.from + 1 << " " << a.alphabet().token(t.letter) << " " << t.to + 1 << "\n";
  }
  return out.str();
}

std::string to_dot(const Automaton& a, std::string_view name) {
  std::ostringstream out;
  out << "digraph " << name << " {\n  rankdir=LR;\n  node [shape=circle];\n";
  for (State p = 0; p < a.state_count(); ++p) {
    out << "  " << p + 1 << " [label=\"" << (a.labels().empty() ? std::to_string(p + 1) : a.labels()[p]) << "\"";
    if (p == a.base()) {
      out << ", shape=doublecircle";
    } else if (a.is_terminal(p)) {
      out << ", peripheries=2";
    }
    out << "];\n";
  }
  std::map<std::pair<State, State>, std::string> grouped;
  for (const auto& t : a.transitions()) {
    auto& label = grouped[{t.from, t.to}];
    if (!label.empty()) label += ",";
    label += a.alphabet().token(t.letter);
  }
  for (const auto& [ends, label] : grouped) {
    out << "  " << ends.first + 1 << " -> " << ends.second + 1 << " [label=\"" << label << "\"];\n";
  }
  out << "}\n";
  return out.str();
}

}  // namespace treeset
