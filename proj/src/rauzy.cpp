#include "treeset/rauzy.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include "treeset/error.hpp"
#include "treeset/extension_graph.hpp"

namespace treeset {

std::optional<std::size_t> RauzyGraph::find(std::span<const Letter> w) const {
  Word probe(w.begin(), w.end());
  auto it = std::lower_bound(vertices.begin(), vertices.end(), probe);
  if (it == vertices.end() || *it != probe) return std::nullopt;
  return static_cast<std::size_t>(it - vertices.begin());
}

namespace {

std::string word_label(const Alphabet& alphabet, std::span<const Letter> w) {
  return w.empty() ? std::string("ε") : alphabet.format(w);
}

}  // namespace

LabeledGraph RauzyGraph::labeled(const Alphabet& alphabet) const {
  LabeledGraph g;
  for (const auto& v : vertices) g.names.push_back(word_label(alphabet, v));
  g.edges = edges;
  return g;
}

RauzyGraph rauzy_graph(const FactorSet& s, std::size_t n) {
  if (s.truncated() && n + 1 > s.horizon()) {
    throw HorizonError("Rauzy graph of order " + std::to_string(n) + " needs horizon at least " + std::to_string(n + 1));
  }
  RauzyGraph g;
  g.order = n;
  g.vertices = s.words_of_length(n);
  for (std::size_t i = 0; i < g.vertices.size(); ++i) {
    for (Letter a : s.right_letters(g.vertices[i])) {
      Word xa = g.vertices[i];
      xa.push_back(a);
      auto j = g.find(std::span<const Letter>(xa).subspan(1));
      if (j) g.edges.push_back({i, a, *j});
    }
  }
  std::sort(g.edges.begin(), g.edges.end());
  return g;
}

bool strongly_connected(const LabeledGraph& g) {
  const std::size_t n = g.vertex_count();
  if (n == 0) return false;
  auto reaches_all = [&](bool forward) {
    std::vector<std::vector<std::size_t>> adj(n);
    for (const auto& e : g.edges) {
      if (forward) {
        adj[e.from].push_back(e.to);
      } else {
        adj[e.to].push_back(e.from);
      }
    }
    std::vector<char> seen(n, 0);
    std::vector<std::size_t> stack{0};
    seen[0] = 1;
    std::size_t count = 1;
    while (!stack.empty()) {
      std::size_t v = stack.back();
      stack.pop_back();
      for (std::size_t u : adj[v]) {
        if (!seen[u]) {
          seen[u] = 1;
          ++count;
          stack.push_back(u);
        }
      }
    }
    return count == n;
  };
  return reaches_all(true) && reaches_all(false);
}

Partition theta_partition(const FactorSet& s, std::size_t n) {
  if (n == 0) throw InputError("θ_n needs n >= 1");
  const auto& vertices = s.words_of_length(n);
  std::vector<std::size_t> parent(vertices.size());
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  std::function<std::size_t(std::size_t)> find = [&](std::size_t v) {
    return parent[v] == v ? v : parent[v] = find(parent[v]);
  };
  auto index_of = [&](const Word& w) {
    auto it = std::lower_bound(vertices.begin(), vertices.end(), w);
    return static_cast<std::size_t>(it - vertices.begin());
  };
  for (const auto& x : s.words_of_length(n - 1)) {
    const ExtensionGraph e = extension_graph(s, x);
    const auto labels = component_labels(e);
    for (std::size_t i = 0; i < e.left.size(); ++i) {
      for (std::size_t j = i + 1; j < e.left.size(); ++j) {
        if (labels[i] != labels[j]) continue;
        std::size_t u = index_of(concat(e.left[i], x));
        std::size_t v = index_of(concat(e.left[j], x));
        parent[find(u)] = find(v);
      }
    }
  }
  std::map<std::size_t, std::vector<Word>> grouped;
  for (std::size_t v = 0; v < vertices.size(); ++v) grouped[find(v)].push_back(vertices[v]);
  Partition out;
  for (auto& [root, cls] : grouped) out.push_back(std::move(cls));
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.front() < b.front(); });
  return out;
}

LabeledGraph quotient_graph(const RauzyGraph& g, const Partition& classes, const Alphabet& alphabet) {
  std::vector<std::size_t> cls(g.vertices.size(), classes.size());
  LabeledGraph out;
  for (std::size_t c = 0; c < classes.size(); ++c) {
    std::string name = "{";
    for (std::size_t i = 0; i < classes[c].size(); ++i) {
      auto v = g.find(classes[c][i]);
      if (!v) throw InputError("partition class holds a non-vertex");
      cls[*v] = c;
      if (i > 0) name += ",";
      name += word_label(alphabet, classes[c][i]);
    }
    out.names.push_back(name + "}");
  }
  if (std::find(cls.begin(), cls.end(), classes.size()) != cls.end()) {
    throw InputError("partition does not cover the vertex set");
  }
  for (const auto& e : g.edges) out.edges.push_back({cls[e.from], e.label, cls[e.to]});
  std::sort(out.edges.begin(), out.edges.end());
  out.edges.erase(std::unique(out.edges.begin(), out.edges.end()), out.edges.end());
  return out;
}

namespace {

// Colors stable under refinement by labeled in/out neighborhoods, computed
// jointly on both graphs so that colors are comparable.
std::pair<std::vector<std::size_t>, std::vector<std::size_t>> refine(const LabeledGraph& a, const LabeledGraph& b) {
  std::vector<std::size_t> ca(a.vertex_count(), 0);
  std::vector<std::size_t> cb(b.vertex_count(), 0);
  std::size_t classes = 1;
  while (true) {
    using Signature = std::tuple<std::size_t, std::vector<std::pair<Letter, std::size_t>>,
                                 std::vector<std::pair<Letter, std::size_t>>>;
    auto signatures = [](const LabeledGraph& g, const std::vector<std::size_t>& c) {
      std::vector<Signature> sig(g.vertex_count());
      for (std::size_t v = 0; v < g.vertex_count(); ++v) std::get<0>(sig[v]) = c[v];
      for (const auto& e : g.edges) {
        std::get<1>(sig[e.from]).push_back({e.label, c[e.to]});
        std::get<2>(sig[e.to]).push_back({e.label, c[e.from]});
      }
      for (auto& s : sig) {
        std::sort(std::get<1>(s).begin(), std::get<1>(s).end());
        std::sort(std::get<2>(s).begin(), std::get<2>(s).end());
      }
      return sig;
    };
    auto sa = signatures(a, ca);
    auto sb = signatures(b, cb);
    std::map<Signature, std::size_t> ids;
    for (const auto& s : sa) ids.emplace(s, 0);
    for (const auto& s : sb) ids.emplace(s, 0);
    std::size_t next = 0;
    for (auto& [s, id] : ids) id = next++;
    for (std::size_t v = 0; v < sa.size(); ++v) ca[v] = ids[sa[v]];
    for (std::size_t v = 0; v < sb.size(); ++v) cb[v] = ids[sb[v]];
    if (ids.size() == classes) break;
    classes = ids.size();
  }
  return {ca, cb};
}

}  // namespace

std::optional<std::vector<std::size_t>> find_isomorphism(const LabeledGraph& a, const LabeledGraph& b) {
  const std::size_t n = a.vertex_count();
  if (n != b.vertex_count() || a.edges.size() != b.edges.size()) return std::nullopt;
  auto [ca, cb] = refine(a, b);
  {
    auto sa = ca;
    auto sb = cb;
    std::sort(sa.begin(), sa.end());
    std::sort(sb.begin(), sb.end());
    if (sa != sb) return std::nullopt;
  }
  const std::set<LabeledEdge> edges_b(b.edges.begin(), b.edges.end());
  std::vector<std::vector<LabeledEdge>> incident(n);
  for (const auto& e : a.edges) {
    incident[std::max(e.from, e.to)].push_back(e);
  }
  std::vector<std::size_t> map(n, n);
  std::vector<char> used(n, 0);
  std::function<bool(std::size_t)> extend = [&](std::size_t v) {
    if (v == n) return true;
    for (std::size_t w = 0; w < n; ++w) {
      if (used[w] || cb[w] != ca[v]) continue;
      map[v] = w;
      bool ok = true;
      for (const auto& e : incident[v]) {
        if (!edges_b.count({map[e.from], e.label, map[e.to]})) {
          ok = false;
          break;
        }
      }
      if (ok) {
        used[w] = 1;
        if (extend(v + 1)) return true;
        used[w] = 0;
      }
    }
    map[v] = n;
    return false;
  };
  if (!extend(0)) return std::nullopt;
  return map;
}

QuotientReport check_quotient(const FactorSet& s, std::size_t n) {
  QuotientReport out;
  out.order = n;
  out.classes = theta_partition(s, n);
  const RauzyGraph g = rauzy_graph(s, n);
  out.quotient = quotient_graph(g, out.classes, s.alphabet());
  out.previous = rauzy_graph(s, n - 1).labeled(s.alphabet());
  out.isomorphism = find_isomorphism(out.quotient, out.previous);
  return out;
}

Automaton rauzy_automaton(const RauzyGraph& g, const Alphabet& alphabet, std::size_t base) {
  if (base >= g.vertices.size()) throw InputError("base vertex out of range");
  Automaton a(alphabet, g.vertices.size(), static_cast<State>(base));
  a.set_terminal(a.base());
  for (const auto& e : g.edges) a.add_transition(static_cast<State>(e.from), e.label, static_cast<State>(e.to));
  std::vector<std::string> labels;
  for (const auto& v : g.vertices) labels.push_back(word_label(alphabet, v));
  a.set_labels(std::move(labels));
  return a;
}

RauzyGroupReport rauzy_group(const FactorSet& s, std::size_t n, std::span<const Letter> base) {
  if (base.size() != n) throw InputError("base vertex must have length " + std::to_string(n));
  const RauzyGraph g = rauzy_graph(s, n);
  auto v = g.find(base);
  if (!v) throw NotAFactorError("'" + s.format(base) + "' is not a vertex of the Rauzy graph");
  if (!strongly_connected(g.labeled(s.alphabet()))) {
    throw PreconditionError("Rauzy graph of order " + std::to_string(n) + " is not strongly connected");
  }
  Automaton folded = stallings_fold(rauzy_automaton(g, s.alphabet(), *v)).result;
  const auto letters = s.letters();
  RauzyGroupReport out{std::move(folded), false, 0};
  out.describes_free_group = is_rose(out.folded, letters);
  out.rank = rank(out.folded);
  return out;
}

ReturnWordSet return_words(const FactorSet& s, std::span<const Letter> w, ReturnSide side) {
  s.require_factor(w);
  ReturnWordSet out;
  out.base.assign(w.begin(), w.end());
  out.side = side;
  const bool right = side == ReturnSide::right;
  std::vector<Word> stack{out.base};
  while (!stack.empty()) {
    Word u = std::move(stack.back());
    stack.pop_back();
    if (s.truncated() && u.size() >= s.horizon()) {
      out.complete = false;
      continue;
    }
    const auto letters = right ? s.right_letters(u) : s.left_letters(u);
    for (Letter a : letters) {
      Word v;
      if (right) {
        v = u;
        v.push_back(a);
      } else {
        v.push_back(a);
        v.insert(v.end(), u.begin(), u.end());
      }
      if (right && is_suffix(w, v)) {
        out.words.emplace_back(v.begin() + static_cast<std::ptrdiff_t>(w.size()), v.end());
      } else if (!right && is_prefix(w, v)) {
        out.words.emplace_back(v.begin(), v.end() - static_cast<std::ptrdiff_t>(w.size()));
      } else {
        stack.push_back(std::move(v));
      }
    }
  }
  std::sort(out.words.begin(), out.words.end(), ShortlexLess{});
  return out;
}

ReturnTheoremReport verify_return_theorem(const FactorSet& s, std::span<const Letter> w) {
  const ReturnWordSet r = return_words(s, w);
  ReturnTheoremReport out;
  out.base = r.base;
  out.returns = r.words;
  out.complete = r.complete;
  out.cardinality = r.words.size();
  const auto letters = s.letters();
  out.alphabet_size = letters.size();
  out.card_equals_alphabet = out.cardinality == out.alphabet_size;
  if (!r.words.empty()) {
    std::vector<ReducedWord> gens;
    for (const auto& x : r.words) gens.push_back(ReducedWord::from_positive(x));
    const Automaton folded = stallings_automaton(s.alphabet(), gens);
    out.generates_free_group = is_rose(folded, letters);
    out.rank = rank(folded);
  }
  out.is_basis = out.generates_free_group && out.rank == out.alphabet_size && out.card_equals_alphabet;
  if (!out.complete) {
    out.verdict = "inconclusive";
  } else if (out.is_basis) {
    out.verdict = "basis";
  } else if (out.generates_free_group) {
    out.verdict = "generates";
  } else {
    out.verdict = "not generating";
  }
  return out;
}

std::string to_dot(const LabeledGraph& g, const Alphabet& alphabet, std::string_view name) {
  std::ostringstream out;
  out << "digraph " << name << " {\n";
  for (std::size_t v = 0; v < g.vertex_count(); ++v) out << "  v" << v << " [label=\"" << g.names[v] << "\"];\n";
  for (const auto& e : g.edges) {
    out << "  v" << e.from << " -> v" << e.to << " [label=\"" << alphabet.token(e.label) << "\"];\n";
  }
  out << "}\n";
  return out.str();
}

}  // namespace treeset
