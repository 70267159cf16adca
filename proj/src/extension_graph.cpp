#include "treeset/extension_graph.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <numeric>
#include <queue>
#include <sstream>

#include "treeset/error.hpp"

namespace treeset {

bool BipartiteGraph::has_edge(std::size_t l, std::size_t r) const {
  return std::binary_search(edges.begin(), edges.end(), std::make_pair(l, r));
}

ExtensionGraph extension_graph(const FactorSet& s, std::span<const Letter> w) {
  ExtensionStats stats = extension_stats(s, w);
  ExtensionGraph g;
  for (Letter a : stats.left) g.left.push_back({a});
  for (Letter b : stats.right) g.right.push_back({b});
  for (auto [a, b] : stats.pairs) {
    auto l = static_cast<std::size_t>(std::find(stats.left.begin(), stats.left.end(), a) - stats.left.begin());
    auto r = static_cast<std::size_t>(std::find(stats.right.begin(), stats.right.end(), b) - stats.right.begin());
    g.edges.emplace_back(l, r);
  }
  std::sort(g.edges.begin(), g.edges.end());
  return g;
}

ExtensionGraph generalized_extension_graph(const FactorSet& s, std::span<const Letter> w, std::span<const Word> u,
                                           std::span<const Word> v) {
  std::size_t longest_u = 0;
  std::size_t longest_v = 0;
  for (const auto& x : u) longest_u = std::max(longest_u, x.size());
  for (const auto& x : v) longest_v = std::max(longest_v, x.size());
  s.require_factor(w, s.truncated() ? longest_u + longest_v : 0);

  ExtensionGraph g;
  for (const auto& x : u) {
    if (s.contains(concat(x, w))) g.left.push_back(x);
  }
  for (const auto& x : v) {
    if (s.contains(concat(w, x))) g.right.push_back(x);
  }
  std::sort(g.left.begin(), g.left.end(), ShortlexLess{});
  g.left.erase(std::unique(g.left.begin(), g.left.end()), g.left.end());
  std::sort(g.right.begin(), g.right.end(), ShortlexLess{});
  g.right.erase(std::unique(g.right.begin(), g.right.end()), g.right.end());
  for (std::size_t l = 0; l < g.left.size(); ++l) {
    Word lw = concat(g.left[l], w);
    for (std::size_t r = 0; r < g.right.size(); ++r) {
      if (s.contains(concat(lw, g.right[r]))) g.edges.emplace_back(l, r);
    }
  }
  return g;
}

namespace {

// Adjacency on the flat vertex numbering: left vertices 0..L-1, right
// vertices L..L+R-1.
std::vector<std::vector<std::size_t>> adjacency(const BipartiteGraph& g) {
  const std::size_t nl = g.left.size();
  std::vector<std::vector<std::size_t>> adj(g.vertex_count());
  for (auto [l, r] : g.edges) {
    adj[l].push_back(nl + r);
    adj[nl + r].push_back(l);
  }
  for (auto& row : adj) std::sort(row.begin(), row.end());
  return adj;
}

std::size_t girth(const std::vector<std::vector<std::size_t>>& adj) {
  std::size_t best = std::numeric_limits<std::size_t>::max();
  const std::size_t n = adj.size();
  for (std::size_t s = 0; s < n; ++s) {
    std::vector<std::size_t> dist(n, std::numeric_limits<std::size_t>::max());
    std::vector<std::size_t> parent(n, n);
    std::queue<std::size_t> q;
    dist[s] = 0;
    q.push(s);
    while (!q.empty()) {
      std::size_t x = q.front();
      q.pop();
      for (std::size_t y : adj[x]) {
        if (dist[y] == std::numeric_limits<std::size_t>::max()) {
          dist[y] = dist[x] + 1;
          parent[y] = x;
          q.push(y);
        } else if (parent[x] != y) {
          best = std::min(best, dist[x] + dist[y] + 1);
        }
      }
    }
  }
  return best;
}

std::vector<std::size_t> least_cycle(const std::vector<std::vector<std::size_t>>& adj, std::size_t length) {
  std::vector<std::size_t> best;
  std::vector<std::size_t> path;
  std::vector<char> used(adj.size(), 0);
  std::function<void(std::size_t)> extend = [&](std::size_t start) {
    const std::size_t x = path.back();
    if (path.size() == length) {
      if (std::binary_search(adj[x].begin(), adj[x].end(), start) && (best.empty() || path < best)) best = path;
      return;
    }
    for (std::size_t y : adj[x]) {
      if (y <= start || used[y]) continue;
      if (!best.empty() && std::lexicographical_compare(best.begin(), best.begin() + static_cast<std::ptrdiff_t>(path.size()),
                                                        path.begin(), path.end())) {
        return;
      }
      used[y] = 1;
      path.push_back(y);
      extend(start);
      path.pop_back();
      used[y] = 0;
    }
  };
  for (std::size_t s = 0; s < adj.size() && best.empty(); ++s) {
    path = {s};
    used[s] = 1;
    extend(s);
    used[s] = 0;
  }
  return best;
}

}  // namespace

std::vector<std::size_t> component_labels(const BipartiteGraph& g) {
  const auto adj = adjacency(g);
  const std::size_t none = std::numeric_limits<std::size_t>::max();
  std::vector<std::size_t> label(adj.size(), none);
  std::size_t next = 0;
  for (std::size_t s = 0; s < adj.size(); ++s) {
    if (label[s] != none) continue;
    std::vector<std::size_t> stack{s};
    label[s] = next;
    while (!stack.empty()) {
      std::size_t x = stack.back();
      stack.pop_back();
      for (std::size_t y : adj[x]) {
        if (label[y] == none) {
          label[y] = next;
          stack.push_back(y);
        }
      }
    }
    ++next;
  }
  return label;
}

GraphVerdict graph_classify(const BipartiteGraph& g) {
  GraphVerdict out;
  const auto labels = component_labels(g);
  out.components = labels.empty() ? 0 : *std::max_element(labels.begin(), labels.end()) + 1;
  // A simple graph is a forest exactly when |E| = |V| - c.
  out.acyclic = g.edges.size() + out.components == g.vertex_count();
  out.connected = out.components == 1;
  out.tree = out.acyclic && out.connected;
  if (!out.acyclic) {
    const auto adj = adjacency(g);
    const auto cycle = least_cycle(adj, girth(adj));
    std::vector<Vertex> vertices;
    for (std::size_t x : cycle) {
      if (x < g.left.size()) {
        vertices.push_back({Side::left, x});
      } else {
        vertices.push_back({Side::right, x - g.left.size()});
      }
    }
    out.cycle = std::move(vertices);
  }
  return out;
}

SetClassification set_classify(const FactorSet& s, std::size_t max_len, bool exhaustive) {
  if (max_len > s.extension_limit()) {
    throw HorizonError("classification up to length " + std::to_string(max_len) + " exceeds the observable limit " +
                       std::to_string(s.extension_limit()));
  }
  SetClassification out;
  out.max_len = max_len;
  for (std::size_t n = 0; n <= max_len; ++n) {
    for (const auto& w : s.words_of_length(n)) {
      ExtensionStats stats = extension_stats(s, w);
      const bool biext = stats.biextendable();
      if (!biext) out.biextendable = false;
      if (!exhaustive && !w.empty() && !stats.bispecial() && biext) continue;
      ++out.inspected;
      GraphVerdict verdict = graph_classify(extension_graph(s, w));
      if (!verdict.acyclic) out.graphs_acyclic = false;
      if (!verdict.connected) out.graphs_connected = false;
      if (!biext || !verdict.tree) out.failing.push_back({w, biext, std::move(verdict)});
    }
  }
  out.acyclic = out.biextendable && out.graphs_acyclic;
  out.connected = out.biextendable && out.graphs_connected;
  out.tree = out.acyclic && out.connected;
  return out;
}

std::string to_dot(const BipartiteGraph& g, const Alphabet& alphabet, std::string_view name) {
  auto label = [&](const Word& w) { return w.empty() ? std::string("ε") : alphabet.format(w); };
  std::ostringstream out;
  out << "graph " << name << " {\n";
  for (const auto& w : g.left) out << "  \"L_" << label(w) << "\" [label=\"" << label(w) << "\"];\n";
  for (const auto& w : g.right) out << "  \"R_" << label(w) << "\" [label=\"" << label(w) << "\"];\n";
  for (auto [l, r] : g.edges) out << "  \"L_" << label(g.left[l]) << "\" -- \"R_" << label(g.right[r]) << "\";\n";
  out << "}\n";
  return out.str();
}

}  // namespace treeset
