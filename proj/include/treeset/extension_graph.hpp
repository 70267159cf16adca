#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "treeset/factor_set.hpp"
#include "treeset/words.hpp"

namespace treeset {

enum class Side { left, right };

struct Vertex {
  Side side = Side::left;
  std::size_t index = 0;
  auto operator<=>(const Vertex&) const = default;
};

// Undirected bipartite graph on two tagged vertex copies, so the same word on
// both sides gives two distinct vertices. Used for extension graphs,
// generalized extension graphs and incidence graphs of codes.
struct BipartiteGraph {
  std::vector<Word> left;   // shortlex order
  std::vector<Word> right;  // shortlex order
  std::vector<std::pair<std::size_t, std::size_t>> edges;  // (left, right), sorted

  std::size_t vertex_count() const { return left.size() + right.size(); }
  bool has_edge(std::size_t l, std::size_t r) const;
};

using ExtensionGraph = BipartiteGraph;

struct GraphVerdict {
  bool acyclic = true;
  bool connected = false;
  bool tree = false;
  std::size_t components = 0;
  // Shortest cycle, least in lexicographic order over (left vertices, then
  // right vertices), as the closed vertex sequence without repeating the
  // start.
  std::optional<std::vector<Vertex>> cycle;
};

ExtensionGraph extension_graph(const FactorSet& s, std::span<const Letter> w);

// Left vertices are U(w) = {u in U | uw in S}, right vertices V(w) = {v in V
// | wv in S}, edges the pairs with uwv in S.
ExtensionGraph generalized_extension_graph(const FactorSet& s, std::span<const Letter> w, std::span<const Word> u,
                                           std::span<const Word> v);

GraphVerdict graph_classify(const BipartiteGraph& g);

// Component index of every vertex, left vertices first.
std::vector<std::size_t> component_labels(const BipartiteGraph& g);

struct FailingWord {
  Word word;
  bool biextendable = true;
  GraphVerdict verdict;
};

struct SetClassification {
  std::size_t max_len = 0;
  std::size_t inspected = 0;  // number of extension graphs examined
  bool biextendable = true;
  // Each flag includes biextendability, as in the definition of acyclic,
  // connected and tree sets.
  bool acyclic = false;
  bool connected = false;
  bool tree = false;
  // Graph properties alone, ignoring biextendability.
  bool graphs_acyclic = true;
  bool graphs_connected = true;
  std::vector<FailingWord> failing;
};

// Inspects ε and the bispecial words of length at most max_len unless
// exhaustive is set, in which case every word is inspected.
SetClassification set_classify(const FactorSet& s, std::size_t max_len, bool exhaustive = false);

std::string to_dot(const BipartiteGraph& g, const Alphabet& alphabet, std::string_view name = "extension");

}  // namespace treeset
