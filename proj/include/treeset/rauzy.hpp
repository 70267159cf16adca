#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "treeset/automaton.hpp"
#include "treeset/factor_set.hpp"
#include "treeset/words.hpp"

namespace treeset {

struct LabeledEdge {
  std::size_t from = 0;
  Letter label = 0;
  std::size_t to = 0;
  auto operator<=>(const LabeledEdge&) const = default;
};

// Directed graph with letter-labeled edges, no repeated (from, label, to).
struct LabeledGraph {
  std::vector<std::string> names;
  std::vector<LabeledEdge> edges;  // sorted
  std::size_t vertex_count() const { return names.size(); }
};

// Vertices S ∩ A^n in lexicographic order, edges (x, a, y) with xa ∈ S ∩ Ay.
struct RauzyGraph {
  std::size_t order = 0;
  std::vector<Word> vertices;
  std::vector<LabeledEdge> edges;  // sorted

  std::optional<std::size_t> find(std::span<const Letter> w) const;
  LabeledGraph labeled(const Alphabet& alphabet) const;
};

RauzyGraph rauzy_graph(const FactorSet& s, std::size_t n);
bool strongly_connected(const LabeledGraph& g);

// Classes sorted internally and by their least element.
using Partition = std::vector<std::vector<Word>>;

// Transitive closure of ax ~ bx for a, b connected in E(x), |x| = n - 1.
Partition theta_partition(const FactorSet& s, std::size_t n);

LabeledGraph quotient_graph(const RauzyGraph& g, const Partition& classes, const Alphabet& alphabet);

// Label-preserving bijection mapping vertex i of a to result[i] of b.
std::optional<std::vector<std::size_t>> find_isomorphism(const LabeledGraph& a, const LabeledGraph& b);

struct QuotientReport {
  std::size_t order = 0;
  Partition classes;
  LabeledGraph quotient;
  LabeledGraph previous;  // G_{n-1}
  std::optional<std::vector<std::size_t>> isomorphism;
};

QuotientReport check_quotient(const FactorSet& s, std::size_t n);

// G_n as a simple automaton with the given vertex as base and terminal.
Automaton rauzy_automaton(const RauzyGraph& g, const Alphabet& alphabet, std::size_t base);

struct RauzyGroupReport {
  Automaton folded;
  bool describes_free_group = false;
  std::size_t rank = 0;
};

// Throws PreconditionError if G_n is not strongly connected.
RauzyGroupReport rauzy_group(const FactorSet& s, std::size_t n, std::span<const Letter> base);

enum class ReturnSide { right, left };

struct ReturnWordSet {
  Word base;
  ReturnSide side = ReturnSide::right;
  std::vector<Word> words;  // shortlex
  // Every search branch ended in a first return (or a dead end of a closed
  // set) before the horizon.
  bool complete = true;
};

ReturnWordSet return_words(const FactorSet& s, std::span<const Letter> w, ReturnSide side = ReturnSide::right);

struct ReturnTheoremReport {
  Word base;
  std::vector<Word> returns;
  std::size_t cardinality = 0;
  std::size_t alphabet_size = 0;
  bool complete = false;
  bool card_equals_alphabet = false;
  bool generates_free_group = false;
  std::size_t rank = 0;
  bool is_basis = false;
  std::string verdict;  // basis, generates, not generating, inconclusive
};

ReturnTheoremReport verify_return_theorem(const FactorSet& s, std::span<const Letter> w);

std::string to_dot(const LabeledGraph& g, const Alphabet& alphabet, std::string_view name = "rauzy");

}  // namespace treeset
