#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "treeset/automaton.hpp"
#include "treeset/codes.hpp"
#include "treeset/error.hpp"
#include "treeset/extension_graph.hpp"
#include "treeset/factor_set.hpp"
#include "treeset/rauzy.hpp"

namespace treeset {

// Two θ_X-equivalent prefixes p, q whose a-successors in the literal
// automaton fall into different classes.
class ConsistencyError : public Error {
 public:
  ConsistencyError(const std::string& message, Word p, Word q, Letter a)
      : Error(message), p(std::move(p)), q(std::move(q)), letter(a) {}
  Word p;
  Word q;
  Letter letter;
};

// Left vertices: nonempty proper prefixes; right vertices: nonempty proper
// suffixes; an edge (p, s) whenever ps ∈ X.
BipartiteGraph incidence_graph(const Code& x);

// Classes of θ_X over the proper prefixes of X, shortlex; {ε} comes first.
Partition theta_x_partition(const Code& x);

// Quotient of the literal automaton by θ_X. Throws ConsistencyError when
// the induced transitions are not well defined.
Automaton coset_automaton(const Code& x);

// Code words whose path from the base returns to it before the end (or
// fails), i.e. the words of X not in the code Z generating the submonoid the
// automaton recognizes.
std::vector<Word> words_outside_return_code(const Automaton& b, const Code& x);

struct FreenessReport {
  bool free = false;
  std::size_t rank = 0;
  std::size_t size = 0;
  Automaton folded;
};

FreenessReport is_free(const Code& x);

struct SaturationReport {
  std::size_t bound = 0;
  std::size_t checked = 0;
  // Stored words of length at most the bound in <X> but not in X*.
  std::vector<Word> violations;
  // Words of length at most max|X| in <X> \ X* that are not in the set.
  std::vector<Word> outside_witnesses;
  bool saturated = false;
};

// Throws ContainmentError unless X ⊆ S and HorizonError if the bound
// exceeds the horizon of a truncated set.
SaturationReport verify_saturation(const Code& x, const FactorSet& s, std::size_t bound);

struct UnitaryViolation {
  Word u;
  Word v;
  // Right: u, uv ∈ <X> ∩ S and v ∉ X*. Left: v, uv ∈ <X> ∩ S and u ∉ X*.
  bool right = true;
};

std::vector<UnitaryViolation> verify_unitary_corollary(const Code& x, const FactorSet& s, std::size_t bound);

}  // namespace treeset
