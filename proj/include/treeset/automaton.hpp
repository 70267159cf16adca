#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "treeset/codes.hpp"
#include "treeset/words.hpp"

namespace treeset {

using State = std::uint32_t;

struct Transition {
  State from = 0;
  Letter letter = 0;
  State to = 0;
  auto operator<=>(const Transition&) const = default;
};

// Deterministic automaton with a partial transition function and a base
// (initial) state.
class Automaton {
 public:
  Automaton(Alphabet alphabet, std::size_t states, State base);

  const Alphabet& alphabet() const { return alphabet_; }
  std::size_t state_count() const { return terminal_.size(); }
  State base() const { return base_; }

  bool is_terminal(State p) const { return terminal_.at(p) != 0; }
  void set_terminal(State p, bool terminal = true) { terminal_.at(p) = terminal ? 1 : 0; }
  std::vector<State> terminals() const;

  // Throws InputError if (p, a) already leads elsewhere.
  void add_transition(State p, Letter a, State q);
  std::optional<State> next(State p, Letter a) const;
  std::optional<State> read(State p, std::span<const Letter> w) const;
  bool accepts(std::span<const Letter> w) const;

  std::vector<Transition> transitions() const;  // sorted
  std::size_t transition_count() const;

  // Optional display names, one per state.
  const std::vector<std::string>& labels() const { return labels_; }
  void set_labels(std::vector<std::string> labels);

  // Shortlex-least word leading from the base to each state.
  std::vector<std::optional<Word>> access_words() const;

  bool operator==(const Automaton& other) const;

 private:
  Alphabet alphabet_;
  State base_;
  std::vector<char> terminal_;
  std::vector<std::int64_t> delta_;  // state * |A| + letter, -1 when undefined
  std::vector<std::string> labels_;
};

struct AutomatonFlags {
  bool simple = false;      // the base is the only terminal state
  bool trim = false;
  bool complete = false;
  bool reversible = false;  // every letter acts injectively
  bool group = false;       // every letter acts as a permutation
};

AutomatonFlags predicates(const Automaton& a);

// Renumbers states breadth first from the base: first along forward edges in
// alphabet order, then, for states reached only through generalized paths,
// along forward and backward edges. States never reached keep their relative
// order at the end.
Automaton canonical(const Automaton& a);
bool isomorphic(const Automaton& a, const Automaton& b);

// States are the proper prefixes of X in shortlex order; base ε.
Automaton literal_automaton(const Code& x);
Automaton minimal_automaton(const Code& x);
// Trims and minimizes by partition refinement.
Automaton minimize(const Automaton& a);

struct Merge {
  State kept = 0;    // input state numbering
  State merged = 0;
  Letter letter = 0;
  // Forward: two edges labeled letter leave one state. Backward: two edges
  // labeled letter enter one state (p·a = q·a).
  bool forward = false;
};

struct FoldReport {
  std::vector<Merge> merges;
  Automaton result;
  std::vector<State> state_map;  // input state -> result state
};

// Edge-list form used for bouquets and other nondeterministic inputs.
struct EdgeGraph {
  Alphabet alphabet;
  std::size_t states = 0;
  State base = 0;
  std::vector<Transition> edges;
};

// Folds until every letter acts as an injective partial map in both
// directions. With a seed, each step picks a violation uniformly at random.
FoldReport stallings_fold(const EdgeGraph& g, std::optional<std::uint64_t> shuffle_seed = std::nullopt);
FoldReport stallings_fold(const Automaton& a, std::optional<std::uint64_t> shuffle_seed = std::nullopt);

// Bouquet of one petal per generator, inverse letters traversed backward.
EdgeGraph bouquet(const Alphabet& alphabet, std::span<const ReducedWord> x);
Automaton stallings_automaton(const Alphabet& alphabet, std::span<const ReducedWord> x,
                              std::optional<std::uint64_t> shuffle_seed = std::nullopt);
Automaton stallings_automaton(const Code& x);

// Throws PreconditionError unless the automaton is reversible.
bool membership(const Automaton& a, const ReducedWord& g);
// Edges - states + 1 of a connected automaton.
std::size_t rank(const Automaton& a);
// Number of states for a group automaton, nullopt (infinite) otherwise.
std::optional<std::size_t> subgroup_index(const Automaton& a);
// The automaton is the one-state automaton with a loop for every given
// letter and nothing else.
bool is_rose(const Automaton& a, std::span<const Letter> letters);

struct CycleCode {
  std::vector<Word> words;  // shortlex
  bool complete = true;     // no path of length max_len was cut off
};

// Labels of the paths from the base back to it without passing through it
// in between, up to length max_len.
CycleCode cycle_code(const Automaton& a, std::size_t max_len);

// States are written 1-based. The base state comes first in the text form.
std::string to_text(const Automaton& a);
std::string to_dot(const Automaton& a, std::string_view name = "automaton");

}  // namespace treeset
