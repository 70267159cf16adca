#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include "treeset/morphism.hpp"
#include "treeset/words.hpp"

namespace treeset {

// Infinite word f^ω(seed), optionally pushed through a second morphism.
struct MorphicSource {
  Morphism generator;
  Letter seed = 0;
  std::optional<Morphism> coding;

  const Alphabet& alphabet() const { return coding ? coding->codomain() : generator.codomain(); }
  std::string describe() const;
};

struct BuildOptions {
  // Extra iterations after two consecutive iterates agree.
  std::size_t margin = 2;
  // Upper bound on the fixpoint prefix length before giving up.
  std::size_t max_prefix = std::size_t{1} << 24;
};

// How a morphic set was stabilized.
struct Stabilization {
  std::size_t iterations = 0;
  std::size_t prefix_length = 0;
  std::size_t margin = 0;
};

// All factors of length at most the horizon N of some source. A truncated set
// stands for an infinite factorial set seen through the horizon: words longer
// than N are unknown rather than absent. A closed set (explicit finite
// source) is exactly what is stored.
class FactorSet {
 public:
  static FactorSet from_morphic(const MorphicSource& source, std::size_t horizon, const BuildOptions& options = {});
  // Factors of a single finite word, cut at the horizon.
  static FactorSet from_word(const Alphabet& alphabet, std::span<const Letter> word, std::size_t horizon,
                             std::string provenance = "word");
  // Factorial closure of an explicit list. Without a horizon the set is
  // closed and its horizon is the longest word.
  static FactorSet from_words(const Alphabet& alphabet, std::span<const Word> words,
                              std::optional<std::size_t> horizon = std::nullopt,
                              std::string provenance = "word list");
  // Set whose per-length layers are already complete and factorial.
  static FactorSet from_layers(const Alphabet& alphabet, std::vector<std::vector<Word>> layers, std::size_t horizon,
                               bool truncated, std::string provenance);

  const Alphabet& alphabet() const { return alphabet_; }
  std::size_t horizon() const { return horizon_; }
  bool truncated() const { return truncated_; }
  const std::string& provenance() const { return provenance_; }
  const std::optional<Stabilization>& stabilization() const { return stabilization_; }

  bool contains(std::span<const Letter> w) const;
  // Words of length n in lexicographic order; empty beyond the horizon.
  const std::vector<Word>& words_of_length(std::size_t n) const;
  std::size_t count(std::size_t n) const { return words_of_length(n).size(); }
  // All stored words in shortlex order.
  std::vector<Word> all_words() const;
  std::size_t size() const { return members_.size(); }
  // Letters occurring in the set (S ∩ A) in alphabet order.
  std::vector<Letter> letters() const;

  // Throws NotAFactorError if w is not stored and, for truncated sets,
  // HorizonError if |w| + extra exceeds the horizon.
  void require_factor(std::span<const Letter> w, std::size_t extra = 0) const;
  // Largest length for which two-sided extensions are fully observable.
  std::size_t extension_limit() const;

  std::vector<Letter> left_letters(std::span<const Letter> w) const;
  std::vector<Letter> right_letters(std::span<const Letter> w) const;

  // Every stored word shorter than the horizon extends to the right inside
  // the set.
  bool right_extendable_below_horizon() const;

  std::string format(std::span<const Letter> w) const { return alphabet_.format(w); }

 private:
  FactorSet(Alphabet alphabet, std::size_t horizon, bool truncated, std::string provenance);
  void insert_with_factors(std::span<const Letter> w);
  void finish();

  Alphabet alphabet_;
  std::size_t horizon_;
  bool truncated_;
  std::string provenance_;
  std::optional<Stabilization> stabilization_;
  std::vector<std::vector<Word>> layers_;
  std::unordered_set<Word, WordHash> members_;
};

FactorSet build_factor_set(const MorphicSource& source, std::size_t horizon, const BuildOptions& options = {});
FactorSet build_factor_set(const Alphabet& alphabet, std::span<const Letter> word, std::size_t horizon);
FactorSet build_factor_set(const Alphabet& alphabet, std::span<const Word> words,
                           std::optional<std::size_t> horizon = std::nullopt);

struct ExtensionStats {
  std::vector<Letter> left;
  std::vector<Letter> right;
  std::vector<std::pair<Letter, Letter>> pairs;

  std::size_t l() const { return left.size(); }
  std::size_t r() const { return right.size(); }
  std::size_t e() const { return pairs.size(); }
  long m() const { return static_cast<long>(e()) - static_cast<long>(l()) - static_cast<long>(r()) + 1; }
  bool bispecial() const { return l() >= 2 && r() >= 2; }
  bool biextendable() const { return e() > 0; }
};

ExtensionStats extension_stats(const FactorSet& s, std::span<const Letter> w);

struct ComplexityProfile {
  std::vector<std::size_t> p;  // p[n] for 0 <= n <= N
  std::vector<long> s;         // s[n] = p[n+1] - p[n]
  std::vector<long> b;         // b[n] = s[n+1] - s[n]
  // sum over |w| = n of (r(w) - 1) and of m(w), on the same ranges as s, b
  std::vector<long> right_sum;
  std::vector<long> m_sum;
  bool s_identity_holds = false;
  bool b_identity_holds = false;

  // p[n] == k n + 1 for 0 <= n <= up_to, with k = p[1] - 1.
  bool linear_up_to(std::size_t up_to) const;
};

ComplexityProfile complexity_profile(const FactorSet& s);

enum class Neutrality { strong, weak, neutral, mixed };
std::string to_string(Neutrality n);
Neutrality label_of(long m);

struct NeutralityReport {
  std::vector<std::pair<Word, long>> multiplicities;  // shortlex order
  std::size_t strong = 0;
  std::size_t weak = 0;
  std::size_t neutral = 0;
  std::size_t max_len = 0;
  // "mixed" is not a notion of the underlying theory: it marks sets that are
  // neither strong nor weak.
  Neutrality verdict = Neutrality::neutral;
};

NeutralityReport neutrality_classification(const FactorSet& s, std::size_t max_len);

struct RecurrenceReport {
  std::size_t probe_len = 0;
  bool recurrent = false;  // verified up to the horizon only
  std::vector<std::pair<Word, Word>> unconnected;  // pairs (u, w) with no uvw stored
  // Least n such that u occurs in every stored word of length n.
  std::vector<std::pair<Word, std::optional<std::size_t>>> uniform_bounds;
  bool all_uniform_bounds_found = false;
  std::string qualifier;
};

RecurrenceReport recurrence_check(const FactorSet& s, std::size_t probe_len);

}  // namespace treeset
