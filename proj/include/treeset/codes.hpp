#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "treeset/factor_set.hpp"
#include "treeset/morphism.hpp"
#include "treeset/words.hpp"

namespace treeset {

struct CodeRole {
  bool prefix = false;
  bool suffix = false;
  bool bifix() const { return prefix && suffix; }
};

// Throws InputError if some word is empty.
CodeRole code_role(std::span<const Word> x);

// Finite set of nonempty words, kept in shortlex order.
class Code {
 public:
  Code(Alphabet alphabet, std::vector<Word> words);
  // Word list syntax of split_word_list(), e.g. "{aa, ab, ba}".
  static Code parse(const Alphabet& alphabet, std::string_view text);
  // S ∩ A^n.
  static Code layer(const FactorSet& s, std::size_t n);

  const Alphabet& alphabet() const { return alphabet_; }
  const std::vector<Word>& words() const { return words_; }
  std::size_t size() const { return words_.size(); }
  std::size_t max_length() const { return max_length_; }
  bool contains(std::span<const Letter> w) const;
  CodeRole role() const { return role_; }

  void require_prefix(std::string_view operation) const;
  void require_bifix(std::string_view operation) const;

  std::string format() const;

 private:
  Alphabet alphabet_;
  std::vector<Word> words_;
  std::size_t max_length_ = 0;
  CodeRole role_;
};

// w ∈ X* for an arbitrary finite set X.
bool in_star(std::span<const Word> x, std::span<const Letter> w);

// w is a prefix of some word of X*.
bool is_prefix_of_star(std::span<const Word> x, std::span<const Letter> w);

// Number of parses of w, counted as the suffixes of w without a prefix in X.
std::size_t parse_count(const Code& x, std::span<const Letter> w);

struct DegreeReport {
  std::size_t degree = 0;       // max of d_X over words of length <= cutoff
  Word witness;                 // a shortest word attaining it
  std::size_t cutoff = 0;
  std::size_t observed_max = 0;  // max over every stored word
  // The maximum was still growing between cutoff/2 and the cutoff (or past
  // it), so the degree is either larger than reported or infinite.
  bool inconclusive = false;
};

// Throws ContainmentError unless X ⊆ S.
DegreeReport s_degree(const Code& x, const FactorSet& s);

struct MaximalityReport {
  bool maximal = false;
  std::size_t cutoff = 0;
  std::optional<Word> counterexample;  // shortest, then least
};

// Right S-completeness of a prefix code X ⊆ S, tested on stored words of
// length at most N - max|X|.
MaximalityReport is_s_maximal_prefix(const Code& x, const FactorSet& s);
// Left S-completeness of a suffix code X ⊆ S.
MaximalityReport is_s_maximal_suffix(const Code& x, const FactorSet& s);

// Words w with uwv ∈ X for nonempty u, v, in shortlex order.
std::vector<Word> internal_factors(std::span<const Word> x);

// f^{-1}(S) for a coding morphism f whose images form a bifix code inside S.
// Image tokens are matched to the alphabet of S by name. The result is over
// the domain of f with horizon floor(N / max|X|).
FactorSet bifix_decode(const FactorSet& s, const Morphism& f);

// Images of f rewritten over the given alphabet.
std::vector<Word> coding_images(const Morphism& f, const Alphabet& target);

}  // namespace treeset
