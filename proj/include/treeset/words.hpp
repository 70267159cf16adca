#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace treeset {

// A letter is an index into an Alphabet. Comparing letters compares their
// position in the alphabet, so std::vector<Letter> ordering is the
// lexicographic order induced by the alphabet.
using Letter = std::uint32_t;
using Word = std::vector<Letter>;

struct WordHash {
  std::size_t operator()(std::span<const Letter> w) const noexcept;
  std::size_t operator()(const Word& w) const noexcept {
    return (*this)(std::span<const Letter>(w));
  }
};

// Length first, then lexicographic.
bool shortlex_less(std::span<const Letter> a, std::span<const Letter> b);

struct ShortlexLess {
  bool operator()(const Word& a, const Word& b) const { return shortlex_less(a, b); }
};

bool is_prefix(std::span<const Letter> prefix, std::span<const Letter> w);
bool is_suffix(std::span<const Letter> suffix, std::span<const Letter> w);
Word concat(std::span<const Letter> u, std::span<const Letter> v);

// Ordered set of distinct printable tokens. A token may be longer than one
// character; the formal inverse of a token is written with a trailing `'`,
// so no token may end in `'`.
class Alphabet {
 public:
  explicit Alphabet(std::vector<std::string> tokens);

  // Tokens in order of first appearance in the given words, each word split
  // with the same rules as parse().
  static Alphabet from_texts(std::span<const std::string> texts);

  std::size_t size() const { return tokens_.size(); }
  const std::vector<std::string>& tokens() const { return tokens_; }
  const std::string& token(Letter a) const;
  std::optional<Letter> find(std::string_view token) const;
  Letter letter(std::string_view token) const;  // throws InputError
  bool single_char() const { return single_char_; }

  // Words are written either as whitespace separated tokens or, when every
  // token is one character, as a plain string. "" and "ε" denote the empty
  // word.
  Word parse(std::string_view text) const;
  std::string format(std::span<const Letter> w) const;

  bool operator==(const Alphabet& other) const { return tokens_ == other.tokens_; }

 private:
  std::vector<std::string> tokens_;
  std::unordered_map<std::string, Letter> index_;
  bool single_char_ = true;
};

// Splits text into raw tokens: whitespace separated if any whitespace is
// present, otherwise one token per UTF-8 character. A trailing `'` stays
// attached to its token.
std::vector<std::string> split_tokens(std::string_view text);

// Entries of a word list: one word per line or separated by commas, with an
// optional pair of surrounding braces and `#` comments to the end of a line.
// Blank entries are dropped.
std::vector<std::string> split_word_list(std::string_view text);

struct SignedLetter {
  Letter base = 0;
  bool inverse = false;

  SignedLetter inverted() const { return {base, !inverse}; }
  bool cancels(SignedLetter other) const {
    return base == other.base && inverse != other.inverse;
  }
  auto operator<=>(const SignedLetter&) const = default;
};

using SignedWord = std::vector<SignedLetter>;

SignedWord positive(std::span<const Letter> w);
SignedWord parse_signed(const Alphabet& alphabet, std::string_view text);
std::string format_signed(const Alphabet& alphabet, std::span<const SignedLetter> w);

// Element of the free group on the alphabet: a signed word with no factor
// x x' or x' x.
class ReducedWord {
 public:
  ReducedWord() = default;

  // Reduces w with a single left-to-right stack pass.
  static ReducedWord reduce(std::span<const SignedLetter> w);
  static ReducedWord from_positive(std::span<const Letter> w) {
    return reduce(positive(w));
  }

  const SignedWord& symbols() const { return symbols_; }
  std::size_t size() const { return symbols_.size(); }
  bool empty() const { return symbols_.empty(); }
  // All letters positive: the element lies in the free monoid.
  bool is_positive() const;
  Word positive_letters() const;  // requires is_positive()

  auto operator<=>(const ReducedWord&) const = default;

 private:
  SignedWord symbols_;
};

ReducedWord reduce(std::span<const SignedLetter> w);
// Validates every base letter against the alphabet before reducing.
ReducedWord reduce(const Alphabet& alphabet, std::span<const SignedLetter> w);
ReducedWord group_concat(const ReducedWord& u, const ReducedWord& v);
ReducedWord invert(const ReducedWord& u);
SignedWord invert(std::span<const SignedLetter> w);
bool is_reduced(std::span<const SignedLetter> w);

// Height of a signed word. Words equivalent to 1 have height 0 when empty and
// otherwise the least h such that they factor into blocks u v u' with v of
// height at most h - 1 equivalent to 1. A general word has the least h such
// that it reads z0 v1 z1 ... vn zn with every zi (possibly empty) equivalent
// to 1 of height at most h and v1...vn reduced.
std::size_t height(std::span<const SignedLetter> w);

}  // namespace treeset
