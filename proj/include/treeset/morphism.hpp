#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "treeset/words.hpp"

namespace treeset {

// Monoid morphism given by nonempty letter images.
class Morphism {
 public:
  Morphism(Alphabet domain, Alphabet codomain, std::vector<Word> images);

  // Parses the rule syntax `a->ab; b->a`. Whitespace is ignored, rules are
  // separated by `;` or newlines, and multi-character tokens are written in
  // double quotes. When every image symbol is a domain letter the morphism is
  // an endomorphism; otherwise the codomain is the image symbols in order of
  // first appearance.
  static Morphism parse(std::string_view text);

  const Alphabet& domain() const { return domain_; }
  const Alphabet& codomain() const { return codomain_; }
  const Word& image(Letter a) const { return images_.at(a); }
  const std::vector<Word>& images() const { return images_; }
  bool is_endomorphism() const { return domain_ == codomain_; }
  std::size_t max_image_length() const;

  Word apply(std::span<const Letter> w) const;

  // The rules written back in the parse() syntax.
  std::string to_string() const;

 private:
  Alphabet domain_;
  Alphabet codomain_;
  std::vector<Word> images_;
};

Word apply_morphism(const Morphism& f, std::span<const Letter> w);

// Prefix of length target_len of the fixpoint f^ω(seed). Throws
// PreconditionError if f(seed) does not begin with seed and
// NonExpandingError if the iterates stop growing.
Word fixpoint_prefix(const Morphism& f, Letter seed, std::size_t target_len);

}  // namespace treeset
