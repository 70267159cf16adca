#include "treeset/morphism.hpp"

#include <algorithm>
#include <cctype>
#include <unordered_set>

#include "treeset/error.hpp"

namespace treeset {

Morphism::Morphism(Alphabet domain, Alphabet codomain, std::vector<Word> images)
    : domain_(std::move(domain)), codomain_(std::move(codomain)), images_(std::move(images)) {
  if (images_.size() != domain_.size()) throw InputError("morphism needs one image per domain letter");
  for (const Word& img : images_) {
    if (img.empty()) throw InputError("morphism images must be nonempty");
    for (Letter b : img) {
      if (b >= codomain_.size()) throw InputError("morphism image symbol outside the codomain");
    }
  }
}

namespace {

// Tokens of one side of a rule: unquoted characters are single tokens, quoted
// strings are multi-character tokens.
std::vector<std::string> rule_tokens(std::string_view side) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < side.size()) {
    char c = side[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
    } else if (c == '"') {
      std::size_t j = side.find('"', i + 1);
      if (j == std::string_view::npos) throw InputError("unterminated quote in morphism");
      if (j == i + 1) throw InputError("empty quoted token in morphism");
      out.emplace_back(side.substr(i + 1, j - i - 1));
      i = j + 1;
    } else {
      std::size_t len = 1;
      auto lead = static_cast<unsigned char>(c);
      if ((lead >> 5) == 0x6) len = 2;
      else if ((lead >> 4) == 0xe) len = 3;
      else if ((lead >> 3) == 0x1e) len = 4;
      out.emplace_back(side.substr(i, std::min(len, side.size() - i)));
      i += len;
    }
  }
  return out;
}

}  // namespace

Morphism Morphism::parse(std::string_view text) {
  std::vector<std::string> rules;
  std::string current;
  bool quoted = false;
  for (char c : text) {
    if (c == '"') quoted = !quoted;
    if (!quoted && (c == ';' || c == '\n')) {
      rules.push_back(current);
      current.clear();
    } else {
      current.push_back(c);
    }
  }
  rules.push_back(current);

  std::vector<std::string> lhs_tokens;
  std::vector<std::vector<std::string>> rhs_tokens;
  for (const auto& rule : rules) {
    if (std::all_of(rule.begin(), rule.end(), [](char c) { return std::isspace(static_cast<unsigned char>(c)); })) {
      continue;
    }
    auto arrow = rule.find("->");
    if (arrow == std::string::npos) throw InputError("morphism rule '" + rule + "' lacks '->'");
    auto lhs = rule_tokens(std::string_view(rule).substr(0, arrow));
    auto rhs = rule_tokens(std::string_view(rule).substr(arrow + 2));
    if (lhs.size() != 1) throw InputError("morphism rule '" + rule + "' must map exactly one letter");
    if (rhs.empty()) throw InputError("morphism rule '" + rule + "' has an empty image");
    if (std::find(lhs_tokens.begin(), lhs_tokens.end(), lhs[0]) != lhs_tokens.end()) {
      throw InputError("letter '" + lhs[0] + "' is mapped twice");
    }
    lhs_tokens.push_back(lhs[0]);
    rhs_tokens.push_back(std::move(rhs));
  }
  if (lhs_tokens.empty()) throw InputError("empty morphism");

  Alphabet domain(lhs_tokens);
  bool endo = true;
  std::vector<std::string> image_symbols;
  std::unordered_set<std::string> seen;
  for (const auto& rhs : rhs_tokens) {
    for (const auto& t : rhs) {
      if (!domain.find(t)) endo = false;
      if (seen.insert(t).second) image_symbols.push_back(t);
    }
  }
  Alphabet codomain = endo ? domain : Alphabet(image_symbols);
  std::vector<Word> images;
  for (const auto& rhs : rhs_tokens) {
    Word img;
    for (const auto& t : rhs) img.push_back(codomain.letter(t));
    images.push_back(std::move(img));
  }
  return Morphism(std::move(domain), std::move(codomain), std::move(images));
}

std::size_t Morphism::max_image_length() const {
  std::size_t m = 0;
  for (const auto& img : images_) m = std::max(m, img.size());
  return m;
}

Word Morphism::apply(std::span<const Letter> w) const {
  Word out;
  for (Letter a : w) {
    const Word& img = images_.at(a);
    out.insert(out.end(), img.begin(), img.end());
  }
  return out;
}

std::string Morphism::to_string() const {
  auto quote = [](const std::string& t) { return t.size() == 1 ? t : "\"" + t + "\""; };
  std::string out;
  for (Letter a = 0; a < domain_.size(); ++a) {
    if (a > 0) out += "; ";
    out += quote(domain_.token(a)) + "->";
    for (Letter b : images_[a]) out += quote(codomain_.token(b));
  }
  return out;
}

Word apply_morphism(const Morphism& f, std::span<const Letter> w) { return f.apply(w); }

Word fixpoint_prefix(const Morphism& f, Letter seed, std::size_t target_len) {
  if (!f.is_endomorphism()) throw PreconditionError("fixpoints need an endomorphism");
  if (seed >= f.domain().size()) throw InputError("seed letter outside the alphabet");
  const Word& first = f.image(seed);
  if (first.front() != seed) {
    throw PreconditionError("image of seed '" + f.domain().token(seed) + "' does not begin with it");
  }
  Word w{seed};
  while (w.size() < target_len) {
    Word next = f.apply(w);
    if (next.size() <= w.size()) {
      throw NonExpandingError("iterates of seed '" + f.domain().token(seed) + "' stop growing at length " +
                              std::to_string(w.size()));
    }
    w = std::move(next);
  }
  w.resize(std::min(w.size(), target_len));
  return w;
}

}  // namespace treeset
