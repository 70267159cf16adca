#include "treeset/codes.hpp"

#include <algorithm>
#include <unordered_set>

#include "treeset/error.hpp"

namespace treeset {

CodeRole code_role(std::span<const Word> x) {
  CodeRole role{true, true};
  for (const auto& u : x) {
    if (u.empty()) throw InputError("codes cannot contain the empty word");
  }
  for (std::size_t i = 0; i < x.size(); ++i) {
    for (std::size_t j = 0; j < x.size(); ++j) {
      if (i == j || x[i].size() >= x[j].size()) continue;
      if (is_prefix(x[i], x[j])) role.prefix = false;
      if (is_suffix(x[i], x[j])) role.suffix = false;
    }
  }
  return role;
}

Code::Code(Alphabet alphabet, std::vector<Word> words) : alphabet_(std::move(alphabet)), words_(std::move(words)) {
  if (words_.empty()) throw InputError("a code needs at least one word");
  std::sort(words_.begin(), words_.end(), ShortlexLess{});
  words_.erase(std::unique(words_.begin(), words_.end()), words_.end());
  for (const auto& w : words_) {
    for (Letter a : w) {
      if (a >= alphabet_.size()) throw InputError("code word outside the alphabet");
    }
    max_length_ = std::max(max_length_, w.size());
  }
  role_ = code_role(words_);
}

Code Code::parse(const Alphabet& alphabet, std::string_view text) {
  std::vector<Word> words;
  for (const auto& entry : split_word_list(text)) words.push_back(alphabet.parse(entry));
  return Code(alphabet, std::move(words));
}

Code Code::layer(const FactorSet& s, std::size_t n) {
  if (n == 0) throw InputError("layer code needs a positive length");
  if (n > s.horizon()) throw HorizonError("layer " + std::to_string(n) + " lies beyond the horizon");
  return Code(s.alphabet(), s.words_of_length(n));
}

bool Code::contains(std::span<const Letter> w) const {
  Word probe(w.begin(), w.end());
  return std::binary_search(words_.begin(), words_.end(), probe, ShortlexLess{});
}

void Code::require_prefix(std::string_view operation) const {
  if (!role_.prefix) throw RoleError(std::string(operation) + " needs a prefix code, got " + format());
}

void Code::require_bifix(std::string_view operation) const {
  if (!role_.bifix()) throw RoleError(std::string(operation) + " needs a bifix code, got " + format());
}

std::string Code::format() const {
  std::string out = "{";
  for (std::size_t i = 0; i < words_.size(); ++i) {
    if (i > 0) out += ", ";
    out += alphabet_.format(words_[i]);
  }
  return out + "}";
}

bool in_star(std::span<const Word> x, std::span<const Letter> w) {
  std::vector<char> reach(w.size() + 1, 0);
  reach[0] = 1;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (!reach[i]) continue;
    for (const auto& u : x) {
      if (!u.empty() && i + u.size() <= w.size() && std::equal(u.begin(), u.end(), w.begin() + static_cast<std::ptrdiff_t>(i))) {
        reach[i + u.size()] = 1;
      }
    }
  }
  return reach[w.size()] != 0;
}

bool is_prefix_of_star(std::span<const Word> x, std::span<const Letter> w) {
  std::vector<char> reach(w.size() + 1, 0);
  reach[0] = 1;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (!reach[i]) continue;
    auto rest = w.subspan(i);
    for (const auto& u : x) {
      if (u.empty()) continue;
      if (u.size() <= rest.size()) {
        if (is_prefix(u, rest)) reach[i + u.size()] = 1;
      } else if (is_prefix(rest, u)) {
        return true;
      }
    }
  }
  return reach[w.size()] != 0;
}

namespace {

bool has_prefix_in(const Code& x, std::span<const Letter> w) {
  for (const auto& u : x.words()) {
    if (u.size() > w.size()) break;
    if (is_prefix(u, w)) return true;
  }
  return false;
}

void require_contained(const Code& x, const FactorSet& s) {
  for (const auto& u : x.words()) {
    if (!s.contains(u)) throw ContainmentError("code word '" + s.format(u) + "' is not in the set");
  }
}

}  // namespace

std::size_t parse_count(const Code& x, std::span<const Letter> w) {
  x.require_bifix("parse count");
  std::size_t count = 0;
  for (std::size_t i = 0; i <= w.size(); ++i) {
    if (!has_prefix_in(x, w.subspan(i))) ++count;
  }
  return count;
}

DegreeReport s_degree(const Code& x, const FactorSet& s) {
  x.require_bifix("S-degree");
  require_contained(x, s);
  DegreeReport out;
  out.cutoff = s.truncated() ? (s.horizon() > x.max_length() ? s.horizon() - x.max_length() : 0) : s.horizon();
  bool have_witness = false;
  std::size_t half_max = 0;
  for (std::size_t n = 0; n <= s.horizon(); ++n) {
    for (const auto& w : s.words_of_length(n)) {
      std::size_t d = parse_count(x, w);
      out.observed_max = std::max(out.observed_max, d);
      if (2 * n <= out.cutoff) half_max = std::max(half_max, d);
      if (n <= out.cutoff && (!have_witness || d > out.degree)) {
        out.degree = d;
        out.witness = w;
        have_witness = true;
      }
    }
  }
  // still growing in the second half of the window
  out.inconclusive = out.observed_max > out.degree || half_max < out.degree;
  return out;
}

namespace {

MaximalityReport maximality(const Code& x, const FactorSet& s, bool right) {
  require_contained(x, s);
  MaximalityReport out;
  out.cutoff = s.truncated() ? (s.horizon() > x.max_length() ? s.horizon() - x.max_length() : 0) : s.horizon();
  std::vector<Word> reversed;
  if (!right) {
    for (auto u : x.words()) {
      std::reverse(u.begin(), u.end());
      reversed.push_back(std::move(u));
    }
  }
  const std::span<const Word> words = right ? std::span<const Word>(x.words()) : std::span<const Word>(reversed);
  for (std::size_t n = 0; n <= out.cutoff; ++n) {
    for (const auto& w : s.words_of_length(n)) {
      Word probe = w;
      if (!right) std::reverse(probe.begin(), probe.end());
      if (!is_prefix_of_star(words, probe)) {
        out.counterexample = w;
        return out;
      }
    }
  }
  out.maximal = true;
  return out;
}

}  // namespace

MaximalityReport is_s_maximal_prefix(const Code& x, const FactorSet& s) {
  x.require_prefix("S-maximality");
  return maximality(x, s, true);
}

MaximalityReport is_s_maximal_suffix(const Code& x, const FactorSet& s) {
  if (!x.role().suffix) throw RoleError("S-maximality as a suffix code needs a suffix code, got " + x.format());
  return maximality(x, s, false);
}

std::vector<Word> internal_factors(std::span<const Word> x) {
  std::vector<Word> out;
  for (const auto& u : x) {
    if (u.size() < 2) continue;
    for (std::size_t i = 1; i + 1 <= u.size(); ++i) {
      for (std::size_t j = i; j + 1 <= u.size(); ++j) {
        out.emplace_back(u.begin() + static_cast<std::ptrdiff_t>(i), u.begin() + static_cast<std::ptrdiff_t>(j));
      }
    }
  }
  std::sort(out.begin(), out.end(), ShortlexLess{});
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<Word> coding_images(const Morphism& f, const Alphabet& target) {
  std::vector<Word> out;
  for (const auto& img : f.images()) {
    Word w;
    for (Letter b : img) w.push_back(target.letter(f.codomain().token(b)));
    out.push_back(std::move(w));
  }
  return out;
}

FactorSet bifix_decode(const FactorSet& s, const Morphism& f) {
  std::vector<Word> images = coding_images(f, s.alphabet());
  {
    std::vector<Word> sorted = images;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
      throw InputError("coding morphism images must be distinct");
    }
  }
  Code x(s.alphabet(), images);
  x.require_bifix("bifix decoding");
  require_contained(x, s);

  const Alphabet& b = f.domain();
  // For a truncated set only words whose image surely fits are decided.
  const std::size_t limit = s.truncated() ? s.horizon() / x.max_length() : s.horizon();
  std::vector<std::vector<Word>> layers(limit + 1);
  std::vector<std::vector<Word>> images_of(limit + 1);
  layers[0].push_back({});
  images_of[0].push_back({});
  std::size_t top = 0;
  for (std::size_t n = 0; n < limit; ++n) {
    for (std::size_t k = 0; k < layers[n].size(); ++k) {
      for (Letter c = 0; c < b.size(); ++c) {
        Word image = concat(images_of[n][k], images[c]);
        if (!s.contains(image)) continue;
        Word u = layers[n][k];
        u.push_back(c);
        layers[n + 1].push_back(std::move(u));
        images_of[n + 1].push_back(std::move(image));
      }
    }
    if (layers[n + 1].empty()) break;
    top = n + 1;
  }
  const std::size_t horizon = s.truncated() ? limit : top;
  layers.resize(horizon + 1);
  return FactorSet::from_layers(b, std::move(layers), horizon, s.truncated(),
                                "bifix decoding of " + s.provenance() + " by {" + f.to_string() + "}");
}

}  // namespace treeset
