#include "treeset/words.hpp"

#include <algorithm>
#include <cctype>
#include <limits>

#include "treeset/error.hpp"

namespace treeset {

std::size_t WordHash::operator()(std::span<const Letter> w) const noexcept {
  // FNV-1a over the letter indices.
  std::size_t h = 1469598103934665603ULL;
  for (Letter a : w) {
    h ^= static_cast<std::size_t>(a) + 0x9e3779b97f4a7c15ULL;
    h *= 1099511628211ULL;
  }
  return h;
}

bool shortlex_less(std::span<const Letter> a, std::span<const Letter> b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

bool is_prefix(std::span<const Letter> prefix, std::span<const Letter> w) {
  return prefix.size() <= w.size() && std::equal(prefix.begin(), prefix.end(), w.begin());
}

bool is_suffix(std::span<const Letter> suffix, std::span<const Letter> w) {
  return suffix.size() <= w.size() &&
         std::equal(suffix.begin(), suffix.end(), w.end() - static_cast<std::ptrdiff_t>(suffix.size()));
}

Word concat(std::span<const Letter> u, std::span<const Letter> v) {
  Word out;
  out.reserve(u.size() + v.size());
  out.insert(out.end(), u.begin(), u.end());
  out.insert(out.end(), v.begin(), v.end());
  return out;
}

namespace {

constexpr std::string_view kEpsilon = "\xce\xb5";  // ε

bool has_space(std::string_view text) {
  return std::any_of(text.begin(), text.end(),
                     [](char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; });
}

std::size_t utf8_length(unsigned char lead) {
  if (lead < 0x80) return 1;
  if ((lead >> 5) == 0x6) return 2;
  if ((lead >> 4) == 0xe) return 3;
  if ((lead >> 3) == 0x1e) return 4;
  return 1;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

}  // namespace

std::vector<std::string> split_tokens(std::string_view text) {
  text = trim(text);
  std::vector<std::string> out;
  if (text.empty() || text == kEpsilon) return out;
  if (has_space(text)) {
    std::size_t i = 0;
    while (i < text.size()) {
      while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
      std::size_t j = i;
      while (j < text.size() && !std::isspace(static_cast<unsigned char>(text[j]))) ++j;
      if (j > i) out.emplace_back(text.substr(i, j - i));
      i = j;
    }
    return out;
  }
  std::size_t i = 0;
  while (i < text.size()) {
    if (text[i] == '\'') {
      if (out.empty()) throw InputError("dangling inverse mark in '" + std::string(text) + "'");
      out.back().push_back('\'');
      ++i;
      continue;
    }
    std::size_t len = std::min(utf8_length(static_cast<unsigned char>(text[i])), text.size() - i);
    out.emplace_back(text.substr(i, len));
    i += len;
  }
  return out;
}

std::vector<std::string> split_word_list(std::string_view text) {
  std::vector<std::string> out;
  std::string current;
  bool comment = false;
  auto flush = [&] {
    auto t = trim(current);
    if (!t.empty()) out.emplace_back(t);
    current.clear();
  };
  for (char c : text) {
    if (c == '\n') {
      comment = false;
      flush();
    } else if (comment) {
      continue;
    } else if (c == '#') {
      comment = true;
    } else if (c == ',') {
      flush();
    } else if (c != '{' && c != '}') {
      current.push_back(c);
    }
  }
  flush();
  return out;
}

Alphabet::Alphabet(std::vector<std::string> tokens) : tokens_(std::move(tokens)) {
  if (tokens_.empty()) throw InputError("alphabet must be nonempty");
  for (std::size_t i = 0; i < tokens_.size(); ++i) {
    const std::string& t = tokens_[i];
    if (t.empty()) throw InputError("alphabet tokens must be nonempty");
    if (t.back() == '\'') throw InputError("token '" + t + "' collides with inverse notation");
    if (has_space(t)) throw InputError("token '" + t + "' contains whitespace");
    if (!index_.emplace(t, static_cast<Letter>(i)).second) {
      throw InputError("duplicate alphabet token '" + t + "'");
    }
    if (utf8_length(static_cast<unsigned char>(t[0])) != t.size()) single_char_ = false;
  }
}

Alphabet Alphabet::from_texts(std::span<const std::string> texts) {
  std::vector<std::string> tokens;
  std::unordered_map<std::string, bool> seen;
  for (const auto& text : texts) {
    for (auto& t : split_tokens(text)) {
      while (!t.empty() && t.back() == '\'') t.pop_back();
      if (seen.emplace(t, true).second) tokens.push_back(t);
    }
  }
  return Alphabet(std::move(tokens));
}

const std::string& Alphabet::token(Letter a) const {
  if (a >= tokens_.size()) throw InputError("letter index out of range");
  return tokens_[a];
}

std::optional<Letter> Alphabet::find(std::string_view token) const {
  auto it = index_.find(std::string(token));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

Letter Alphabet::letter(std::string_view token) const {
  if (auto a = find(token)) return *a;
  throw InputError("symbol '" + std::string(token) + "' is not in the alphabet");
}

Word Alphabet::parse(std::string_view text) const {
  text = trim(text);
  Word out;
  if (text.empty() || text == kEpsilon) return out;
  if (!has_space(text) && !single_char_) {
    if (auto a = find(text)) return {*a};
  }
  for (const auto& t : split_tokens(text)) {
    if (!t.empty() && t.back() == '\'') throw InputError("inverse letter in positive word '" + std::string(text) + "'");
    out.push_back(letter(t));
  }
  return out;
}

std::string Alphabet::format(std::span<const Letter> w) const {
  std::string out;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i > 0 && !single_char_) out.push_back(' ');
    out += token(w[i]);
  }
  return out;
}

SignedWord positive(std::span<const Letter> w) {
  SignedWord out;
  out.reserve(w.size());
  for (Letter a : w) out.push_back({a, false});
  return out;
}

SignedWord parse_signed(const Alphabet& alphabet, std::string_view text) {
  SignedWord out;
  std::vector<std::string> tokens;
  std::string_view t = trim(text);
  if (!has_space(t) && !alphabet.single_char()) {
    std::string_view base = t;
    while (!base.empty() && base.back() == '\'') base.remove_suffix(1);
    if (!base.empty() && alphabet.find(base)) tokens.emplace_back(t);
  }
  if (tokens.empty()) tokens = split_tokens(text);
  for (auto& tok : tokens) {
    std::size_t primes = 0;
    while (!tok.empty() && tok.back() == '\'') {
      tok.pop_back();
      ++primes;
    }
    out.push_back({alphabet.letter(tok), primes % 2 == 1});
  }
  return out;
}

std::string format_signed(const Alphabet& alphabet, std::span<const SignedLetter> w) {
  std::string out;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i > 0 && !alphabet.single_char()) out.push_back(' ');
    out += alphabet.token(w[i].base);
    if (w[i].inverse) out.push_back('\'');
  }
  return out;
}

ReducedWord ReducedWord::reduce(std::span<const SignedLetter> w) {
  ReducedWord out;
  for (SignedLetter x : w) {
    if (!out.symbols_.empty() && out.symbols_.back().cancels(x)) {
      out.symbols_.pop_back();
    } else {
      out.symbols_.push_back(x);
    }
  }
  return out;
}

bool ReducedWord::is_positive() const {
  return std::none_of(symbols_.begin(), symbols_.end(), [](SignedLetter x) { return x.inverse; });
}

Word ReducedWord::positive_letters() const {
  if (!is_positive()) throw PreconditionError("reduced word has inverse letters");
  Word out;
  out.reserve(symbols_.size());
  for (SignedLetter x : symbols_) out.push_back(x.base);
  return out;
}

ReducedWord reduce(std::span<const SignedLetter> w) { return ReducedWord::reduce(w); }

ReducedWord reduce(const Alphabet& alphabet, std::span<const SignedLetter> w) {
  for (SignedLetter x : w) {
    if (x.base >= alphabet.size()) throw InputError("signed letter outside the alphabet");
  }
  return ReducedWord::reduce(w);
}

ReducedWord group_concat(const ReducedWord& u, const ReducedWord& v) {
  SignedWord w = u.symbols();
  w.insert(w.end(), v.symbols().begin(), v.symbols().end());
  return ReducedWord::reduce(w);
}

SignedWord invert(std::span<const SignedLetter> w) {
  SignedWord out;
  out.reserve(w.size());
  for (auto it = w.rbegin(); it != w.rend(); ++it) out.push_back(it->inverted());
  return out;
}

ReducedWord invert(const ReducedWord& u) { return ReducedWord::reduce(invert(u.symbols())); }

bool is_reduced(std::span<const SignedLetter> w) {
  for (std::size_t i = 1; i < w.size(); ++i) {
    if (w[i - 1].cancels(w[i])) return false;
  }
  return true;
}

namespace {

constexpr std::size_t kInfinite = std::numeric_limits<std::size_t>::max();

// Memoized interval search for the height of words equivalent to 1.
class HeightSolver {
 public:
  explicit HeightSolver(std::span<const SignedLetter> w)
      : w_(w), n_(w.size()), trivial_(n_ + 1, std::vector<char>(n_ + 1, 0)),
        memo_(n_ + 1, std::vector<std::size_t>(n_ + 1, kUnset)),
        inner_(n_ + 1, std::vector<std::size_t>(n_ + 1, kUnset)) {
    for (std::size_t i = 0; i <= n_; ++i) {
      SignedWord stack;
      trivial_[i][i] = 1;
      for (std::size_t j = i; j < n_; ++j) {
        if (!stack.empty() && stack.back().cancels(w_[j])) {
          stack.pop_back();
        } else {
          stack.push_back(w_[j]);
        }
        trivial_[i][j + 1] = stack.empty() ? 1 : 0;
      }
    }
  }

  bool trivial(std::size_t i, std::size_t j) const { return trivial_[i][j] != 0; }

  // Height of w[i, j), which must be equivalent to 1.
  std::size_t trivial_height(std::size_t i, std::size_t j) {
    if (i == j) return 0;
    std::size_t& slot = memo_[i][j];
    if (slot != kUnset) return slot;
    std::size_t best = kInfinite;
    for (std::size_t m = i + 2; m <= j; m += 2) {
      if (!trivial(i, m) || !trivial(m, j)) continue;
      std::size_t block = block_height(i, m);
      if (block == kInfinite) continue;
      best = std::min(best, std::max(block, trivial_height(m, j)));
    }
    slot = best;
    return best;
  }

  // Height of w[i, m) read as a single block u v u' with u nonempty.
  std::size_t block_height(std::size_t i, std::size_t m) {
    std::size_t& slot = inner_[i][m];
    if (slot != kUnset) return slot;
    std::size_t best = kInfinite;
    for (std::size_t k = 1; 2 * k <= m - i; ++k) {
      if (!w_[i + k - 1].cancels(w_[m - k])) break;
      std::size_t v = trivial_height(i + k, m - k);
      if (v != kInfinite) best = std::min(best, v + 1);
    }
    slot = best;
    return best;
  }

 private:
  static constexpr std::size_t kUnset = kInfinite - 1;
  std::span<const SignedLetter> w_;
  std::size_t n_;
  std::vector<std::vector<char>> trivial_;
  std::vector<std::vector<std::size_t>> memo_;
  std::vector<std::vector<std::size_t>> inner_;
};

}  // namespace

std::size_t height(std::span<const SignedLetter> w) {
  const std::size_t n = w.size();
  HeightSolver solver(w);
  // best[i][k]: least height for the suffix w[i, n) when the last kept letter
  // is k - 1 (k == 0 means no letter kept yet).
  std::vector<std::vector<std::size_t>> best(n + 1, std::vector<std::size_t>(n + 1, kInfinite));
  for (std::size_t k = 0; k <= n; ++k) best[n][k] = 0;
  for (std::size_t i = n; i-- > 0;) {
    for (std::size_t k = 0; k <= i; ++k) {
      std::size_t result = kInfinite;
      if (k == 0 || !w[k - 1].cancels(w[i])) result = best[i + 1][i + 1];
      for (std::size_t m = i + 2; m <= n; m += 2) {
        if (!solver.trivial(i, m)) continue;
        std::size_t gap = solver.trivial_height(i, m);
        if (gap == kInfinite) continue;
        result = std::min(result, std::max(gap, best[m][k]));
      }
      best[i][k] = result;
    }
  }
  return best[0][0];
}

}  // namespace treeset
