#include "treeset/factor_set.hpp"

#include <algorithm>
#include <map>
#include <unordered_map>

#include "treeset/error.hpp"

namespace treeset {

std::string MorphicSource::describe() const {
  std::string out = "fixpoint of {" + generator.to_string() + "} at " + generator.domain().token(seed);
  if (coding) out += " coded by {" + coding->to_string() + "}";
  return out;
}

FactorSet::FactorSet(Alphabet alphabet, std::size_t horizon, bool truncated, std::string provenance)
    : alphabet_(std::move(alphabet)), horizon_(horizon), truncated_(truncated), provenance_(std::move(provenance)),
      layers_(horizon + 1) {
  members_.insert(Word{});
  layers_[0].push_back(Word{});
}

void FactorSet::insert_with_factors(std::span<const Letter> w) {
  // Stop descending into a factor once it is present: its own factors were
  // inserted with it.
  for (std::size_t len = std::min(w.size(), horizon_); len >= 1; --len) {
    bool any_new = false;
    for (std::size_t i = 0; i + len <= w.size(); ++i) {
      Word f(w.begin() + static_cast<std::ptrdiff_t>(i), w.begin() + static_cast<std::ptrdiff_t>(i + len));
      if (members_.insert(f).second) {
        layers_[len].push_back(std::move(f));
        any_new = true;
      }
    }
    if (!any_new) break;
  }
}

void FactorSet::finish() {
  for (auto& layer : layers_) std::sort(layer.begin(), layer.end());
}

namespace {

std::vector<Word> distinct_windows(std::span<const Letter> w, std::size_t len) {
  std::unordered_set<Word, WordHash> seen;
  std::vector<Word> out;
  if (w.size() < len) return out;
  for (std::size_t i = 0; i + len <= w.size(); ++i) {
    Word f(w.begin() + static_cast<std::ptrdiff_t>(i), w.begin() + static_cast<std::ptrdiff_t>(i + len));
    if (seen.insert(f).second) out.push_back(std::move(f));
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

FactorSet FactorSet::from_morphic(const MorphicSource& source, std::size_t horizon, const BuildOptions& options) {
  if (horizon < 1) throw InputError("horizon must be at least 1");
  const Morphism& f = source.generator;
  if (!f.is_endomorphism()) throw PreconditionError("generator of a morphic source must be an endomorphism");
  if (source.coding && !(source.coding->domain() == f.codomain())) {
    throw InputError("coding morphism domain differs from the generator alphabet");
  }
  if (f.image(source.seed).front() != source.seed) {
    throw PreconditionError("image of seed does not begin with the seed");
  }

  Word prefix{source.seed};
  std::optional<std::vector<Word>> previous;
  std::size_t agreements = 0;
  std::size_t iterations = 0;
  while (true) {
    Word coded = source.coding ? source.coding->apply(prefix) : prefix;
    if (coded.size() >= horizon) {
      auto windows = distinct_windows(coded, horizon);
      if (previous && *previous == windows) {
        ++agreements;
      } else {
        agreements = 0;
      }
      previous = std::move(windows);
      if (agreements >= 1 + options.margin) {
        FactorSet out(source.alphabet(), horizon, true, source.describe());
        for (const auto& window : *previous) out.insert_with_factors(window);
        out.finish();
        if (out.right_extendable_below_horizon()) {
          out.stabilization_ = Stabilization{iterations, coded.size(), options.margin};
          return out;
        }
        agreements = 0;
      }
    }
    Word next = f.apply(prefix);
    if (next.size() <= prefix.size()) throw NonExpandingError("morphic source does not expand");
    if (next.size() > options.max_prefix) {
      throw InputError("factor set did not stabilize below prefix length " + std::to_string(options.max_prefix));
    }
    prefix = std::move(next);
    ++iterations;
  }
}

FactorSet FactorSet::from_word(const Alphabet& alphabet, std::span<const Letter> word, std::size_t horizon,
                               std::string provenance) {
  if (word.empty()) throw InputError("empty source word");
  if (horizon < 1) throw InputError("horizon must be at least 1");
  for (Letter a : word) {
    if (a >= alphabet.size()) throw InputError("source word uses a letter outside the alphabet");
  }
  const bool truncated = word.size() > horizon;
  FactorSet out(alphabet, truncated ? horizon : word.size(), truncated, std::move(provenance));
  if (truncated) {
    for (const auto& window : distinct_windows(word, horizon)) out.insert_with_factors(window);
  } else {
    out.insert_with_factors(word);
  }
  out.finish();
  return out;
}

FactorSet FactorSet::from_words(const Alphabet& alphabet, std::span<const Word> words,
                                std::optional<std::size_t> horizon, std::string provenance) {
  std::size_t longest = 0;
  for (const auto& w : words) {
    for (Letter a : w) {
      if (a >= alphabet.size()) throw InputError("word list uses a letter outside the alphabet");
    }
    longest = std::max(longest, w.size());
  }
  if (longest == 0) throw InputError("empty source: no nonempty words");
  const std::size_t n = horizon.value_or(longest);
  if (n < 1) throw InputError("horizon must be at least 1");
  const bool truncated = longest > n;
  FactorSet out(alphabet, n, truncated, std::move(provenance));
  for (const auto& w : words) {
    if (w.size() > n) {
      for (const auto& window : distinct_windows(w, n)) out.insert_with_factors(window);
    } else {
      out.insert_with_factors(w);
    }
  }
  out.finish();
  return out;
}

FactorSet FactorSet::from_layers(const Alphabet& alphabet, std::vector<std::vector<Word>> layers, std::size_t horizon,
                                 bool truncated, std::string provenance) {
  FactorSet out(alphabet, horizon, truncated, std::move(provenance));
  for (std::size_t n = 1; n < layers.size() && n <= horizon; ++n) {
    for (auto& w : layers[n]) {
      if (w.size() != n) throw InputError("layer holds a word of the wrong length");
      if (out.members_.insert(w).second) out.layers_[n].push_back(std::move(w));
    }
  }
  out.finish();
  return out;
}

bool FactorSet::contains(std::span<const Letter> w) const {
  if (w.size() > horizon_) return false;
  return members_.count(Word(w.begin(), w.end())) > 0;
}

const std::vector<Word>& FactorSet::words_of_length(std::size_t n) const {
  static const std::vector<Word> kEmpty;
  return n < layers_.size() ? layers_[n] : kEmpty;
}

std::vector<Word> FactorSet::all_words() const {
  std::vector<Word> out;
  out.reserve(members_.size());
  for (const auto& layer : layers_) out.insert(out.end(), layer.begin(), layer.end());
  return out;
}

std::vector<Letter> FactorSet::letters() const {
  std::vector<Letter> out;
  if (layers_.size() > 1) {
    for (const auto& w : layers_[1]) out.push_back(w[0]);
  }
  return out;
}

void FactorSet::require_factor(std::span<const Letter> w, std::size_t extra) const {
  if (truncated_ && w.size() + extra > horizon_) {
    throw HorizonError("word '" + format(w) + "' needs length " + std::to_string(w.size() + extra) +
                       " beyond horizon " + std::to_string(horizon_));
  }
  if (!contains(w)) throw NotAFactorError("'" + format(w) + "' is not a factor of the set");
}

std::size_t FactorSet::extension_limit() const {
  if (!truncated_) return horizon_;
  if (horizon_ < 2) throw HorizonError("horizon below 2 leaves no observable extensions");
  return horizon_ - 2;
}

std::vector<Letter> FactorSet::left_letters(std::span<const Letter> w) const {
  std::vector<Letter> out;
  Word probe(w.size() + 1);
  std::copy(w.begin(), w.end(), probe.begin() + 1);
  for (Letter a = 0; a < alphabet_.size(); ++a) {
    probe[0] = a;
    if (contains(probe)) out.push_back(a);
  }
  return out;
}

std::vector<Letter> FactorSet::right_letters(std::span<const Letter> w) const {
  std::vector<Letter> out;
  Word probe(w.begin(), w.end());
  probe.push_back(0);
  for (Letter a = 0; a < alphabet_.size(); ++a) {
    probe.back() = a;
    if (contains(probe)) out.push_back(a);
  }
  return out;
}

bool FactorSet::right_extendable_below_horizon() const {
  for (std::size_t n = 0; n < horizon_; ++n) {
    for (const auto& w : layers_[n]) {
      if (right_letters(w).empty()) return false;
    }
  }
  return true;
}

FactorSet build_factor_set(const MorphicSource& source, std::size_t horizon, const BuildOptions& options) {
  return FactorSet::from_morphic(source, horizon, options);
}

FactorSet build_factor_set(const Alphabet& alphabet, std::span<const Letter> word, std::size_t horizon) {
  return FactorSet::from_word(alphabet, word, horizon);
}

FactorSet build_factor_set(const Alphabet& alphabet, std::span<const Word> words, std::optional<std::size_t> horizon) {
  return FactorSet::from_words(alphabet, words, horizon);
}

ExtensionStats extension_stats(const FactorSet& s, std::span<const Letter> w) {
  s.require_factor(w, s.truncated() ? 2 : 0);
  ExtensionStats out;
  out.left = s.left_letters(w);
  out.right = s.right_letters(w);
  Word probe(w.size() + 2);
  std::copy(w.begin(), w.end(), probe.begin() + 1);
  for (Letter a : out.left) {
    for (Letter b : out.right) {
      probe.front() = a;
      probe.back() = b;
      if (s.contains(probe)) out.pairs.emplace_back(a, b);
    }
  }
  return out;
}

bool ComplexityProfile::linear_up_to(std::size_t up_to) const {
  if (p.size() < 2 || up_to >= p.size()) return false;
  const long k = static_cast<long>(p[1]) - 1;
  for (std::size_t n = 0; n <= up_to; ++n) {
    if (static_cast<long>(p[n]) != k * static_cast<long>(n) + 1) return false;
  }
  return true;
}

ComplexityProfile complexity_profile(const FactorSet& s) {
  ComplexityProfile out;
  const std::size_t n_max = s.horizon();
  for (std::size_t n = 0; n <= n_max; ++n) out.p.push_back(s.count(n));
  for (std::size_t n = 0; n + 1 <= n_max; ++n) {
    out.s.push_back(static_cast<long>(out.p[n + 1]) - static_cast<long>(out.p[n]));
    long sum = 0;
    for (const auto& w : s.words_of_length(n)) sum += static_cast<long>(s.right_letters(w).size()) - 1;
    out.right_sum.push_back(sum);
  }
  for (std::size_t n = 0; n + 2 <= n_max; ++n) {
    out.b.push_back(out.s[n + 1] - out.s[n]);
    long sum = 0;
    for (const auto& w : s.words_of_length(n)) sum += extension_stats(s, w).m();
    out.m_sum.push_back(sum);
  }
  out.s_identity_holds = out.s == out.right_sum;
  out.b_identity_holds = out.b == out.m_sum;
  return out;
}

std::string to_string(Neutrality n) {
  switch (n) {
    case Neutrality::strong: return "strong";
    case Neutrality::weak: return "weak";
    case Neutrality::neutral: return "neutral";
    case Neutrality::mixed: return "mixed";
  }
  return "?";
}

Neutrality label_of(long m) {
  if (m > 0) return Neutrality::strong;
  if (m < 0) return Neutrality::weak;
  return Neutrality::neutral;
}

NeutralityReport neutrality_classification(const FactorSet& s, std::size_t max_len) {
  if (max_len > s.extension_limit()) {
    throw HorizonError("neutrality up to length " + std::to_string(max_len) + " exceeds the observable limit " +
                       std::to_string(s.extension_limit()));
  }
  NeutralityReport out;
  out.max_len = max_len;
  for (std::size_t n = 0; n <= max_len; ++n) {
    for (const auto& w : s.words_of_length(n)) {
      long m = extension_stats(s, w).m();
      out.multiplicities.emplace_back(w, m);
      switch (label_of(m)) {
        case Neutrality::strong: ++out.strong; break;
        case Neutrality::weak: ++out.weak; break;
        default: ++out.neutral; break;
      }
    }
  }
  if (out.strong == 0 && out.weak == 0) {
    out.verdict = Neutrality::neutral;
  } else if (out.weak == 0) {
    out.verdict = Neutrality::strong;
  } else if (out.strong == 0) {
    out.verdict = Neutrality::weak;
  } else {
    out.verdict = Neutrality::mixed;
  }
  return out;
}

RecurrenceReport recurrence_check(const FactorSet& s, std::size_t probe_len) {
  if (s.truncated() && 3 * probe_len > s.horizon()) {
    throw HorizonError("probe length " + std::to_string(probe_len) + " exceeds a third of the horizon");
  }
  RecurrenceReport out;
  out.probe_len = probe_len;
  out.qualifier = s.truncated() ? "verified up to horizon " + std::to_string(s.horizon())
                                : "exact on a closed finite set";

  std::vector<Word> probes;
  std::map<Word, std::size_t> index;
  for (std::size_t n = 1; n <= probe_len; ++n) {
    for (const auto& w : s.words_of_length(n)) {
      index.emplace(w, probes.size());
      probes.push_back(w);
    }
  }
  const std::size_t k = probes.size();
  std::vector<char> connected(k * k, 0);
  for (const auto& z : s.all_words()) {
    for (std::size_t i = 1; i <= std::min(probe_len, z.size()); ++i) {
      const std::size_t u = index.at(Word(z.begin(), z.begin() + static_cast<std::ptrdiff_t>(i)));
      for (std::size_t j = 1; j <= probe_len && i + j <= z.size(); ++j) {
        const std::size_t w = index.at(Word(z.end() - static_cast<std::ptrdiff_t>(j), z.end()));
        connected[u * k + w] = 1;
      }
    }
  }
  for (std::size_t u = 0; u < k; ++u) {
    for (std::size_t w = 0; w < k; ++w) {
      if (!connected[u * k + w]) out.unconnected.emplace_back(probes[u], probes[w]);
    }
  }
  out.recurrent = out.unconnected.empty() && k > 0;

  out.all_uniform_bounds_found = true;
  for (const auto& u : probes) {
    std::optional<std::size_t> bound;
    for (std::size_t n = u.size(); n <= s.horizon() && !bound; ++n) {
      const auto& layer = s.words_of_length(n);
      if (layer.empty()) break;
      bool everywhere = std::all_of(layer.begin(), layer.end(), [&](const Word& z) {
        return std::search(z.begin(), z.end(), u.begin(), u.end()) != z.end();
      });
      if (everywhere) bound = n;
    }
    if (!bound) out.all_uniform_bounds_found = false;
    out.uniform_bounds.emplace_back(u, bound);
  }
  return out;
}

}  // namespace treeset
