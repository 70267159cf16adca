#pragma once

#include <algorithm>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "treeset/factor_set.hpp"
#include "treeset/sources.hpp"

namespace fixture {

// Built-in sets are expensive enough to share between test cases.
inline const treeset::FactorSet& named(const std::string& name, std::size_t horizon = 20) {
  static std::map<std::pair<std::string, std::size_t>, treeset::FactorSet> cache;
  auto key = std::make_pair(name, horizon);
  auto it = cache.find(key);
  if (it == cache.end()) {
    it = cache.emplace(key, treeset::FactorSet::from_morphic(*treeset::builtin_source(name), horizon)).first;
  }
  return it->second;
}

inline treeset::Word w(const treeset::FactorSet& s, std::string_view text) { return s.alphabet().parse(text); }

inline std::vector<std::string> shown(const treeset::Alphabet& alphabet, const std::vector<treeset::Word>& words) {
  std::vector<std::string> out;
  for (const auto& x : words) out.push_back(alphabet.format(x));
  std::sort(out.begin(), out.end());
  return out;
}

inline std::vector<std::string> sorted(std::vector<std::string> v) {
  std::sort(v.begin(), v.end());
  return v;
}

}  // namespace fixture
