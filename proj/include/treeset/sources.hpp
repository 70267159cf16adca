#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "treeset/factor_set.hpp"

namespace treeset {

struct NamedSource {
  std::string name;
  std::string generator;  // morphism rules
  std::string seed;
  std::string coding;     // empty when the fixpoint is used as is
};

// fibonacci, tribonacci, chacon, cassaigne-acyclic, cassaigne-neutral.
const std::vector<NamedSource>& builtin_sources();
std::optional<MorphicSource> builtin_source(std::string_view name);

MorphicSource make_source(std::string_view generator, std::string_view seed, std::string_view coding = {});

}  // namespace treeset
