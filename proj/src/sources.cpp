#include "treeset/sources.hpp"

#include "treeset/error.hpp"

namespace treeset {

const std::vector<NamedSource>& builtin_sources() {
  static const std::vector<NamedSource> sources{
      {"fibonacci", "a->ab; b->a", "a", ""},
      {"tribonacci", "a->ab; b->ac; c->a", "a", ""},
      {"chacon", "a->aabc; b->bc; c->abc", "a", ""},
      {"cassaigne-acyclic", "a->ab; b->cda; c->cd; d->abc", "a", ""},
      {"cassaigne-neutral", "a->ab; b->cda; c->cd; d->abc", "a", "a->12; b->2; c->3; d->13"},
  };
  return sources;
}

MorphicSource make_source(std::string_view generator, std::string_view seed, std::string_view coding) {
  Morphism f = Morphism::parse(generator);
  if (!f.is_endomorphism()) throw InputError("generating morphism must map the alphabet into itself");
  MorphicSource source{f, f.domain().letter(seed), std::nullopt};
  if (!coding.empty()) {
    Morphism g = Morphism::parse(coding);
    if (!(g.domain() == f.domain())) throw InputError("coding morphism must be defined on the generator alphabet");
    source.coding = std::move(g);
  }
  return source;
}

std::optional<MorphicSource> builtin_source(std::string_view name) {
  for (const auto& s : builtin_sources()) {
    if (s.name == name) return make_source(s.generator, s.seed, s.coding);
  }
  return std::nullopt;
}

}  // namespace treeset
