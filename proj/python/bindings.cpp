#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "treeset/automaton.hpp"
#include "treeset/codes.hpp"
#include "treeset/error.hpp"
#include "treeset/extension_graph.hpp"
#include "treeset/factor_set.hpp"
#include "treeset/rauzy.hpp"
#include "treeset/sources.hpp"
#include "treeset/subgroup.hpp"

namespace py = pybind11;
using namespace treeset;

namespace {

std::string show(const Alphabet& alphabet, std::span<const Letter> w) {
  return w.empty() ? std::string("ε") : alphabet.format(w);
}

std::vector<std::string> show_all(const Alphabet& alphabet, std::span<const Word> words) {
  std::vector<std::string> out;
  for (const auto& w : words) out.push_back(show(alphabet, w));
  return out;
}

// Alphabet of the base tokens of signed words, in order of appearance.
Alphabet signed_alphabet(const std::vector<std::string>& texts) {
  std::vector<std::string> tokens;
  for (const auto& t : texts) {
    for (auto tok : split_tokens(t)) {
      while (!tok.empty() && tok.back() == '\'') tok.pop_back();
      if (std::find(tokens.begin(), tokens.end(), tok) == tokens.end()) tokens.push_back(tok);
    }
  }
  if (tokens.empty()) tokens.push_back("a");
  return Alphabet(tokens);
}

Code make_code(const std::vector<std::string>& words, const FactorSet* s) {
  const Alphabet alphabet = s ? s->alphabet() : Alphabet::from_texts(words);
  std::vector<Word> parsed;
  for (const auto& w : words) parsed.push_back(alphabet.parse(w));
  return Code(alphabet, std::move(parsed));
}

py::dict automaton_dict(const Automaton& a) {
  py::dict d;
  const auto f = predicates(a);
  d["states"] = a.state_count();
  d["edges"] = a.transition_count();
  d["reversible"] = f.reversible;
  d["group"] = f.group;
  d["complete"] = f.complete;
  d["text"] = to_text(a);
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Factor sets, extension graphs, return words and Stallings foldings";

  py::register_exception<Error>(m, "TreesetError", PyExc_ValueError);

  py::class_<FactorSet>(m, "FactorSet")
      .def_static(
          "from_source",
          [](const std::string& name, std::size_t horizon, std::size_t margin) {
            auto src = builtin_source(name);
            if (!src) throw InputError("unknown source '" + name + "'");
            return FactorSet::from_morphic(*src, horizon, BuildOptions{margin});
          },
          py::arg("name"), py::arg("horizon") = 20, py::arg("margin") = 2)
      .def_static(
          "from_morphism",
          [](const std::string& rules, const std::string& seed, std::size_t horizon, const std::string& coding) {
            return FactorSet::from_morphic(make_source(rules, seed, coding), horizon);
          },
          py::arg("rules"), py::arg("seed") = "a", py::arg("horizon") = 20, py::arg("coding") = "")
      .def_static(
          "from_words",
          [](const std::vector<std::string>& words, std::optional<std::size_t> horizon) {
            const Alphabet alphabet = Alphabet::from_texts(words);
            std::vector<Word> parsed;
            for (const auto& w : words) parsed.push_back(alphabet.parse(w));
            return FactorSet::from_words(alphabet, parsed, horizon);
          },
          py::arg("words"), py::arg("horizon") = py::none())
      .def_property_readonly("horizon", &FactorSet::horizon)
      .def_property_readonly("truncated", &FactorSet::truncated)
      .def_property_readonly("provenance", &FactorSet::provenance)
      .def("contains", [](const FactorSet& s, const std::string& w) { return s.contains(s.alphabet().parse(w)); })
      .def("words", [](const FactorSet& s, std::size_t n) { return show_all(s.alphabet(), s.words_of_length(n)); })
      .def("letters",
           [](const FactorSet& s) {
             std::vector<std::string> out;
             for (Letter a : s.letters()) out.push_back(s.alphabet().token(a));
             return out;
           })
      .def("extension_stats",
           [](const FactorSet& s, const std::string& w) {
             const auto e = extension_stats(s, s.alphabet().parse(w));
             py::dict d;
             d["l"] = e.l();
             d["r"] = e.r();
             d["e"] = e.e();
             d["m"] = e.m();
             return d;
           })
      .def("complexity", [](const FactorSet& s) { return complexity_profile(s).p; })
      .def(
          "classify",
          [](const FactorSet& s, std::optional<std::size_t> max_len) {
            const auto c = set_classify(s, max_len.value_or(s.extension_limit()));
            py::dict d;
            d["biextendable"] = c.biextendable;
            d["acyclic"] = c.acyclic;
            d["connected"] = c.connected;
            d["tree"] = c.tree;
            std::vector<std::string> failing;
            for (const auto& f : c.failing) failing.push_back(show(s.alphabet(), f.word));
            d["failing"] = failing;
            return d;
          },
          py::arg("max_len") = py::none())
      .def("neutrality",
           [](const FactorSet& s, std::optional<std::size_t> max_len) {
             return to_string(neutrality_classification(s, max_len.value_or(s.extension_limit())).verdict);
           },
           py::arg("max_len") = py::none())
      .def(
          "return_words",
          [](const FactorSet& s, const std::string& w, const std::string& side) {
            const auto r = return_words(s, s.alphabet().parse(w), side == "left" ? ReturnSide::left : ReturnSide::right);
            return py::make_tuple(show_all(s.alphabet(), r.words), r.complete);
          },
          py::arg("w"), py::arg("side") = "right")
      .def("verify_return",
           [](const FactorSet& s, const std::string& w) {
             const auto r = verify_return_theorem(s, s.alphabet().parse(w));
             py::dict d;
             d["returns"] = show_all(s.alphabet(), r.returns);
             d["cardinality"] = r.cardinality;
             d["rank"] = r.rank;
             d["basis"] = r.is_basis;
             d["verdict"] = r.verdict;
             return d;
           })
      .def("decode", [](const FactorSet& s, const std::string& rules) { return bifix_decode(s, Morphism::parse(rules)); })
      .def("saturation", [](const FactorSet& s, const std::vector<std::string>& code, std::size_t bound) {
        const auto r = verify_saturation(make_code(code, &s), s, bound);
        py::dict d;
        d["saturated"] = r.saturated;
        d["violations"] = show_all(s.alphabet(), r.violations);
        d["outside"] = show_all(s.alphabet(), r.outside_witnesses);
        return d;
      });

  m.def(
      "reduce",
      [](const std::string& text) {
        const Alphabet alphabet = signed_alphabet({text});
        const auto r = reduce(parse_signed(alphabet, text));
        return format_signed(alphabet, r.symbols());
      },
      "Free-group reduction of a signed word written with trailing ' for inverses");
  m.def("height", [](const std::string& text) {
    const Alphabet alphabet = signed_alphabet({text});
    return height(parse_signed(alphabet, text));
  });
  m.def("is_free", [](const std::vector<std::string>& words) {
    const auto r = is_free(make_code(words, nullptr));
    return py::make_tuple(r.free, r.rank);
  });
  m.def("stallings", [](const std::vector<std::string>& words) {
    const Automaton a = stallings_automaton(make_code(words, nullptr));
    py::dict d = automaton_dict(a);
    d["rank"] = rank(a);
    const auto index = subgroup_index(a);
    d["index"] = index ? py::cast(*index) : py::none();
    return d;
  });
  m.def("minimal_automaton",
        [](const std::vector<std::string>& words) { return automaton_dict(minimal_automaton(make_code(words, nullptr))); });
  m.def("coset_automaton",
        [](const std::vector<std::string>& words) { return automaton_dict(coset_automaton(make_code(words, nullptr))); });
  m.def("membership", [](const std::vector<std::string>& words, const std::string& element) {
    std::vector<std::string> texts = words;
    texts.push_back(element);
    const Alphabet alphabet = signed_alphabet(texts);
    std::vector<Word> parsed;
    for (const auto& w : words) parsed.push_back(alphabet.parse(w));
    const Automaton a = stallings_automaton(Code(alphabet, parsed));
    return membership(a, reduce(parse_signed(alphabet, element)));
  });
  m.def("builtin_sources", [] {
    std::vector<std::string> names;
    for (const auto& s : builtin_sources()) names.push_back(s.name);
    return names;
  });
}
