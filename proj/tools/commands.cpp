#include "commands.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <optional>
#include <sstream>

#include "treeset/automaton.hpp"
#include "treeset/codes.hpp"
#include "treeset/error.hpp"
#include "treeset/extension_graph.hpp"
#include "treeset/factor_set.hpp"
#include "treeset/rauzy.hpp"
#include "treeset/sources.hpp"
#include "treeset/subgroup.hpp"

namespace treeset::cli {
namespace {

using json = nlohmann::ordered_json;

constexpr std::size_t kListCap = 20;

struct Options {
  std::string source;
  std::string morphism;
  std::string seed = "a";
  std::string coding;
  std::string words;
  std::string decode;
  std::size_t horizon = 20;
  std::size_t margin = 2;
  std::string word;
  std::string code;
  std::string kind = "minimal";
  std::string base;
  std::size_t order = 1;
  std::size_t bound = 0;
  std::string format;
  std::string out;
  std::string theorem;
  std::string object;

  CLI::Option* horizon_opt = nullptr;
  CLI::Option* word_opt = nullptr;
  CLI::Option* order_opt = nullptr;
  CLI::Option* bound_opt = nullptr;
  CLI::Option* base_opt = nullptr;
};

std::string read_text(const std::string& value) {
  std::error_code ec;
  if (!std::filesystem::is_regular_file(value, ec)) return value;
  std::ifstream in(value);
  if (!in) throw InputError("cannot read '" + value + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::string show(const Alphabet& alphabet, std::span<const Letter> w) {
  return w.empty() ? std::string("ε") : alphabet.format(w);
}

json word_list(const Alphabet& alphabet, std::span<const Word> words, std::size_t cap = kListCap) {
  json out = json::array();
  for (std::size_t i = 0; i < words.size() && i < cap; ++i) out.push_back(show(alphabet, words[i]));
  return out;
}

std::optional<FactorSet> build_set(const Options& o) {
  const int given = !o.source.empty() + !o.morphism.empty() + !o.words.empty();
  if (given > 1) throw InputError("give only one of --source, --morphism and --words");
  if (given == 0) {
    if (!o.decode.empty()) throw InputError("--decode needs a source set");
    return std::nullopt;
  }
  BuildOptions build;
  build.margin = o.margin;
  std::optional<FactorSet> s;
  if (!o.source.empty()) {
    auto src = builtin_source(o.source);
    if (!src) {
      std::string names;
      for (const auto& n : builtin_sources()) names += (names.empty() ? "" : ", ") + n.name;
      throw InputError("unknown source '" + o.source + "' (known: " + names + ")");
    }
    s = FactorSet::from_morphic(*src, o.horizon, build);
  } else if (!o.morphism.empty()) {
    s = FactorSet::from_morphic(make_source(o.morphism, o.seed, o.coding), o.horizon, build);
  } else {
    const auto entries = split_word_list(read_text(o.words));
    if (entries.empty()) throw InputError("empty word list");
    const Alphabet alphabet = Alphabet::from_texts(entries);
    std::vector<Word> words;
    for (const auto& e : entries) words.push_back(alphabet.parse(e));
    std::optional<std::size_t> horizon;
    if (o.horizon_opt->count() > 0) horizon = o.horizon;
    s = FactorSet::from_words(alphabet, words, horizon);
  }
  if (!o.decode.empty()) s = bifix_decode(*s, Morphism::parse(o.decode));
  return s;
}

FactorSet require_set(const Options& o, std::string_view what) {
  auto s = build_set(o);
  if (!s) throw InputError(std::string(what) + " needs a set: give --source, --morphism or --words");
  return std::move(*s);
}

Code parse_code(const Options& o, const FactorSet* s) {
  if (o.code.empty()) throw InputError("this command needs --code");
  if (o.code.rfind("layer:", 0) == 0) {
    if (!s) throw InputError("--code layer:n needs a set");
    return Code::layer(*s, std::stoul(o.code.substr(6)));
  }
  const auto entries = split_word_list(read_text(o.code));
  if (entries.empty()) throw InputError("empty code");
  const Alphabet alphabet = s ? s->alphabet() : Alphabet::from_texts(entries);
  std::vector<Word> words;
  for (const auto& e : entries) words.push_back(alphabet.parse(e));
  return Code(alphabet, std::move(words));
}

Word parse_word(const Options& o, const FactorSet& s) { return s.alphabet().parse(o.word); }

json set_parameters(const FactorSet& s) {
  json p;
  p["horizon"] = s.horizon();
  p["truncated"] = s.truncated();
  if (const auto& st = s.stabilization()) {
    p["stabilization"] = {{"iterations", st->iterations}, {"prefix_length", st->prefix_length}, {"margin", st->margin}};
  }
  return p;
}

json caveats_for(const FactorSet* s) {
  json c = json::array();
  if (s && s->truncated()) {
    c.push_back("verified up to horizon " + std::to_string(s->horizon()) + " on a truncation; not a proof");
  }
  return c;
}

json verdict_json(const GraphVerdict& v, const BipartiteGraph& g, const Alphabet& alphabet) {
  json out{{"acyclic", v.acyclic}, {"connected", v.connected}, {"tree", v.tree}, {"components", v.components}};
  if (v.cycle) {
    json cyc = json::array();
    for (const auto& x : *v.cycle) {
      const Word& w = x.side == Side::left ? g.left[x.index] : g.right[x.index];
      cyc.push_back((x.side == Side::left ? "L_" : "R_") + show(alphabet, w));
    }
    out["cycle"] = cyc;
  }
  return out;
}

json classify_report(const FactorSet& s) {
  json r;
  r["command"] = "classify";
  r["instance"] = s.provenance();
  r["horizon"] = s.horizon();
  r["parameters"] = set_parameters(s);
  const std::size_t max_len = s.extension_limit();

  const SetClassification c = set_classify(s, max_len);
  json failing = json::array();
  for (std::size_t i = 0; i < c.failing.size() && i < kListCap; ++i) {
    const auto& f = c.failing[i];
    json item{{"word", show(s.alphabet(), f.word)}, {"biextendable", f.biextendable}};
    const auto g = extension_graph(s, f.word);
    item["graph"] = verdict_json(f.verdict, g, s.alphabet());
    failing.push_back(item);
  }
  r["classification"] = {{"max_len", c.max_len},          {"biextendable", c.biextendable}, {"acyclic", c.acyclic},
                         {"connected", c.connected},      {"tree", c.tree},                 {"graphs_checked", c.inspected},
                         {"failing_total", c.failing.size()}, {"failing", failing}};

  const NeutralityReport n = neutrality_classification(s, max_len);
  r["neutrality"] = {{"verdict", to_string(n.verdict)},
                     {"strong", n.strong},
                     {"weak", n.weak},
                     {"neutral", n.neutral},
                     {"max_len", n.max_len}};

  const ComplexityProfile p = complexity_profile(s);
  json cp{{"p", p.p}, {"s", p.s}, {"b", p.b}, {"s_identity", p.s_identity_holds}, {"b_identity", p.b_identity_holds}};
  const std::size_t range = s.truncated() ? max_len : s.horizon();
  if (p.linear_up_to(range)) {
    cp["linear"] = std::to_string(p.p[1] - 1) + "n+1";
  } else {
    cp["linear"] = nullptr;
  }
  r["complexity"] = cp;

  const std::size_t probe = std::min<std::size_t>(3, s.truncated() ? s.horizon() / 3 : s.horizon());
  if (probe >= 1) {
    const RecurrenceReport rec = recurrence_check(s, probe);
    json unconnected = json::array();
    for (std::size_t i = 0; i < rec.unconnected.size() && i < kListCap; ++i) {
      unconnected.push_back({show(s.alphabet(), rec.unconnected[i].first), show(s.alphabet(), rec.unconnected[i].second)});
    }
    r["recurrence"] = {{"probe_len", rec.probe_len},
                       {"recurrent", rec.recurrent},
                       {"uniform_bounds_found", rec.all_uniform_bounds_found},
                       {"unconnected", unconnected},
                       {"qualifier", rec.qualifier}};
  }
  json warnings = json::array();
  if (!c.biextendable) warnings.push_back("set is not biextendable");
  r["warnings"] = warnings;
  r["caveats"] = caveats_for(&s);
  return r;
}

json base_report(std::string theorem, const FactorSet* s, std::string instance) {
  json r;
  r["theorem"] = std::move(theorem);
  r["instance"] = std::move(instance);
  r["verdict"] = nullptr;
  r["witnesses"] = json::object();
  r["horizon"] = s ? json(s->horizon()) : json(nullptr);
  r["caveats"] = caveats_for(s);
  r["parameters"] = s ? set_parameters(*s) : json::object();
  return r;
}

json verify_report(const Options& o) {
  const std::optional<FactorSet> s = build_set(o);
  const FactorSet* sp = s ? &*s : nullptr;
  auto need_set = [&]() -> const FactorSet& {
    if (!s) throw InputError("verify " + o.theorem + " needs a set: give --source, --morphism or --words");
    return *s;
  };
  const std::string instance = s ? s->provenance() : std::string("no set");

  if (o.theorem == "return") {
    const FactorSet& set = need_set();
    if (o.word_opt->count() == 0) throw InputError("verify return needs --word");
    const Word w = parse_word(o, set);
    const auto r = verify_return_theorem(set, w);
    json rep = base_report("return", sp, instance);
    rep["parameters"]["word"] = show(set.alphabet(), w);
    rep["verdict"] = r.verdict;
    rep["witnesses"] = {{"returns", word_list(set.alphabet(), r.returns, r.returns.size())},
                        {"cardinality", r.cardinality},
                        {"alphabet_size", r.alphabet_size},
                        {"generates_free_group", r.generates_free_group},
                        {"rank", r.rank},
                        {"basis", r.is_basis},
                        {"complete", r.complete}};
    return rep;
  }
  if (o.theorem == "card-return") {
    const FactorSet& set = need_set();
    std::vector<Word> words;
    if (o.word_opt->count() > 0) {
      words.push_back(parse_word(o, set));
    } else {
      const std::size_t bound = o.bound_opt->count() > 0 ? o.bound : 3;
      for (std::size_t n = 0; n <= bound; ++n) {
        for (const auto& w : set.words_of_length(n)) words.push_back(w);
      }
    }
    const std::size_t k = set.letters().size();
    bool all_complete = true;
    json failing = json::array();
    std::size_t fails = 0;
    for (const auto& w : words) {
      const auto r = return_words(set, w);
      if (!r.complete) {
        all_complete = false;
        continue;
      }
      if (r.words.size() != k) {
        ++fails;
        if (failing.size() < kListCap) {
          failing.push_back({{"word", show(set.alphabet(), w)},
                             {"returns", word_list(set.alphabet(), r.words, r.words.size())},
                             {"cardinality", r.words.size()}});
        }
      }
    }
    json rep = base_report("card-return", sp, instance);
    rep["parameters"]["words_checked"] = words.size();
    rep["verdict"] = fails > 0 ? "fails" : (all_complete ? "holds" : "inconclusive");
    rep["witnesses"] = {{"alphabet_size", k}, {"failures", fails}, {"failing", failing}};
    return rep;
  }
  if (o.theorem == "freeness") {
    const Code x = parse_code(o, sp);
    const auto r = is_free(x);
    json rep = base_report("freeness", sp, instance);
    rep["parameters"]["code"] = x.format();
    rep["verdict"] = r.free ? "free" : "not free";
    rep["witnesses"] = {{"rank", r.rank},
                        {"size", r.size},
                        {"bifix", x.role().bifix()},
                        {"stallings_states", r.folded.state_count()},
                        {"stallings_edges", r.folded.transition_count()}};
    if (sp) {
      const bool inside = std::all_of(x.words().begin(), x.words().end(), [&](const Word& w) { return sp->contains(w); });
      rep["witnesses"]["code_in_set"] = inside;
    }
    return rep;
  }
  if (o.theorem == "saturation") {
    const FactorSet& set = need_set();
    const Code x = parse_code(o, &set);
    const std::size_t bound = o.bound_opt->count() > 0 ? o.bound : set.horizon();
    const auto r = verify_saturation(x, set, bound);
    const auto unitary = verify_unitary_corollary(x, set, bound);
    json rep = base_report("saturation", sp, instance);
    rep["parameters"]["code"] = x.format();
    rep["parameters"]["bound"] = bound;
    rep["verdict"] = r.saturated ? "saturated" : "not saturated";
    json uni = json::array();
    for (std::size_t i = 0; i < unitary.size() && i < kListCap; ++i) {
      uni.push_back({{"u", show(set.alphabet(), unitary[i].u)},
                     {"v", show(set.alphabet(), unitary[i].v)},
                     {"side", unitary[i].right ? "right" : "left"}});
    }
    rep["witnesses"] = {{"words_checked", r.checked},
                        {"violations", word_list(set.alphabet(), r.violations)},
                        {"in_subgroup_outside_set", word_list(set.alphabet(), r.outside_witnesses)},
                        {"unitary_violations", unitary.size()},
                        {"unitary_examples", uni}};
    if (!x.role().bifix()) rep["caveats"].push_back("code is not bifix; the theorem does not apply");
    return rep;
  }
  if (o.theorem == "rauzy-group") {
    const FactorSet& set = need_set();
    if (o.order_opt->count() == 0) throw InputError("verify rauzy-group needs --order");
    Word base;
    if (o.base_opt->count() > 0) {
      base = set.alphabet().parse(o.base);
    } else {
      const auto& layer = set.words_of_length(o.order);
      if (layer.empty()) throw HorizonError("no vertices at order " + std::to_string(o.order));
      base = layer.front();
    }
    const auto r = rauzy_group(set, o.order, base);
    json rep = base_report("rauzy-group", sp, instance);
    rep["parameters"]["order"] = o.order;
    rep["parameters"]["base"] = show(set.alphabet(), base);
    rep["verdict"] = r.describes_free_group ? "free group" : "proper subgroup";
    rep["witnesses"] = {{"folded_states", r.folded.state_count()}, {"rank", r.rank}, {"folded", to_text(r.folded)}};
    return rep;
  }
  if (o.theorem == "quotient") {
    const FactorSet& set = need_set();
    if (o.order_opt->count() == 0 || o.order == 0) throw InputError("verify quotient needs --order n >= 1");
    const auto r = check_quotient(set, o.order);
    json classes = json::array();
    for (const auto& cls : r.classes) classes.push_back(word_list(set.alphabet(), cls, cls.size()));
    json rep = base_report("quotient", sp, instance);
    rep["parameters"]["order"] = o.order;
    rep["verdict"] = r.isomorphism ? "isomorphic" : "not isomorphic";
    rep["witnesses"] = {{"classes", classes},
                        {"quotient_vertices", r.quotient.vertex_count()},
                        {"quotient_edges", r.quotient.edges.size()},
                        {"previous_vertices", r.previous.vertex_count()},
                        {"previous_edges", r.previous.edges.size()}};
    return rep;
  }
  throw InputError("unknown theorem '" + o.theorem + "'");
}

std::string render_text(const json& j) {
  std::ostringstream out;
  for (const auto& [key, value] : j.items()) {
    if (value.is_string()) {
      out << key << ": " << value.get<std::string>() << "\n";
    } else if (value.is_object()) {
      out << key << ":\n";
      for (const auto& [k, v] : value.items()) {
        out << "  " << k << ": " << (v.is_string() ? v.get<std::string>() : v.dump()) << "\n";
      }
    } else {
      out << key << ": " << value.dump() << "\n";
    }
  }
  return out.str();
}

std::string export_object(const Options& o) {
  const std::string format = o.format.empty() ? "dot" : o.format;
  if (format == "json") throw InputError("export supports --format dot or text");
  const bool dot = format == "dot";
  const std::optional<FactorSet> s = build_set(o);
  const FactorSet* sp = s ? &*s : nullptr;

  if (o.object == "extension-graph") {
    if (!s) throw InputError("export extension-graph needs a set");
    const Word w = parse_word(o, *s);
    const auto g = extension_graph(*s, w);
    if (dot) return to_dot(g, s->alphabet(), "extension");
    std::ostringstream out;
    for (auto [l, r] : g.edges) out << show(s->alphabet(), g.left[l]) << " " << show(s->alphabet(), g.right[r]) << "\n";
    return out.str();
  }
  if (o.object == "rauzy") {
    if (!s) throw InputError("export rauzy needs a set");
    const auto g = rauzy_graph(*s, o.order).labeled(s->alphabet());
    if (dot) return to_dot(g, s->alphabet(), "rauzy");
    std::ostringstream out;
    for (const auto& e : g.edges) out << g.names[e.from] << " " << s->alphabet().token(e.label) << " " << g.names[e.to] << "\n";
    return out.str();
  }
  const Code x = parse_code(o, sp);
  if (o.object == "incidence") {
    const auto g = incidence_graph(x);
    if (dot) return to_dot(g, x.alphabet(), "incidence");
    std::ostringstream out;
    for (auto [l, r] : g.edges) out << show(x.alphabet(), g.left[l]) << " " << show(x.alphabet(), g.right[r]) << "\n";
    return out.str();
  }
  if (o.object == "automaton" || o.object == "coset") {
    std::optional<Automaton> a;
    if (o.object == "coset") {
      a = coset_automaton(x);
    } else if (o.kind == "literal") {
      a = literal_automaton(x);
    } else if (o.kind == "minimal") {
      a = minimal_automaton(x);
    } else if (o.kind == "folded") {
      a = stallings_fold(minimal_automaton(x)).result;
    } else if (o.kind == "stallings") {
      a = stallings_automaton(x);
    } else {
      throw InputError("unknown automaton kind '" + o.kind + "' (literal, minimal, folded, stallings)");
    }
    return dot ? to_dot(*a, o.object == "coset" ? "coset" : "automaton") : to_text(*a);
  }
  throw InputError("unknown export object '" + o.object + "'");
}

void add_set_options(CLI::App* cmd, Options& o) {
  cmd->add_option("--source", o.source, "Built-in source: fibonacci, tribonacci, chacon, cassaigne-acyclic, cassaigne-neutral");
  cmd->add_option("--morphism", o.morphism, "Generating morphism, e.g. \"a->ab; b->a\"");
  cmd->add_option("--seed", o.seed, "Seed letter of the fixpoint")->capture_default_str();
  cmd->add_option("--coding", o.coding, "Morphism applied to the fixpoint");
  cmd->add_option("--words", o.words, "Word list file or inline list; the set is its factorial closure");
  cmd->add_option("--decode", o.decode, "Coding morphism of a bifix code; the set becomes its bifix decoding");
  o.horizon_opt = cmd->add_option("--horizon", o.horizon, "Maximal stored factor length")->capture_default_str();
  cmd->add_option("--margin", o.margin, "Extra stable iterations for morphic sources")->capture_default_str();
  cmd->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"json", "text", "dot"}));
  cmd->add_option("--out", o.out, "Write output to this path instead of stdout");
}

void emit(const Options& o, const std::string& text, std::ostream& out) {
  if (o.out.empty()) {
    out << text;
    return;
  }
  std::ofstream file(o.out);
  if (!file) throw InputError("cannot write '" + o.out + "'");
  file << text;
}

std::string render(const Options& o, const json& j) {
  const std::string format = o.format.empty() ? "json" : o.format;
  if (format == "dot") throw InputError("dot output is only available for export");
  return format == "json" ? j.dump(2) + "\n" : render_text(j);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Acyclic, connected and tree sets of words: classification, return words, Rauzy graphs, "
               "Stallings foldings and subgroup checks."};
  app.name("treeset");
  app.require_subcommand(1);
  Options o;

  auto* classify = app.add_subcommand("classify", "Extension-graph classification, neutrality, complexity, recurrence");
  add_set_options(classify, o);

  auto* verify = app.add_subcommand("verify", "Check a theorem on an instance");
  verify->add_option("theorem", o.theorem, "return, card-return, freeness, saturation, rauzy-group, quotient")
      ->required()
      ->check(CLI::IsMember({"return", "card-return", "freeness", "saturation", "rauzy-group", "quotient"}));
  add_set_options(verify, o);

  auto* exp = app.add_subcommand("export", "Write a graph or automaton as DOT or text");
  exp->add_option("object", o.object, "extension-graph, rauzy, incidence, automaton, coset")
      ->required()
      ->check(CLI::IsMember({"extension-graph", "rauzy", "incidence", "automaton", "coset"}));
  add_set_options(exp, o);
  exp->add_option("--kind", o.kind, "Automaton kind: literal, minimal, folded, stallings")->capture_default_str();

  for (auto* cmd : {verify, exp}) {
    o.word_opt = cmd->add_option("--word", o.word, "Word w (\"\" or ε for the empty word)");
    cmd->add_option("--code", o.code, "Code file, inline list like {aa,ab,ba}, or layer:n for S ∩ A^n");
    o.order_opt = cmd->add_option("--order", o.order, "Rauzy graph order n");
  }
  // Each subcommand owns distinct option objects; keep pointers to the ones
  // that are actually parsed.
  o.bound_opt = verify->add_option("--bound", o.bound, "Length bound L");
  o.base_opt = verify->add_option("--base", o.base, "Base vertex of the Rauzy graph");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    // --help exits cleanly; every other parse failure is a usage error
    return app.exit(e, out, err) == 0 ? 0 : 1;
  }

  // Rebind the shared option pointers to the subcommand that ran.
  CLI::App* active = app.get_subcommands().front();
  o.horizon_opt = active->get_option("--horizon");
  if (active != classify) {
    o.word_opt = active->get_option("--word");
    o.order_opt = active->get_option("--order");
  }

  try {
    if (active == classify) {
      emit(o, render(o, classify_report(require_set(o, "classify"))), out);
    } else if (active == verify) {
      emit(o, render(o, verify_report(o)), out);
    } else {
      emit(o, export_object(o), out);
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}

}  // namespace treeset::cli
