#include "permutab/cli.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <optional>
#include <sstream>

#include "permutab/category.hpp"
#include "permutab/error.hpp"
#include "permutab/maltsev.hpp"
#include "permutab/paperlab.hpp"
#include "permutab/relation.hpp"
#include "permutab/search.hpp"
#include "permutab/serialize.hpp"

namespace permutab::cli {

namespace {

/// Bad command line or unusable input: exit code 2.
class InputError : public Error {
 public:
  using Error::Error;
};

struct Options {
  bool json = false;
  std::string out;
  unsigned workers = 1;
  std::optional<std::size_t> cap;

  std::string algebra;
  std::string identities;
  std::string rel;
  std::string rel2;
  std::string category;
  std::string spec;
  std::string sizes;
  std::string name;
  unsigned n = 2;
  unsigned max_n = 4;
  std::size_t max_size = 3;
  std::optional<std::size_t> time_ms;
  bool terms = false;
  bool dedup = false;
  bool enumerate = false;
};

/// What a command produced: a verdict, or an object (exit 0).
struct Outcome {
  std::optional<Report> report;
  std::optional<Document> doc;
  std::string text;  // text form of doc; serialized JSON if empty
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

/// A path, or fixture:NAME for a built-in fixture.
Document load_document(const std::string& input) {
  if (input.empty()) throw InputError("missing input");
  constexpr std::string_view prefix = "fixture:";
  if (input.rfind(prefix, 0) == 0) {
    try {
      return fixture_document(load_fixture(input.substr(prefix.size())));
    } catch (const InternalInconsistency&) {
      throw;
    } catch (const Error& e) {
      throw InputError(e.what());
    }
  }
  try {
    return parse_document(read_file(input));
  } catch (const ParseError& e) {
    throw InputError(input + ": " + e.what());
  }
}

template <class T>
T expect_kind(Document doc, const std::string& input, const char* kind) {
  if (auto* v = std::get_if<T>(&doc.payload)) return std::move(*v);
  throw InputError(input + ": expected a " + std::string(kind) +
                   " document, got " + kind_name(doc.payload));
}

Algebra load_algebra(const std::string& input) {
  return expect_kind<Algebra>(load_document(input), input, "algebra");
}

struct LabeledRelation {
  BinRelation relation;
  std::vector<std::string> labels;
};

LabeledRelation load_relation(const std::string& input) {
  Document doc = load_document(input);
  auto labels = doc.labels;
  return {expect_kind<BinRelation>(std::move(doc), input, "relation"),
          std::move(labels)};
}

struct LabeledCategory {
  FinCategory category;
  std::vector<std::string> labels;
};

LabeledCategory category_from_preorder(const LabeledRelation& r) {
  const auto p = properties(r.relation);
  if (!p.reflexive || !p.transitive)
    throw InputError("relation is not a preorder");
  std::vector<std::string> labels;
  for (const auto& pair : r.relation.pairs())
    labels.push_back(format_pair(pair, r.labels));
  return {preorder_to_category(r.relation), std::move(labels)};
}

/// A category document, or from-preorder(RELATION-INPUT).
LabeledCategory load_category(const std::string& input) {
  constexpr std::string_view prefix = "from-preorder(";
  if (input.rfind(prefix, 0) == 0 && input.back() == ')')
    return category_from_preorder(
        load_relation(input.substr(prefix.size(),
                                   input.size() - prefix.size() - 1)));
  Document doc = load_document(input);
  auto labels = doc.labels;
  return {expect_kind<FinCategory>(std::move(doc), input, "category"),
          std::move(labels)};
}

std::size_t default_cap(const Options& o, std::size_t fallback) {
  if (o.cap) return *o.cap;
  if (const char* env = std::getenv("PERMUTAB_CAP")) {
    std::size_t pos = 0;
    try {
      const auto v = std::stoull(env, &pos);
      if (pos == std::string(env).size()) return v;
    } catch (const std::exception&) {
    }
    throw InputError("PERMUTAB_CAP must be a nonnegative integer");
  }
  return fallback;
}

CloneOptions clone_options(const Options& o) {
  return {default_cap(o, CloneOptions{}.cap), o.workers};
}

EnumerationOptions enum_options(const Options& o) {
  EnumerationOptions e;
  e.workers = o.workers;
  return e;
}

std::pair<std::size_t, std::size_t> parse_sizes(const std::string& text) {
  const auto dots = text.find("..");
  try {
    std::size_t pos = 0;
    if (dots == std::string::npos) {
      const auto v = std::stoull(text, &pos);
      if (pos == text.size()) return {v, v};
    } else {
      const auto a = std::stoull(text.substr(0, dots), &pos);
      if (pos == dots) {
        const std::string rest = text.substr(dots + 2);
        const auto b = std::stoull(rest, &pos);
        if (pos == rest.size()) return {a, b};
      }
    }
  } catch (const std::exception&) {
  }
  throw InputError("--sizes expects a..b, got '" + text + "'");
}

Json category_json(const LabeledCategory& c) {
  return to_json({c.category, c.labels});
}

std::string morphism_label(const LabeledCategory& c, Morphism f) {
  return f < c.labels.size() ? c.labels[f] : std::to_string(f);
}

Report verdict_report(std::string check, const PermutabilityVerdict& v,
                      const std::vector<std::string>& labels) {
  Report r = make_report(std::move(check), v.holds);
  r.data["verdict"] = verdict_json(v);
  if (v.witness) {
    const auto& w = *v.witness;
    std::string rels;
    for (const auto& rel : w.relations) {
      if (!rels.empty()) rels += " and ";
      rels += format_relation(rel, labels);
    }
    r.summary = std::string(to_string(w.condition)) + " fails for " + rels +
                " at " + format_pair(w.pair, labels);
  }
  return r;
}

std::string chain_text(const HmResult& h, const Signature& sig) {
  std::string out;
  for (std::size_t i = 0; i < h.chain.size(); ++i) {
    if (i) out += "; ";
    out += "theta" + std::to_string(i + 1) + " = ";
    out += h.chain[i].provenance
               ? format_term(*h.chain[i].provenance, sig, {"x", "y", "z"})
               : "?";
  }
  return out;
}

Json chain_json(const HmResult& h, const Signature& sig) {
  Json j = Json::array();
  for (const auto& op : h.chain) {
    Json e = {{"table", op.table}};
    if (op.provenance)
      e["term"] = format_term(*op.provenance, sig, {"x", "y", "z"});
    j.push_back(std::move(e));
  }
  return j;
}

Status outcome_status(SearchOutcome o) {
  switch (o) {
    case SearchOutcome::found:
      return Status::holds;
    case SearchOutcome::none:
      return Status::fails;
    case SearchOutcome::inconclusive:
      return Status::inconclusive;
  }
  return Status::inconclusive;
}

// ---- commands ----

Outcome cmd_check_identities(const Options& o) {
  const Algebra alg = load_algebra(o.algebra);
  const IdentitySet ids = expect_kind<IdentitySet>(
      load_document(o.identities), o.identities, "identities");
  if (ids.signature != alg.signature()) {
    for (const auto& s : ids.signature) {
      const auto i = alg.signature().find(s.name);
      if (!i || alg.signature()[*i].arity != s.arity)
        throw InputError("algebra has no symbol " + s.name + "/" +
                         std::to_string(s.arity));
    }
  }
  Report r = check_identities(alg, ids);
  r.data["algebra"] = algebra_json(alg);
  r.data["identities"] = to_json({ids, {}});
  return {r, {}, {}};
}

Outcome cmd_relcalc(const std::string& op, const Options& o) {
  const auto r = load_relation(o.rel);
  auto produced = [&](BinRelation result) {
    Outcome out;
    out.text = format_relation(result, r.labels) + "\n";
    out.doc = Document{std::move(result), r.labels};
    return out;
  };
  if (op == "compose") return produced(compose(r.relation, load_relation(o.rel2).relation));
  if (op == "converse") return produced(converse(r.relation));
  if (op == "power") return produced(relation_power(r.relation, o.n));
  if (op == "closure") return produced(transitive_closure(r.relation));
  const auto p = properties(r.relation);
  Report rep = make_report("properties", Status::holds,
                           std::string(p.reflexive ? "" : "not ") + "reflexive, " +
                               (p.symmetric ? "" : "not ") + "symmetric, " +
                               (p.transitive ? "" : "not ") + "transitive");
  rep.data = {{"reflexive", p.reflexive},
              {"symmetric", p.symmetric},
              {"transitive", p.transitive},
              {"relation", relation_json(r.relation, r.labels)}};
  return {rep, {}, {}};
}

Outcome cmd_compatible(const Options& o) {
  const Algebra alg = load_algebra(o.algebra);
  const auto r = load_relation(o.rel);
  if (r.relation.size() != alg.size())
    throw InputError("relation size does not match the algebra");
  const auto c = is_compatible(r.relation, alg);
  Report rep = make_report("compatible", c.holds(),
                           format_relation(r.relation, alg.labels()));
  if (!c.holds()) {
    const auto& v = *c.violation;
    std::string args;
    Json jargs = Json::array();
    for (const auto& p : v.args) {
      if (!args.empty()) args += ", ";
      args += format_pair(p, alg.labels());
      jargs.push_back({p.first, p.second});
    }
    const auto& name = alg.signature()[v.symbol].name;
    rep.summary = name + "(" + args + ") = " +
                  format_pair(v.result, alg.labels()) + " leaves the relation";
    rep.data["violation"] = {{"symbol", name},
                             {"args", jargs},
                             {"result", {v.result.first, v.result.second}}};
  }
  rep.data["algebra"] = algebra_json(alg);
  rep.data["relation"] = relation_json(r.relation);
  return {rep, {}, {}};
}

Outcome cmd_congruence_gen(const Options& o) {
  const Algebra alg = load_algebra(o.algebra);
  const auto r = load_relation(o.rel);
  if (r.relation.size() != alg.size())
    throw InputError("relation size does not match the algebra");
  Outcome out;
  auto theta = congruence_generated(alg, r.relation);
  out.text = format_relation(theta, alg.labels()) + "\n";
  out.doc = Document{std::move(theta), alg.labels()};
  return out;
}

Outcome cmd_permutes(const Options& o) {
  const auto r = load_relation(o.rel);
  const auto s = load_relation(o.rel2);
  Report rep = verdict_report("permutes n=" + std::to_string(o.n),
                              pair_permutes_at(r.relation, s.relation, o.n),
                              r.labels);
  return {rep, {}, {}};
}

Outcome cmd_hagemann(const Options& o) {
  const Algebra alg = load_algebra(o.algebra);
  Report rep = verdict_report("hagemann n=" + std::to_string(o.n),
                              hagemann_check(alg, o.n, enum_options(o)),
                              alg.labels());
  rep.data["algebra"] = algebra_json(alg);
  return {rep, {}, {}};
}

Outcome cmd_clone(const Options& o) {
  const Algebra alg = load_algebra(o.algebra);
  const TernaryClone clone = ternary_clone(alg, clone_options(o));
  std::size_t rounds = 0;
  for (std::size_t i = 0; i < clone.size(); ++i)
    rounds = std::max(rounds, clone.generation(i));
  Report rep = make_report("clone", Status::holds,
                           std::to_string(clone.size()) +
                               " ternary term operations, " +
                               std::to_string(rounds) + " rounds");
  rep.data["size"] = clone.size();
  rep.data["rounds"] = rounds;
  if (o.terms) {
    Json ops = Json::array();
    for (std::size_t i = 0; i < clone.size(); ++i)
      ops.push_back({{"term", format_term(clone.term(i, alg.signature()),
                                          alg.signature(), {"x", "y", "z"})},
                     {"table", clone[i].table}});
    rep.data["operations"] = std::move(ops);
  }
  return {rep, {}, {}};
}

Outcome cmd_hm_terms(const Options& o) {
  const Algebra alg = load_algebra(o.algebra);
  const auto h = find_hm_terms(alg, o.n, clone_options(o));
  Report rep = make_report("hm-terms n=" + std::to_string(o.n),
                           outcome_status(h.outcome));
  rep.summary = h.outcome == SearchOutcome::found
                    ? chain_text(h, alg.signature())
                    : std::string(to_string(h.outcome)) + " (clone of " +
                          std::to_string(h.clone_size) + " operations)";
  rep.data["outcome"] = to_string(h.outcome);
  rep.data["clone_size"] = h.clone_size;
  if (h.outcome == SearchOutcome::found)
    rep.data["chain"] = chain_json(h, alg.signature());
  rep.data["algebra"] = algebra_json(alg);
  return {rep, {}, {}};
}

Outcome cmd_degree(const Options& o) {
  const Algebra alg = load_algebra(o.algebra);
  const auto d = permutability_degree(alg, o.max_n, clone_options(o));
  Report rep = make_report("degree", outcome_status(d.outcome));
  switch (d.outcome) {
    case SearchOutcome::found:
      rep.summary = std::to_string(d.degree) + "-permutable: " +
                    chain_text(d.terms, alg.signature());
      rep.data["degree"] = d.degree;
      rep.data["chain"] = chain_json(d.terms, alg.signature());
      break;
    case SearchOutcome::none:
      rep.summary = "none up to " + std::to_string(o.max_n);
      break;
    case SearchOutcome::inconclusive:
      rep.summary = "clone cap reached";
      break;
  }
  rep.data["outcome"] = to_string(d.outcome);
  rep.data["max_n"] = o.max_n;
  rep.data["clone_size"] = d.clone_size;
  rep.data["algebra"] = algebra_json(alg);
  return {rep, {}, {}};
}

Outcome cmd_cross_validate(const Options& o) {
  const Algebra alg = load_algebra(o.algebra);
  Report rep =
      cross_validate(alg, o.max_n, clone_options(o), enum_options(o));
  rep.data["algebra"] = algebra_json(alg);
  return {rep, {}, {}};
}

Outcome cmd_category(const std::string& op, const Options& o) {
  if (op == "from-preorder") {
    const auto c = category_from_preorder(load_relation(o.rel));
    Outcome out;
    out.doc = Document{c.category, c.labels};
    return out;
  }
  const auto c = load_category(o.category);
  if (op == "validate") {
    Report rep = validate_category(c.category);
    rep.data["category"] = category_json(c);
    return {rep, {}, {}};
  }
  if (!is_valid_category(c.category)) {
    std::string msg = "not a valid category:";
    for (const auto& v : category_violations(c.category)) msg += "\n  " + v;
    throw InputError(msg);
  }
  if (op == "thin") {
    Report rep = make_report("thin", is_thin(c.category));
    rep.data["category"] = category_json(c);
    return {rep, {}, {}};
  }
  if (op == "to-preorder") {
    if (!is_thin(c.category)) throw InputError("category is not thin");
    Outcome out;
    auto r = category_to_relation(c.category);
    out.text = format_relation(r) + "\n";
    out.doc = Document{std::move(r), {}};
    return out;
  }
  if (op == "s-relation") {
    Report rep = s_properties(c.category);
    const auto s = composability_relation(c.category);
    rep.summary = format_relation(s, c.labels) + "; " + rep.summary;
    rep.data["relation"] = relation_json(s, c.labels);
    return {rep, {}, {}};
  }
  if (op == "cancel") {
    Report rep = has_left_cancellation(c.category);
    if (const auto w = left_cancellation_witness(c.category))
      rep.summary = morphism_label(c, w->g) + " after " +
                    morphism_label(c, w->b) + " equals " +
                    morphism_label(c, w->g) + " after " +
                    morphism_label(c, w->d);
    rep.data["category"] = category_json(c);
    return {rep, {}, {}};
  }
  // groupoidify
  const auto g = groupoidify(c.category);
  Report rep = make_report("groupoidify", Status::holds);
  if (const auto* inv = std::get_if<InversionMap>(&g)) {
    std::string text;
    for (Morphism f = 0; f < inv->inv.size(); ++f) {
      if (f) text += ", ";
      text += morphism_label(c, f) + " -> " + morphism_label(c, inv->inv[f]);
    }
    rep.summary = "inverses " + text;
    rep.data["inverse"] = inv->inv;
  } else {
    const auto& fail = std::get<GroupoidFailure>(g);
    rep.status = Status::fails;
    rep.summary = "S is not symmetric: (" + morphism_label(c, fail.b) + ", " +
                  morphism_label(c, fail.a) + ") is in S but not its mirror; " +
                  morphism_label(c, fail.a) + " has no inverse";
    rep.data["witness"] = {fail.b, fail.a};
  }
  rep.data["category"] = category_json(c);
  return {rep, {}, {}};
}

Outcome cmd_verify_paper(const std::string& what, const Options& o) {
  if (what.empty()) return {verify_paper(o.workers), {}, {}};
  if (what == "span") return {verify_punctual_span(), {}, {}};
  if (what == "subtraction") return {verify_subtraction_example(), {}, {}};
  if (what == "monoid")
    return {verify_subtractive_monoids(o.max_size, o.workers), {}, {}};
  const Algebra alg =
      load_algebra(o.algebra.empty() ? "fixture:perm-Z2" : o.algebra);
  Report rep = verify_perm_algebra(alg, o.n, enum_options(o));
  rep.data["algebra"] = algebra_json(alg);
  return {rep, {}, {}};
}

Json witness_json(const SearchWitness& w) {
  return std::visit(
      [](const auto& v) -> Json {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, std::monostate>) return nullptr;
        if constexpr (std::is_same_v<T, BinRelation>) return relation_json(v);
        if constexpr (std::is_same_v<T, PermutabilityVerdict>)
          return verdict_json(v);
        if constexpr (std::is_same_v<T, MonoidStructure>)
          return {{"plus", v.plus}, {"unit", v.unit}};
      },
      w);
}

Outcome cmd_search(const Options& o) {
  SearchSpec spec = expect_kind<SearchSpec>(load_document(o.spec), o.spec,
                                            "search-spec");
  if (!o.sizes.empty()) std::tie(spec.min_size, spec.max_size) = parse_sizes(o.sizes);
  spec.limits.candidate_cap = default_cap(o, spec.limits.candidate_cap);
  if (o.time_ms) spec.limits.time_budget = std::chrono::milliseconds(*o.time_ms);
  if (o.dedup) spec.dedup = true;
  try {
    validate_spec(spec);
  } catch (const Error& e) {
    throw InputError(e.what());
  }

  if (o.enumerate) {
    const auto e = enumerate_models(spec, o.workers);
    Report rep = make_report(
        "enumerate", e.complete ? Status::holds : Status::inconclusive);
    std::string counts;
    Json per_size = Json::array();
    for (auto [size, count] : e.per_size) {
      if (!counts.empty()) counts += ", ";
      counts += std::to_string(count) + " of size " + std::to_string(size);
      per_size.push_back({size, count});
    }
    rep.summary = counts + (e.complete ? "" : " (partial)");
    rep.data["per_size"] = std::move(per_size);
    Json models = Json::array();
    for (const auto& m : e.models) models.push_back(algebra_json(m));
    rep.data["models"] = std::move(models);
    rep.data["spec"] = to_json({spec, {}});
    return {rep, {}, {}};
  }

  const auto f = find_model(spec, o.workers);
  Report rep = make_report("search " + to_string(spec.predicate),
                           outcome_status(f.outcome));
  Json sizes = Json::array();
  for (const auto& s : f.sizes)
    sizes.push_back({{"size", s.size},
                     {"models", s.models_examined},
                     {"found", s.found},
                     {"complete", s.complete}});
  rep.data["sizes"] = std::move(sizes);
  if (f.model) {
    rep.summary = "found at size " + std::to_string(f.model->size());
    if (const auto* r = std::get_if<BinRelation>(&f.witness))
      rep.summary += "; witness " + format_relation(*r, f.model->labels());
    rep.data["model"] = algebra_json(*f.model);
    rep.data["witness"] = witness_json(f.witness);
  } else {
    rep.summary = f.outcome == SearchOutcome::none
                      ? "none within sizes " + std::to_string(spec.min_size) +
                            ".." + std::to_string(spec.max_size)
                      : std::string("inconclusive: limit reached");
  }
  rep.data["spec"] = to_json({spec, {}});
  return {rep, {}, {}};
}

Outcome cmd_fixtures(const std::string& op, const Options& o) {
  if (op == "list") {
    Outcome out;
    Report rep = make_report("fixtures", Status::holds);
    Json list = Json::array();
    for (const auto& name : fixture_names()) {
      const auto f = load_fixture(name);
      out.text += name + "  " + f.description + "\n";
      list.push_back({{"name", name},
                      {"kind", kind_name(fixture_document(f).payload)},
                      {"description", f.description}});
    }
    rep.data["fixtures"] = std::move(list);
    out.report = std::move(rep);
    return out;
  }
  Outcome out;
  out.doc = load_document("fixture:" + o.name);
  return out;
}

int exit_code(Status s) {
  switch (s) {
    case Status::holds:
      return kHolds;
    case Status::fails:
      return kFails;
    case Status::inconclusive:
      return kInconclusive;
  }
  return kInconclusive;
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw InputError("cannot write " + path);
  f << text;
}

/// Prints the outcome and returns the exit code.
int emit(const Outcome& outcome, const Options& o, std::ostream& out) {
  std::string machine;
  std::string human;
  int code = kHolds;
  if (outcome.doc) {
    machine = serialize(*outcome.doc);
    human = outcome.text.empty() ? machine : outcome.text;
  } else {
    machine = report_json(*outcome.report).dump(2) + "\n";
    human = outcome.text.empty() ? render_text(*outcome.report) : outcome.text;
    code = exit_code(outcome.report->status);
  }
  if (!o.out.empty()) write_file(o.out, machine);
  out << (o.json ? machine : human);
  return code;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"Finite algebra, relation and category workbench", "permutab"};
  app.require_subcommand(1);
  Options o;

  auto common = [&](CLI::App* c) {
    c->add_flag("--json", o.json, "Print the machine-readable document only");
    c->add_option("--out", o.out, "Also write the JSON document to this file");
    c->add_option("--workers", o.workers, "Worker threads")
        ->check(CLI::Range(1u, 256u));
  };
  auto with_cap = [&](CLI::App* c) {
    c->add_option("--cap", o.cap,
                  "Operation or model cap (default: PERMUTAB_CAP or built-in)");
  };
  auto algebra = [&](CLI::App* c) {
    c->add_option("--algebra", o.algebra, "Algebra file or fixture:NAME")
        ->required();
  };
  auto n_opt = [&](CLI::App* c) {
    c->add_option("--n", o.n, "Number of factors")->check(CLI::Range(2u, 64u));
  };
  auto max_n = [&](CLI::App* c) {
    c->add_option("--max-n", o.max_n, "Largest n tried")
        ->check(CLI::Range(2u, 64u));
  };

  auto* check_ids = app.add_subcommand("check-identities",
                                       "Check identities on an algebra");
  common(check_ids);
  algebra(check_ids);
  check_ids->add_option("--identities", o.identities, "Identity set file")
      ->required();

  auto* relcalc = app.add_subcommand("relcalc", "Relation calculus");
  relcalc->require_subcommand(1);
  std::string relcalc_op;
  for (const char* op : {"compose", "converse", "power", "closure", "properties"}) {
    auto* sub = relcalc->add_subcommand(op);
    common(sub);
    sub->add_option("--rel", o.rel, "Relation file or fixture:NAME")->required();
    if (std::string(op) == "compose")
      sub->add_option("--rel2", o.rel2, "Right-hand relation")->required();
    if (std::string(op) == "power")
      sub->add_option("--n", o.n, "Exponent (>= 1)")
          ->check(CLI::Range(1u, 1024u))
          ->required();
    sub->callback([&relcalc_op, op] { relcalc_op = op; });
  }

  auto* compatible = app.add_subcommand("compatible",
                                        "Is a relation compatible with an algebra");
  common(compatible);
  algebra(compatible);
  compatible->add_option("--rel", o.rel)->required();

  auto* cgen = app.add_subcommand("congruence-gen",
                                  "Congruence generated by a relation");
  common(cgen);
  algebra(cgen);
  cgen->add_option("--rel", o.rel)->required();

  auto* permutes = app.add_subcommand("permutes",
                                      "Do two relations n-permute");
  common(permutes);
  permutes->add_option("--rel", o.rel)->required();
  permutes->add_option("--rel2", o.rel2)->required();
  n_opt(permutes);

  auto* hagemann = app.add_subcommand("hagemann",
                                      "Relational n-permutability conditions");
  common(hagemann);
  algebra(hagemann);
  n_opt(hagemann);

  auto* clone = app.add_subcommand("clone", "Ternary clone");
  common(clone);
  with_cap(clone);
  algebra(clone);
  clone->add_flag("--terms", o.terms, "List every operation with its term");

  auto* hm = app.add_subcommand("hm-terms", "Search the clone for a term chain");
  common(hm);
  with_cap(hm);
  algebra(hm);
  n_opt(hm);

  auto* degree = app.add_subcommand("degree", "Least n with a term chain");
  common(degree);
  with_cap(degree);
  algebra(degree);
  max_n(degree);

  auto* cross = app.add_subcommand("cross-validate",
                                   "Check term, relational and congruence conditions agree");
  common(cross);
  with_cap(cross);
  algebra(cross);
  max_n(cross);

  auto* category = app.add_subcommand("category", "Finite categories");
  category->require_subcommand(1);
  std::string category_op;
  for (const char* op : {"validate", "thin", "from-preorder", "to-preorder",
                         "s-relation", "cancel", "groupoidify"}) {
    auto* sub = category->add_subcommand(op);
    common(sub);
    if (std::string(op) == "from-preorder")
      sub->add_option("--rel", o.rel, "Preorder file or fixture:NAME")->required();
    else
      sub->add_option("--category", o.category,
                      "Category file, fixture:NAME or from-preorder(RELATION)")
          ->required();
    sub->callback([&category_op, op] { category_op = op; });
  }

  auto* verify = app.add_subcommand("verify-paper",
                                    "Re-verify the fixture claims");
  common(verify);
  std::string verify_op;
  auto* v_span = verify->add_subcommand("span", "Punctual span of implication algebras");
  auto* v_sub = verify->add_subcommand("subtraction", "Subtraction algebra A and relation R");
  auto* v_mon = verify->add_subcommand("monoid", "Internal monoids of subtraction algebras");
  auto* v_perm = verify->add_subcommand("perm", "Term chain identities and their consequences");
  for (auto* sub : {v_span, v_sub, v_mon, v_perm}) {
    common(sub);
    sub->callback([&verify_op, sub] { verify_op = sub->get_name(); });
  }
  v_mon->add_option("--max-size", o.max_size, "Largest carrier")
      ->check(CLI::Range(std::size_t{1}, std::size_t{4}));
  v_perm->add_option("--algebra", o.algebra,
                     "Algebra with theta1.. (default fixture:perm-Z2)");
  v_perm->add_option("--n", o.n)->check(CLI::Range(2u, 64u));

  auto* search = app.add_subcommand("search", "Bounded model search");
  common(search);
  with_cap(search);
  search->add_option("--spec", o.spec, "Search spec file")->required();
  search->add_option("--sizes", o.sizes, "Carrier sizes a..b");
  search->add_option("--time-ms", o.time_ms, "Time budget in milliseconds");
  search->add_flag("--dedup", o.dedup, "Drop relabelled copies");
  search->add_flag("--enumerate", o.enumerate, "List every model");

  auto* fixtures = app.add_subcommand("fixtures", "Built-in fixtures");
  fixtures->require_subcommand(1);
  std::string fixtures_op;
  auto* f_list = fixtures->add_subcommand("list");
  auto* f_export = fixtures->add_subcommand("export");
  common(f_list);
  common(f_export);
  f_export->add_option("name", o.name, "Fixture name")->required();
  f_list->callback([&] { fixtures_op = "list"; });
  f_export->callback([&] { fixtures_op = "export"; });

  std::vector<std::string> argv_storage{"permutab"};
  argv_storage.insert(argv_storage.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& a : argv_storage) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kHolds;
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return kHolds;
    }
    err << "error: " << e.what() << "\n";
    return kUsage;
  }

  try {
    Outcome outcome;
    if (check_ids->parsed())
      outcome = cmd_check_identities(o);
    else if (relcalc->parsed())
      outcome = cmd_relcalc(relcalc_op, o);
    else if (compatible->parsed())
      outcome = cmd_compatible(o);
    else if (cgen->parsed())
      outcome = cmd_congruence_gen(o);
    else if (permutes->parsed())
      outcome = cmd_permutes(o);
    else if (hagemann->parsed())
      outcome = cmd_hagemann(o);
    else if (clone->parsed())
      outcome = cmd_clone(o);
    else if (hm->parsed())
      outcome = cmd_hm_terms(o);
    else if (degree->parsed())
      outcome = cmd_degree(o);
    else if (cross->parsed())
      outcome = cmd_cross_validate(o);
    else if (category->parsed())
      outcome = cmd_category(category_op, o);
    else if (verify->parsed())
      outcome = cmd_verify_paper(verify_op, o);
    else if (search->parsed())
      outcome = cmd_search(o);
    else
      outcome = cmd_fixtures(fixtures_op, o);
    return emit(outcome, o, out);
  } catch (const CapExceeded& e) {
    Report rep = make_report(app.get_subcommands().front()->get_name(),
                             Status::inconclusive, e.what());
    rep.data["partial"] = e.partial();
    return emit({rep, {}, {}}, o, out);
  } catch (const InternalInconsistency& e) {
    err << "internal inconsistency: " << e.what() << "\n";
    return kFails;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }
}

}  // namespace permutab::cli
