#include "permutab/paperlab.hpp"

#include <algorithm>
#include <map>

#include "permutab/error.hpp"
#include "permutab/search.hpp"

namespace permutab {

const NamedMap& MapBundle::at(std::string_view name) const {
  for (const auto& m : maps)
    if (m.name == name) return m;
  throw Error("map bundle has no map '" + std::string(name) + "'");
}

namespace {

const Signature& implication_signature() {
  static const Signature sig({{"*", 2}});
  return sig;
}

const Signature& subtraction_signature() {
  static const Signature sig({{"s", 2}, {"0", 0}});
  return sig;
}

const Signature& group_signature() {
  static const Signature sig({{"+", 2}, {"-", 1}, {"0", 0}});
  return sig;
}

// Implication tables in the order of the printed multiplication tables;
// element i carries the i-th printed label.
const std::vector<Element> kTwoElementImplication{0, 1, 0, 0};
const std::vector<Element> kZImplication{0, 1, 2, 0, 0, 2, 0, 1, 0};
const std::vector<Element> kASubtraction{0, 0, 0, 1, 0, 0, 2, 0, 0};

IdentitySet implication_identities() {
  const std::vector<std::string> vars{"x", "y", "z"};
  const auto& sig = implication_signature();
  return {sig,
          {parse_identity("(x*y)*x = x", sig, vars),
           parse_identity("(x*y)*y = (y*x)*x", sig, vars),
           parse_identity("x*(y*z) = y*(x*z)", sig, vars)}};
}

IdentitySet subtraction_identities() {
  const auto& sig = subtraction_signature();
  return {sig,
          {parse_identity("s(x,x) = 0", sig, {"x"}),
           parse_identity("s(x,0) = x", sig, {"x"})}};
}

std::vector<Element> xor_table(std::size_t n, unsigned arity) {
  const std::size_t len = table_length(n, arity);
  std::vector<Element> t(len);
  for (std::size_t i = 0; i < len; ++i) {
    Element v = 0;
    for (Element a : table_args(n, arity, i)) v ^= a;
    t[i] = v;
  }
  return t;
}

Algebra group_xor(std::size_t n) {
  std::vector<Element> neg(n);
  for (std::size_t i = 0; i < n; ++i) neg[i] = static_cast<Element>(i);
  return Algebra(n, group_signature(), {xor_table(n, 2), neg, {0}});
}

void expect_identities(const Algebra& alg, const IdentitySet& ids,
                       std::string_view name) {
  for (const auto& id : ids.identities)
    if (!check_identity(alg, id).holds())
      throw InternalInconsistency("fixture " + std::string(name) +
                                  " violates " +
                                  format_identity(id, ids.signature));
}

std::optional<unsigned> perm_parameter(std::string_view name) {
  constexpr std::string_view prefix = "identities-perm(";
  if (name.substr(0, prefix.size()) != prefix || name.back() != ')')
    return std::nullopt;
  const std::string digits(
      name.substr(prefix.size(), name.size() - prefix.size() - 1));
  if (digits.empty() ||
      !std::all_of(digits.begin(), digits.end(),
                   [](char c) { return c >= '0' && c <= '9'; }) ||
      digits.size() > 3)
    return std::nullopt;
  return static_cast<unsigned>(std::stoul(digits));
}

Fixture make_fixture(std::string_view name) {
  const std::string n(name);
  if (n == "impl-X")
    return {n, "two-element implication algebra X = {1,2}",
            Algebra(2, implication_signature(), {kTwoElementImplication},
                    {"1", "2"}),
            {}};
  if (n == "impl-Y")
    return {n, "two-element implication algebra Y = {1,3}",
            Algebra(2, implication_signature(), {kTwoElementImplication},
                    {"1", "3"}),
            {}};
  if (n == "impl-Z")
    return {n, "three-element implication algebra Z = {1,2,3}",
            Algebra(3, implication_signature(), {kZImplication},
                    {"1", "2", "3"}),
            {}};
  if (n == "span-fgst")
    return {n, "span maps f: Z->X, g: Z->Y and inclusions s: X->Z, t: Y->Z",
            MapBundle{{{"f", "impl-Z", "impl-X", FiniteMap(3, 2, {0, 1, 0})},
                       {"g", "impl-Z", "impl-Y", FiniteMap(3, 2, {0, 0, 1})},
                       {"s", "impl-X", "impl-Z", FiniteMap(2, 3, {0, 1})},
                       {"t", "impl-Y", "impl-Z", FiniteMap(2, 3, {0, 2})}}},
            {}};
  if (n == "subtr-A")
    return {n, "three-element subtraction algebra A = {0,a,b}",
            Algebra(3, subtraction_signature(), {kASubtraction, {0}},
                    {"0", "a", "b"}),
            {}};
  if (n == "rel-R")
    return {n, "relation R = {(0,0),(a,a),(b,b),(a,b)} on A",
            BinRelation(3, {{0, 0}, {1, 1}, {2, 2}, {1, 2}}),
            {"0", "a", "b"}};
  if (n == "identities-implication")
    return {n, "implication algebra axioms", implication_identities(), {}};
  if (n == "identities-subtraction")
    return {n, "subtraction algebra axioms", subtraction_identities(), {}};
  if (auto p = perm_parameter(name)) {
    if (*p < 2) throw Error("identities-perm(n) needs n >= 2");
    return {n, "Hagemann-Mitschke chain identities", hm_identities(*p), {}};
  }
  if (n == "trivial")
    return {n, "one-element algebra with one binary operation",
            trivial_algebra(implication_signature()), {}};
  if (n == "group-Z2")
    return {n, "cyclic group of order 2 in the signature (+, -, 0)",
            group_xor(2), {}};
  if (n == "group-V4")
    return {n, "Klein four-group in the signature (+, -, 0)", group_xor(4), {}};
  if (n == "subtr-Z2")
    return {n, "cyclic group of order 2 as subtraction algebra s(x,y) = x-y",
            Algebra(2, subtraction_signature(), {xor_table(2, 2), {0}}), {}};
  if (n == "perm-Z2")
    return {n, "cyclic group of order 2 with theta1(x,y,z) = x-y+z",
            Algebra(2, Signature({{"theta1", 3}}), {xor_table(2, 3)}), {}};
  if (n == "semilattice-2")
    return {n, "two-element meet semilattice",
            Algebra(2, implication_signature(), {{0, 0, 0, 1}}), {}};
  if (n == "cat-group-Z2")
    return {n, "cyclic group of order 2 as a one-object category",
            monoid_category(2, {0, 1, 1, 0}, 0), {"1", "g"}};
  if (n == "cat-idempotent-monoid")
    return {n, "monoid {1, a} with a*a = a as a one-object category",
            monoid_category(2, {0, 1, 1, 1}, 0), {"1", "a"}};
  throw Error("unknown fixture '" + n + "'");
}

}  // namespace

std::vector<std::string> fixture_names() {
  return {"impl-X",           "impl-Y",
          "impl-Z",           "span-fgst",
          "subtr-A",          "rel-R",
          "identities-implication",
          "identities-subtraction",
          "identities-perm(2)", "identities-perm(3)",
          "identities-perm(4)", "identities-perm(5)",
          "identities-perm(6)", "trivial",
          "group-Z2",         "group-V4",
          "subtr-Z2",         "perm-Z2",
          "semilattice-2",    "cat-group-Z2",
          "cat-idempotent-monoid"};
}

Fixture load_fixture(std::string_view name) {
  Fixture f = make_fixture(name);
  if (name.substr(0, 5) == "impl-")
    expect_identities(std::get<Algebra>(f.payload), implication_identities(),
                      name);
  if (name == "subtr-A" || name == "subtr-Z2")
    expect_identities(std::get<Algebra>(f.payload), subtraction_identities(),
                      name);
  if (const auto* c = std::get_if<FinCategory>(&f.payload))
    if (!is_valid_category(*c))
      throw InternalInconsistency("fixture " + f.name + " is not a category");
  if (name == "rel-R") {
    const auto& r = std::get<BinRelation>(f.payload);
    if (!is_compatible(r, fixture_algebra("subtr-A")).holds())
      throw InternalInconsistency("fixture rel-R is not compatible with A");
  }
  return f;
}

Algebra fixture_algebra(std::string_view name) {
  auto f = load_fixture(name);
  if (auto* a = std::get_if<Algebra>(&f.payload)) return std::move(*a);
  throw Error("fixture '" + std::string(name) + "' is not an algebra");
}

IdentitySet fixture_identities(std::string_view name) {
  auto f = load_fixture(name);
  if (auto* s = std::get_if<IdentitySet>(&f.payload)) return std::move(*s);
  throw Error("fixture '" + std::string(name) + "' is not an identity set");
}

std::vector<std::string> fixture_algebra_names(std::size_t max_size) {
  std::vector<std::string> out;
  for (const auto& name : fixture_names()) {
    auto f = make_fixture(name);
    if (const auto* a = std::get_if<Algebra>(&f.payload))
      if (a->size() <= max_size) out.push_back(name);
  }
  return out;
}

namespace {

/// The constant value of x*x, if x*x does not depend on x.
std::optional<Element> pointed_element(const Algebra& alg) {
  const Element p = alg.table(0)[0];
  for (Element x = 0; x < alg.size(); ++x)
    if (alg.table(0)[x * alg.size() + x] != p) return std::nullopt;
  return p;
}

std::string map_text(const FiniteMap& m, const Algebra& dom, const Algebra& cod) {
  std::string out;
  for (Element x = 0; x < m.domain(); ++x) {
    if (x) out += ", ";
    out += dom.label(x) + "->" + cod.label(m(x));
  }
  return out;
}

}  // namespace

Report check_identities(const Algebra& alg, const IdentitySet& ids,
                        std::string check) {
  Report r = make_report(std::move(check), Status::holds);
  for (const auto& id : ids.identities) {
    const auto v = check_identity(alg, id);
    Report part = make_report(format_identity(id, ids.signature), v.holds());
    if (!v.holds()) {
      std::string env;
      for (std::size_t i = 0; i < v.counterexample->size(); ++i) {
        if (i) env += ", ";
        env += i < id.var_names.size() ? id.var_names[i]
                                       : "x" + std::to_string(i);
        env += "=" + alg.label((*v.counterexample)[i]);
      }
      part.summary = "counterexample " + env;
      part.data["counterexample"] = *v.counterexample;
    }
    r.add(std::move(part));
  }
  return r;
}

Report verify_punctual_span() {
  return verify_punctual_span(
      fixture_algebra("impl-X"), fixture_algebra("impl-Y"),
      fixture_algebra("impl-Z"),
      std::get<MapBundle>(load_fixture("span-fgst").payload));
}

Report verify_punctual_span(const Algebra& x, const Algebra& y,
                            const Algebra& z, const MapBundle& bundle) {
  const auto ids = implication_identities();
  std::map<std::string, const Algebra*> by_name{
      {"impl-X", &x}, {"impl-Y", &y}, {"impl-Z", &z}};

  Report report = make_report("punctual-span", Status::holds);
  report.add(check_identities(x, ids, "X is an implication algebra"));
  report.add(check_identities(y, ids, "Y is an implication algebra"));
  report.add(check_identities(z, ids, "Z is an implication algebra"));

  for (const auto& m : bundle.maps) {
    const Algebra& dom = *by_name.at(m.from);
    const Algebra& cod = *by_name.at(m.to);
    const auto h = is_homomorphism(m.map, dom, cod);
    Report part = make_report(m.name + " is a homomorphism", h.holds(),
                              map_text(m.map, dom, cod));
    if (!h.holds()) part.data["violation_args"] = h.violation->args;
    report.add(std::move(part));
  }

  const auto& f = bundle.at("f").map;
  const auto& g = bundle.at("g").map;
  const auto& s = bundle.at("s").map;
  const auto& t = bundle.at("t").map;
  report.add(make_report("f after s is the identity of X",
                         compose_maps(s, f) == FiniteMap::identity(x.size())));
  report.add(make_report("g after t is the identity of Y",
                         compose_maps(t, g) == FiniteMap::identity(y.size())));

  const auto px = pointed_element(x);
  const auto py = pointed_element(y);
  const auto pz = pointed_element(z);
  report.add(make_report("x*x is constant in X, Y and Z", px && py && pz,
                         px && py && pz ? "pointed elements " + x.label(*px) +
                                              ", " + y.label(*py) + ", " +
                                              z.label(*pz)
                                        : "x*x depends on x"));
  if (px && py) {
    report.add(make_report(
        "g after s is constant at the point of Y",
        compose_maps(s, g) == FiniteMap::constant(x.size(), y.size(), *py)));
    report.add(make_report(
        "f after t is constant at the point of X",
        compose_maps(t, f) == FiniteMap::constant(y.size(), x.size(), *px)));
  }

  // Image of <f, g>: Z -> X x Y.
  const Algebra xy = product_algebra(x, y);
  std::vector<Element> pairing(z.size());
  for (Element e = 0; e < z.size(); ++e)
    pairing[e] = static_cast<Element>(f(e) * y.size() + g(e));
  const FiniteMap fg(z.size(), xy.size(), pairing);
  report.add(make_report("<f,g> is a homomorphism into X x Y",
                         is_homomorphism(fg, z, xy).holds()));
  std::vector<Element> image(pairing);
  std::sort(image.begin(), image.end());
  image.erase(std::unique(image.begin(), image.end()), image.end());
  std::string listed;
  for (Element e : pairing) {
    if (!listed.empty()) listed += ", ";
    listed += xy.label(e);
  }
  Report surj = make_report(
      "<f,g> is not surjective", image.size() == 3 && xy.size() == 4,
      "image {" + listed + "} has " + std::to_string(image.size()) +
          " of " + std::to_string(xy.size()) + " elements");
  surj.data["image"] = image;
  surj.data["product_size"] = xy.size();
  report.add(std::move(surj));
  return report;
}

Report verify_subtraction_example() {
  return verify_subtraction_example(
      fixture_algebra("subtr-A"),
      std::get<BinRelation>(load_fixture("rel-R").payload));
}

Report verify_subtraction_example(const Algebra& a, const BinRelation& r) {
  Report report = make_report("subtraction-example", Status::holds);
  report.add(check_identities(a, subtraction_identities(),
                              "A is a subtraction algebra"));
  const auto compat = is_compatible(r, a);
  report.add(make_report("R is compatible with A", compat.holds(),
                         format_relation(r, a.labels())));
  const auto p = properties(r);
  report.add(make_report("R is reflexive", p.reflexive));
  report.add(make_report("R is transitive", p.transitive));
  report.add(make_report("R is not symmetric", !p.symmetric));
  const auto theta = congruence_generated(a, r);
  Report gen = make_report(
      "the congruence generated by R strictly contains R",
      is_subrelation(r, theta) && theta != r,
      format_relation(theta, a.labels()) + " (" +
          std::to_string(theta.count()) + " pairs)");
  gen.data["congruence"] = Json::array();
  for (auto [u, v] : theta.pairs()) gen.data["congruence"].push_back({u, v});
  report.add(std::move(gen));
  return report;
}

Report verify_subtractive_monoid(const Algebra& alg, const MonoidStructure& m) {
  Report report = make_report("subtractive-monoid", Status::holds);
  report.data["plus"] = m.plus;
  report.data["unit"] = m.unit;

  const auto s_sym = alg.signature().find("s");
  const auto zero_sym = alg.signature().find("0");
  Report pre = make_report("preconditions", Status::holds);
  pre.data["stage"] = "precondition";
  if (!s_sym || alg.signature()[*s_sym].arity != 2 || !zero_sym ||
      alg.signature()[*zero_sym].arity != 0) {
    pre.add(make_report("signature has binary s and constant 0", false));
    report.add(std::move(pre));
    return report;
  }
  pre.add(check_identities(alg, subtraction_identities(),
                           "subtraction identities"));
  if (m.size != alg.size()) {
    pre.add(make_report("monoid carrier matches algebra", false));
    report.add(std::move(pre));
    return report;
  }
  pre.add(make_report("monoid laws", monoid_laws_hold(m)));
  pre.add(make_report("unit is a homomorphism", unit_is_homomorphism(alg, m)));
  pre.add(make_report("addition is a homomorphism",
                      addition_is_homomorphism(alg, m)));
  const bool pre_ok = pre.holds();
  report.add(std::move(pre));
  if (!pre_ok) return report;

  const auto n = static_cast<Element>(alg.size());
  const Element zero = alg.table(*zero_sym)[0];
  auto s = [&](Element x, Element y) {
    const Element args[2] = {x, y};
    return alg.apply(*s_sym, args);
  };
  auto show = [&](Element e) { return alg.label(e); };

  Report post = make_report("conclusions", Status::holds);
  post.data["stage"] = "conclusion";
  Report inv = make_report("s(0,x) is a two-sided inverse of x", Status::holds);
  Report comm = make_report("addition is commutative", Status::holds);
  Report uniq = make_report("x+y = s(x,s(0,y))", Status::holds);
  for (Element x = 0; x < n && inv.holds(); ++x) {
    const Element bar = s(zero, x);
    if (m.add(x, bar) != zero || m.add(bar, x) != zero) {
      inv.status = Status::fails;
      inv.summary = "fails at x=" + show(x);
    }
  }
  for (Element x = 0; x < n; ++x)
    for (Element y = 0; y < n; ++y) {
      if (comm.holds() && m.add(x, y) != m.add(y, x)) {
        comm.status = Status::fails;
        comm.summary = "fails at x=" + show(x) + ", y=" + show(y);
      }
      if (uniq.holds() && m.add(x, y) != s(x, s(zero, y))) {
        uniq.status = Status::fails;
        uniq.summary = "fails at x=" + show(x) + ", y=" + show(y);
      }
    }
  for (Report* r : {&inv, &comm, &uniq}) r->critical = !r->holds();
  post.add(std::move(inv));
  post.add(std::move(comm));
  post.add(std::move(uniq));
  if (post.holds()) report.summary = "abelian group";
  report.add(std::move(post));
  return report;
}

Report verify_subtractive_monoids(std::size_t max_size, unsigned workers) {
  SearchSpec spec;
  spec.theory = subtraction_identities();
  spec.min_size = 1;
  spec.max_size = max_size;
  const auto models = enumerate_models(spec, workers);
  Report report = make_report("subtractive-monoids", Status::holds);
  if (!models.complete) {
    report.add(make_report("model enumeration", Status::inconclusive,
                           "enumeration hit its cap"));
    return report;
  }
  std::size_t monoids = 0;
  for (const auto& alg : models.models) {
    for (const auto& m : enumerate_internal_monoids(alg)) {
      ++monoids;
      auto r = verify_subtractive_monoid(alg, m);
      if (!r.holds()) {
        r.data["algebra_tables"] = alg.tables();
        report.add(std::move(r));
      }
    }
  }
  report.summary = std::to_string(models.models.size()) +
                   " subtraction algebras of size <= " +
                   std::to_string(max_size) + ", " + std::to_string(monoids) +
                   " internal monoids, all abelian groups with x+y = s(x,s(0,y))";
  if (!report.holds())
    report.summary = std::to_string(report.parts.size()) + " of " +
                     std::to_string(monoids) + " internal monoids fail";
  report.data["algebras"] = models.models.size();
  report.data["monoids"] = monoids;
  if (monoids == 0)
    report.add(make_report("some internal monoid exists", false));
  return report;
}

Report verify_perm_algebra(const Algebra& alg, unsigned n,
                           const EnumerationOptions& options) {
  Report report = make_report("perm-algebra n=" + std::to_string(n),
                              Status::holds);
  const auto ids = hm_identities(n);
  for (const auto& sym : ids.signature) {
    const auto found = alg.signature().find(sym.name);
    if (!found || alg.signature()[*found].arity != 3) {
      report.add(make_report("signature has " + sym.name, false,
                             "missing ternary symbol"));
      return report;
    }
  }
  Report identities = check_identities(alg, ids, "chain identities");
  identities.data["stage"] = "identities";
  const bool ok = identities.holds();
  report.add(std::move(identities));
  if (!ok) return report;

  const auto cv = congruence_permutability_check(alg, n, options);
  Report c = make_report("congruences are " + std::to_string(n) + "-permutable",
                         cv.holds);
  c.critical = !cv.holds;
  report.add(std::move(c));
  const auto hv = hagemann_check(alg, n, options);
  Report h = make_report("relational conditions at n=" + std::to_string(n),
                         hv.holds);
  h.critical = !hv.holds;
  if (!hv.holds)
    h.summary = format_relation(hv.witness->relations.front(), alg.labels());
  report.add(std::move(h));
  return report;
}

Report verify_paper(unsigned workers) {
  Report report = make_report("paper-regression", Status::holds);
  Report fixtures = make_report("fixtures load and validate", Status::holds);
  for (const auto& name : fixture_names()) {
    try {
      load_fixture(name);
      fixtures.add(make_report(name, Status::holds));
    } catch (const std::exception& e) {
      fixtures.add(make_report(name, Status::fails, e.what()));
    }
  }
  report.add(std::move(fixtures));
  report.add(verify_punctual_span());
  report.add(verify_subtraction_example());

  const Algebra a = fixture_algebra("subtr-A");
  const auto r = std::get<BinRelation>(load_fixture("rel-R").payload);
  Report hag = make_report("A fails the relational conditions with witness R",
                           Status::holds);
  for (unsigned n = 2; n <= 6; ++n) {
    const auto v = hagemann_check(a, n);
    hag.add(make_report("n=" + std::to_string(n),
                        !v.holds && v.witness->relations.front() == r &&
                            v.witness->condition ==
                                PermCondition::converse_in_power));
  }
  report.add(std::move(hag));

  report.add(verify_subtractive_monoids(3, workers));
  report.add(verify_perm_algebra(fixture_algebra("perm-Z2"), 2));

  const Algebra x = fixture_algebra("impl-X");
  const CloneOptions clone_options{100000, workers};
  const auto two = find_hm_terms(x, 2, clone_options);
  report.add(make_report("implication algebras are not 2-permutable",
                         two.outcome == SearchOutcome::none,
                         std::string("chain search at n=2: ") +
                             to_string(two.outcome)));
  const auto three = find_hm_terms(x, 3, clone_options);
  Report chain = make_report("implication algebras are 3-permutable",
                             three.outcome == SearchOutcome::found);
  if (three.outcome == SearchOutcome::found) {
    std::string terms;
    for (std::size_t i = 0; i < three.chain.size(); ++i) {
      if (i) terms += "; ";
      terms += "theta" + std::to_string(i + 1) + " = " +
               format_term(*three.chain[i].provenance, x.signature(),
                           {"x", "y", "z"});
    }
    chain.summary = terms;
    chain.add(verify_perm_algebra(chain_algebra(x.size(), three.chain, x.labels()),
                                  3));
  }
  report.add(std::move(chain));
  return report;
}

}  // namespace permutab
