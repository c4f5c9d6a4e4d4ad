// Acceptance suite: one PASS/FAIL line per criterion.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <numeric>
#include <random>
#include <string>
#include <thread>

#include "oracles.hpp"
#include "permutab/category.hpp"
#include "permutab/maltsev.hpp"
#include "permutab/monoid.hpp"
#include "permutab/paperlab.hpp"
#include "permutab/search.hpp"
#include "permutab/serialize.hpp"

using namespace permutab;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (ok) return;
    if (pass) detail.clear();
    if (!detail.empty()) detail += "; ";
    detail += what;
    pass = false;
  }
};

unsigned many_workers() {
  return std::max(4u, std::thread::hardware_concurrency());
}

BinRelation rel_r() {
  return std::get<BinRelation>(load_fixture("rel-R").payload);
}

Outcome fixture_regression() {
  Outcome o;
  const auto impl = fixture_identities("identities-implication");
  for (const char* name : {"impl-X", "impl-Y", "impl-Z"}) {
    const Algebra a = fixture_algebra(name);
    o.require(check_identities(a, impl).holds() && oracle::all_hold(a, impl),
              std::string(name) + " is not an implication algebra");
  }
  const auto sub = fixture_identities("identities-subtraction");
  const Algebra a = fixture_algebra("subtr-A");
  o.require(check_identities(a, sub).holds() && oracle::all_hold(a, sub),
            "A is not a subtraction algebra");
  const Algebra z2 = fixture_algebra("perm-Z2");
  o.require(check_identities(z2, hm_identities(2)).holds() &&
                oracle::all_hold(z2, hm_identities(2)),
            "x-y+z fails the chain identities at n=2");
  if (o.pass) o.detail = "X, Y, Z implication; A subtraction; Z2 at n=2";
  return o;
}

Outcome punctual_span() {
  Outcome o;
  const Report r = verify_punctual_span();
  o.require(r.holds(), render_text(r));
  const Report& image = r.parts.back();
  o.require(image.data["image"].size() == 3, "image does not have 3 elements");
  o.require(image.data["product_size"] == 4, "X x Y does not have 4 elements");
  if (o.pass) o.detail = image.summary;
  return o;
}

Outcome final_preorder() {
  Outcome o;
  const Algebra a = fixture_algebra("subtr-A");
  const BinRelation r = rel_r();
  const auto p = properties(r);
  o.require(is_compatible(r, a).holds() && oracle::compatible(r, a),
            "R is not compatible");
  o.require(p.reflexive && p.transitive && !p.symmetric,
            "R is not a nonsymmetric preorder");
  BinRelation expected = r;
  expected.insert(2, 1);
  const BinRelation theta = congruence_generated(a, r);
  o.require(theta == expected && theta.count() == 5,
            "generated congruence is " + format_relation(theta, a.labels()));
  o.require(oracle::congruence_by_intersection(a, r) == expected,
            "oracle disagrees on the generated congruence");
  for (unsigned n = 2; n <= 6; ++n) {
    const auto v = hagemann_check(a, n);
    o.require(!v.holds && v.witness && v.witness->relations.front() == r,
              "hagemann_check at n=" + std::to_string(n) +
                  " does not fail with witness R");
  }
  if (o.pass)
    o.detail = "congruence " + format_relation(theta, a.labels()) +
               "; witness R for n=2..6";
  return o;
}

Outcome instance_equivalence() {
  Outcome o;
  std::size_t checked = 0;
  for (const auto& name : fixture_algebra_names(3)) {
    const Algebra a = fixture_algebra(name);
    const auto preorders = enumerate_compatible(a, RelConstraint::preorder);
    const bool all_symmetric =
        std::all_of(preorders.begin(), preorders.end(),
                    [](const BinRelation& r) { return properties(r).symmetric; });
    for (unsigned n = 2; n <= 4; ++n) {
      const std::string at = name + " n=" + std::to_string(n);
      const auto hm = find_hm_terms(a, n);
      o.require(hm.outcome != SearchOutcome::inconclusive, at + " capped");
      const bool terms = hm.outcome == SearchOutcome::found;
      o.require(terms == oracle::hm_chain_exists(a, n),
                at + ": chain search disagrees with the oracle");
      const bool hag = hagemann_check(a, n).holds;
      const bool perm = congruence_permutability_check(a, n).holds;
      o.require(!terms || hag, at + ": terms without the relational condition");
      o.require(!hag || perm, at + ": relational condition without permutability");
      o.require(!hag || all_symmetric, at + ": nonsymmetric compatible preorder");
      ++checked;
    }
  }
  if (o.pass) o.detail = std::to_string(checked) + " algebra/n instances, 0 violations";
  return o;
}

Outcome degrees() {
  Outcome o;
  const auto z2 = permutability_degree(fixture_algebra("group-Z2"), 6);
  o.require(z2.outcome == SearchOutcome::found && z2.degree == 2,
            "group algebra degree is not 2");
  const Algebra x = fixture_algebra("impl-X");
  const auto two = find_hm_terms(x, 2);
  o.require(two.outcome == SearchOutcome::none,
            std::string("X at n=2: ") + to_string(two.outcome));
  const auto three = find_hm_terms(x, 3);
  o.require(three.outcome == SearchOutcome::found, "X at n=3: no chain");
  if (three.outcome == SearchOutcome::found)
    o.require(oracle::all_hold(chain_algebra(x.size(), three.chain),
                               hm_identities(3)),
              "X chain fails its identities");
  const auto a = permutability_degree(fixture_algebra("subtr-A"), 6);
  o.require(a.outcome == SearchOutcome::none, "A has a chain up to 6");
  if (o.pass)
    o.detail = "Z2 degree 2; X none at 2 (clone " +
               std::to_string(two.clone_size) + "), chain at 3; A none up to 6";
  return o;
}

Outcome categories() {
  Outcome o;
  const auto cats = enumerate_categories(4);
  std::vector<std::size_t> per_count(5, 0);
  std::size_t groupoids = 0;
  for (const auto& c : cats) {
    ++per_count[c.morphisms()];
    const BinRelation s = composability_relation(c);
    const auto p = properties(s);
    o.require(p.reflexive && p.transitive, "S not a preorder");
    const auto g = groupoidify(c);
    const bool ok = std::holds_alternative<InversionMap>(g);
    o.require(ok == p.symmetric, "groupoidify disagrees with S symmetry");
    o.require(ok == is_groupoid(c), "groupoidify disagrees with is_groupoid");
    if (ok) {
      ++groupoids;
      o.require(inversion_map_valid(c, std::get<InversionMap>(g)),
                "inversion map invalid");
      o.require(!left_cancellation_witness(c), "groupoid without cancellation");
    }
    if (is_thin(c))
      o.require(is_groupoid(c) == properties(category_to_relation(c)).symmetric,
                "thin category: groupoid vs symmetric relation");
  }
  for (std::size_t m = 1; m <= 4; ++m)
    o.require(per_count[m] == oracle::category_count(m),
              "category count at " + std::to_string(m) + " morphisms");
  if (o.pass)
    o.detail = std::to_string(cats.size()) + " categories (" +
               std::to_string(groupoids) + " groupoids), 0 violations";
  return o;
}

Outcome subtractive_monoids() {
  Outcome o;
  const Report r = verify_subtractive_monoids(3, many_workers());
  o.require(r.holds(), r.summary);
  o.require(r.data["monoids"].get<std::size_t>() > 0, "no monoids found");
  o.require(r.data["algebras"] == 248, "subtraction algebra count is not 248");
  if (o.pass) o.detail = r.summary;
  return o;
}

std::vector<std::vector<Element>> relabel(const Algebra& a,
                                          const std::vector<Element>& p) {
  std::vector<std::vector<Element>> out;
  for (std::size_t s = 0; s < a.signature().size(); ++s) {
    const unsigned k = a.signature()[s].arity;
    std::vector<Element> t(a.table(s).size());
    oracle::each_tuple(a.size(), k, [&](const std::vector<Element>& args) {
      std::vector<Element> image(k);
      for (unsigned i = 0; i < k; ++i) image[i] = p[args[i]];
      t[table_index(a.size(), image)] = p[a.apply(s, args)];
    });
    out.push_back(t);
  }
  return out;
}

Outcome rediscovery() {
  Outcome o;
  SearchSpec spec;
  spec.theory = fixture_identities("identities-subtraction");
  spec.min_size = 2;
  spec.max_size = 3;
  spec.predicate = parse_predicate("has-noncongruence-preorder");
  const auto r = find_model(spec);
  o.require(r.outcome == SearchOutcome::found, "nothing found");
  o.require(r.sizes.size() == 2 && !r.sizes[0].found && r.sizes[0].complete,
            "size 2 not exhausted without a find");
  if (!o.pass || !r.model) return o;
  o.require(r.model->size() == 3, "model is not of size 3");
  const auto& w = std::get<BinRelation>(r.witness);
  o.require(w.count() == 4, "witness does not have 4 pairs");
  const Algebra a = fixture_algebra("subtr-A");
  const BinRelation target = rel_r();
  const Element zero = r.model->table(1)[0];
  bool iso = false;
  std::vector<Element> p{0, 1, 2};
  do {
    if (p[zero] != 0) continue;
    if (relabel(*r.model, p) != a.tables()) continue;
    BinRelation image(3);
    for (auto [u, v] : w.pairs()) image.insert(p[u], p[v]);
    iso = iso || image == target;
  } while (std::next_permutation(p.begin(), p.end()));
  o.require(iso, "witness is not isomorphic to R");
  if (o.pass)
    o.detail = "none at size 2; size 3 witness " +
               format_relation(w, r.model->labels()) + " isomorphic to R";
  return o;
}

Algebra random_algebra(std::mt19937& rng) {
  const std::size_t n = 1 + rng() % 4;
  std::vector<Symbol> symbols;
  std::vector<std::vector<Element>> tables;
  const std::size_t count = 1 + rng() % 3;
  for (std::size_t i = 0; i < count; ++i) {
    const unsigned k = rng() % 4;
    symbols.push_back({"f" + std::to_string(i), k});
    std::vector<Element> t(table_length(n, k));
    for (auto& e : t) e = static_cast<Element>(rng() % n);
    tables.push_back(std::move(t));
  }
  return Algebra(n, Signature(symbols), tables);
}

Outcome round_trip_and_determinism() {
  Outcome o;
  std::size_t docs = 0;
  auto trip = [&](const Document& d) {
    ++docs;
    const std::string text = serialize(d);
    o.require(parse_document(text) == d, std::string("round-trip of ") +
                                             kind_name(d.payload));
  };
  std::mt19937 rng(7);
  for (int i = 0; i < 300; ++i) trip({random_algebra(rng), {}});
  for (int i = 0; i < 300; ++i) {
    const std::size_t n = 1 + rng() % 8;
    std::uint64_t mask = rng();
    mask = (mask << 32) | rng();
    BinRelation r(n);
    for (std::size_t b = 0; b < n * n; ++b)
      if ((mask >> (b % 64)) & 1) r.insert(b / n, b % n);
    trip({r, {}});
  }
  for (const auto& c : enumerate_categories(4)) trip({c, {}});
  for (const auto& name : fixture_names()) trip(fixture_document(load_fixture(name)));
  for (unsigned n = 2; n <= 6; ++n) trip({hm_identities(n), {}});
  trip({verify_paper(), {}});

  const unsigned w = many_workers();
  for (const char* name : {"impl-X", "impl-Z", "subtr-A", "group-V4"}) {
    const Algebra a = fixture_algebra(name);
    o.require(ternary_clone(a, {100000, 1}).operations() ==
                  ternary_clone(a, {100000, w}).operations(),
              std::string("clone of ") + name + " depends on workers");
    o.require(enumerate_compatible(a, RelConstraint::any, {4, 1}) ==
                  enumerate_compatible(a, RelConstraint::any, {4, w}),
              std::string("relations of ") + name + " depend on workers");
  }
  SearchSpec spec;
  spec.theory = fixture_identities("identities-implication");
  spec.max_size = 4;
  o.require(enumerate_models(spec, 1).models == enumerate_models(spec, w).models,
            "model enumeration depends on workers");
  spec.theory = fixture_identities("identities-subtraction");
  spec.max_size = 3;
  spec.predicate = parse_predicate("has-noncongruence-preorder");
  const auto one = find_model(spec, 1);
  const auto many = find_model(spec, w);
  o.require(one.outcome == many.outcome && one.model == many.model &&
                one.witness == many.witness,
            "search depends on workers");
  if (o.pass)
    o.detail = std::to_string(docs) + " documents round-trip; 1 and " +
               std::to_string(w) + " workers agree";
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"fixture regression", fixture_regression},
      {"punctual span is not jointly surjective", punctual_span},
      {"preorder R on A", final_preorder},
      {"term, relational and permutability conditions agree", instance_equivalence},
      {"permutability degrees", degrees},
      {"groupoids from the relation S", categories},
      {"subtractive monoids are abelian groups", subtractive_monoids},
      {"minimal counterexample rediscovered", rediscovery},
      {"round-trip and determinism", round_trip_and_determinism},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                        std::chrono::steady_clock::now() - start)
                        .count();
    std::printf("%s criterion %zu: %s: %s (%lld ms)\n", o.pass ? "PASS" : "FAIL",
                i + 1, criteria[i].first, o.detail.c_str(),
                static_cast<long long>(ms));
    if (!o.pass) ++failed;
  }
  return failed == 0 ? 0 : 1;
}
