#include <doctest.h>

#include <numeric>
#include <set>

#include "oracles.hpp"
#include "permutab/error.hpp"
#include "permutab/paperlab.hpp"
#include "permutab/search.hpp"

using namespace permutab;

namespace {

SearchSpec subtraction_spec(std::size_t lo, std::size_t hi) {
  SearchSpec spec;
  spec.theory = fixture_identities("identities-subtraction");
  spec.min_size = lo;
  spec.max_size = hi;
  return spec;
}

// Tables of `a` relabelled along the permutation p.
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

// Permutations of the carrier fixing every constant.
std::vector<std::vector<Element>> constant_fixing_perms(const Algebra& a) {
  std::vector<std::vector<Element>> out;
  std::vector<Element> p(a.size());
  std::iota(p.begin(), p.end(), 0);
  do {
    bool fixes = true;
    for (std::size_t s = 0; s < a.signature().size(); ++s)
      if (a.signature()[s].arity == 0 && p[a.table(s)[0]] != a.table(s)[0])
        fixes = false;
    if (fixes) out.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  return out;
}

std::vector<std::vector<Element>> canonical(const Algebra& a) {
  std::vector<std::vector<Element>> best = a.tables();
  for (const auto& p : constant_fixing_perms(a))
    best = std::min(best, relabel(a, p));
  return best;
}

}  // namespace

TEST_SUITE("search") {

TEST_CASE("predicate names round-trip") {
  for (const char* text :
       {"none", "has-noncongruence-preorder", "has-internal-monoid",
        "has-nonpermuting-congruence-pair(3)"})
    CHECK(to_string(parse_predicate(text)) == text);
  CHECK(parse_predicate("has-nonpermuting-congruence-pair").n == 2);
  CHECK_THROWS_AS(parse_predicate("has-nonpermuting-congruence-pair(1)"), Error);
  CHECK_THROWS_AS(parse_predicate("is-pretty"), Error);
}

TEST_CASE("spec validation") {
  CHECK_THROWS_AS(validate_spec(subtraction_spec(0, 2)), Error);
  CHECK_THROWS_AS(validate_spec(subtraction_spec(3, 2)), Error);
  CHECK_NOTHROW(validate_spec(subtraction_spec(2, 2)));
}

TEST_CASE("model counts agree with brute force") {
  for (std::size_t n = 1; n <= 3; ++n) {
    const auto spec = subtraction_spec(n, n);
    const auto e = enumerate_models(spec);
    CHECK(e.complete);
    CHECK(e.models.size() == oracle::model_count(spec.theory, n));
  }
  CHECK(enumerate_models(subtraction_spec(1, 1)).models.size() == 1);
  CHECK(enumerate_models(subtraction_spec(2, 2)).models.size() == 4);
  CHECK(enumerate_models(subtraction_spec(3, 3)).models.size() == 243);

  const auto impl = fixture_identities("identities-implication");
  for (std::size_t n = 1; n <= 3; ++n) {
    SearchSpec spec;
    spec.theory = impl;
    spec.min_size = spec.max_size = n;
    CHECK(enumerate_models(spec).models.size() == oracle::model_count(impl, n));
  }
}

TEST_CASE("every enumerated model satisfies the theory, in order") {
  const auto spec = subtraction_spec(1, 3);
  const auto e = enumerate_models(spec);
  REQUIRE(e.per_size.size() == 3);
  CHECK(e.per_size[2] == std::pair<std::size_t, std::size_t>{3, 243});
  for (const auto& m : e.models) CHECK(oracle::all_hold(m, spec.theory));
  for (std::size_t i = 1; i < e.models.size(); ++i)
    if (e.models[i].size() == e.models[i - 1].size())
      CHECK(e.models[i - 1].tables() < e.models[i].tables());
}

TEST_CASE("unsatisfiable and identity-free theories") {
  SearchSpec spec;
  const Signature sig({{"s", 2}});
  spec.theory = {sig, {parse_identity("x = s(x,y)", sig, {"x", "y"}),
                       parse_identity("s(x,y) = y", sig, {"x", "y"})}};
  spec.min_size = 2;
  spec.max_size = 3;
  CHECK(enumerate_models(spec).models.empty());
  CHECK(oracle::model_count(spec.theory, 2) == 0);

  SearchSpec free;
  free.theory = {Signature({{"f", 1}}), {}};
  CHECK(enumerate_models(free).models.size() == 1);
  free.max_size = 3;
  CHECK(enumerate_models(free).models.size() == 1 + 4 + 27);
}

TEST_CASE("smallest subtraction algebra with a noncongruence preorder") {
  auto spec = subtraction_spec(2, 3);
  spec.predicate = parse_predicate("has-noncongruence-preorder");
  const auto r = find_model(spec);
  REQUIRE(r.outcome == SearchOutcome::found);
  REQUIRE(r.sizes.size() == 2);
  CHECK_FALSE(r.sizes[0].found);
  CHECK(r.sizes[0].complete);
  CHECK(r.sizes[1].found);
  REQUIRE(r.model);
  CHECK(witness_reverifies(*r.model, spec.predicate, r.witness));

  // The model and its preorder are A and R up to a relabelling fixing 0.
  const Algebra a = fixture_algebra("subtr-A");
  const auto rel = std::get<BinRelation>(load_fixture("rel-R").payload);
  const auto& w = std::get<BinRelation>(r.witness);
  bool iso = false;
  for (const auto& p : constant_fixing_perms(*r.model)) {
    if (relabel(*r.model, p) != a.tables()) continue;
    BinRelation image(3);
    for (auto [u, v] : w.pairs()) image.insert(p[u], p[v]);
    if (image == rel) iso = true;
  }
  CHECK(iso);

  auto two = subtraction_spec(2, 2);
  two.predicate = spec.predicate;
  CHECK(find_model(two).outcome == SearchOutcome::none);
}

TEST_CASE("other predicates") {
  auto spec = subtraction_spec(1, 3);
  spec.predicate = parse_predicate("has-internal-monoid");
  auto r = find_model(spec);
  REQUIRE(r.outcome == SearchOutcome::found);
  CHECK(r.model->size() == 1);
  CHECK(witness_reverifies(*r.model, spec.predicate, r.witness));

  spec = subtraction_spec(1, 3);
  spec.predicate = parse_predicate("has-nonpermuting-congruence-pair");
  r = find_model(spec);
  REQUIRE(r.outcome == SearchOutcome::found);
  CHECK(witness_reverifies(*r.model, spec.predicate, r.witness));
  CHECK_FALSE(witness_reverifies(*r.model, spec.predicate, SearchWitness{}));
  CHECK_FALSE(oracle::congruences(*r.model).empty());
}

TEST_CASE("caps keep a stable prefix") {
  const auto full = enumerate_models(subtraction_spec(1, 3)).models;
  for (std::size_t cap : {1u, 3u, 5u, 100u}) {
    auto spec = subtraction_spec(1, 3);
    spec.limits.candidate_cap = cap;
    const auto e = enumerate_models(spec);
    CHECK_FALSE(e.complete);
    REQUIRE(e.models.size() == cap);
    CHECK(std::equal(e.models.begin(), e.models.end(), full.begin()));
  }
  auto spec = subtraction_spec(1, 3);
  spec.limits.candidate_cap = full.size();
  CHECK(enumerate_models(spec).models.size() == full.size());

  // A capped search never reports none.
  spec = subtraction_spec(2, 3);
  spec.predicate = parse_predicate("has-noncongruence-preorder");
  spec.limits.candidate_cap = 3;
  CHECK(find_model(spec).outcome == SearchOutcome::inconclusive);
}

TEST_CASE("worker count does not change the output") {
  const auto spec = subtraction_spec(1, 3);
  const auto one = enumerate_models(spec, 1);
  for (unsigned w : {2u, 4u, 7u}) {
    const auto many = enumerate_models(spec, w);
    CHECK(many.models == one.models);
    CHECK(many.per_size == one.per_size);
  }
  auto find = subtraction_spec(2, 3);
  find.predicate = parse_predicate("has-noncongruence-preorder");
  CHECK(*find_model(find, 4).model == *find_model(find, 1).model);
}

TEST_CASE("dedup keeps one model per isomorphism class") {
  for (const char* theory : {"identities-subtraction", "identities-implication"}) {
    CAPTURE(std::string(theory));
    SearchSpec spec;
    spec.theory = fixture_identities(theory);
    spec.min_size = 1;
    spec.max_size = 3;
    const auto all = enumerate_models(spec).models;
    std::set<std::pair<std::size_t, std::vector<std::vector<Element>>>> classes;
    for (const auto& m : all) classes.insert({m.size(), canonical(m)});
    spec.dedup = true;
    const auto kept = enumerate_models(spec).models;
    CHECK(kept.size() == classes.size());
    for (const auto& m : kept) CHECK(m.tables() == canonical(m));
  }
}

TEST_CASE("time budget") {
  SearchSpec spec;
  spec.theory = {Signature({{"f", 2}}), {}};
  spec.min_size = 4;
  spec.max_size = 4;
  spec.limits.time_budget = std::chrono::milliseconds(20);
  spec.limits.candidate_cap = std::size_t(1) << 40;
  const auto start = std::chrono::steady_clock::now();
  const auto e = enumerate_models(spec);
  CHECK_FALSE(e.complete);
  CHECK(std::chrono::steady_clock::now() - start < std::chrono::seconds(10));
}

}  // TEST_SUITE
