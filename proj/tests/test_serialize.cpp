#include <doctest.h>

#include <random>

#include "permutab/category.hpp"
#include "permutab/error.hpp"
#include "permutab/paperlab.hpp"
#include "permutab/search.hpp"
#include "permutab/serialize.hpp"

using namespace permutab;

namespace {

void round_trips(const Document& doc) {
  const std::string text = serialize(doc);
  const Document back = parse_document(text);
  CHECK(back == doc);
  CHECK(serialize(back) == text);
}

Algebra random_algebra(std::mt19937& rng) {
  std::uniform_int_distribution<std::size_t> size_dist(1, 4);
  std::uniform_int_distribution<unsigned> arity_dist(0, 3);
  std::uniform_int_distribution<std::size_t> count_dist(1, 3);
  const std::size_t n = size_dist(rng);
  std::vector<Symbol> symbols;
  std::vector<std::vector<Element>> tables;
  const std::size_t count = count_dist(rng);
  for (std::size_t i = 0; i < count; ++i) {
    const unsigned k = arity_dist(rng);
    symbols.push_back({"op" + std::to_string(i), k});
    std::vector<Element> t(table_length(n, k));
    std::uniform_int_distribution<Element> v(0, static_cast<Element>(n - 1));
    for (auto& e : t) e = v(rng);
    tables.push_back(std::move(t));
  }
  std::vector<std::string> labels;
  if (rng() % 2)
    for (std::size_t i = 0; i < n; ++i) labels.push_back("e" + std::to_string(i));
  return Algebra(n, Signature(symbols), tables, labels);
}

std::string error_of(std::string_view text) {
  try {
    parse_document(text);
  } catch (const ParseError& e) {
    return e.what();
  }
  return "";
}

const char* kAlgebra = R"j({"kind":"algebra","version":1,"size":2,
  "ops":{"*":{"arity":2,"table":[0,1,0,0]}}})j";

}  // namespace

TEST_SUITE("serialize") {

TEST_CASE("every fixture round-trips") {
  for (const auto& name : fixture_names()) {
    CAPTURE(name);
    const Document d = fixture_document(load_fixture(name));
    round_trips(d);
  }
}

TEST_CASE("generated algebras and relations round-trip") {
  std::mt19937 rng(20240601);
  for (int i = 0; i < 200; ++i) round_trips({random_algebra(rng), {}});
  for (std::size_t n = 1; n <= 3; ++n)
    for (std::uint64_t mask = 0; mask < (std::uint64_t(1) << (n * n)); mask += 7)
      round_trips({BinRelation::from_mask(n, mask), {}});
  round_trips({BinRelation(2, {{0, 1}}), {"p", "q"}});

  SearchSpec spec;
  spec.theory = fixture_identities("identities-subtraction");
  spec.max_size = 2;
  for (const auto& m : enumerate_models(spec).models) round_trips({m, {}});
}

TEST_CASE("categories, identities, specs and reports round-trip") {
  for (const auto& c : enumerate_categories(3)) round_trips({c, {}});
  for (unsigned n = 2; n <= 5; ++n) round_trips({hm_identities(n), {}});

  SearchSpec spec;
  spec.theory = fixture_identities("identities-implication");
  spec.min_size = 2;
  spec.max_size = 4;
  spec.predicate = parse_predicate("has-nonpermuting-congruence-pair(3)");
  spec.limits.candidate_cap = 77;
  spec.limits.time_budget = std::chrono::milliseconds(1500);
  spec.dedup = true;
  round_trips({spec, {}});
  spec.limits.time_budget.reset();
  round_trips({spec, {}});

  round_trips({verify_subtraction_example(), {}});
  round_trips({verify_paper(), {}});
  Report inc = make_report("x", Status::inconclusive, "capped");
  inc.critical = true;
  inc.data["partial"] = 12;
  round_trips({inc, {}});
}

TEST_CASE("bare payloads are accepted by the direct converters") {
  const Algebra a = fixture_algebra("subtr-A");
  Json j = algebra_json(a);
  j.erase("kind");
  j.erase("version");
  CHECK(algebra_from_json(j) == a);
  CHECK_THROWS_AS(algebra_from_json(relation_json(BinRelation(2))), ParseError);
}

TEST_CASE("errors name their position") {
  CHECK(error_of(kAlgebra).empty());
  CHECK(error_of(R"j({"kind":"algebra","size":2,
    "ops":{"*":{"arity":2,"table":[0,1,5,0]}}})j")
            .find("/ops/*/table/2") != std::string::npos);
  CHECK(error_of(R"j({"kind":"algebra","size":2,
    "ops":{"*":{"arity":2,"table":[0,1,0]}}})j")
            .find("/ops/*/table") != std::string::npos);
  CHECK(error_of(R"j({"kind":"algebra","size":0,"ops":{}})j").find("/size") !=
        std::string::npos);
  CHECK(error_of("{\"kind\": \"algebra\",").find("at byte") != std::string::npos);
  CHECK(error_of(R"j({"kind":"widget"})j").find("/kind") != std::string::npos);
  CHECK(error_of(R"j({"kind":"relation","version":9,"size":2,"pairs":[]})j")
            .find("/version") != std::string::npos);
  CHECK(error_of(R"j({"kind":"relation","size":2,"pairs":[[0,1],[2,0]]})j")
            .find("/pairs/1") != std::string::npos);
  CHECK(error_of(R"j({"kind":"relation","size":2,"pairs":[],"labels":["a"]})j")
            .find("/labels") != std::string::npos);
  CHECK(error_of(R"j({"kind":"category","objects":1,"morphisms":1,"dom":[0],
    "cod":[0],"id":[0],"comp":[[0,0,0],[0,0,0]]})j")
            .find("/comp/1") != std::string::npos);
  CHECK(error_of(R"j({"kind":"identities","signature":[{"name":"f","arity":1}],
    "identities":[{"vars":["x"],"lhs":"f(x,x)","rhs":"x"}]})j")
            .find("/identities/0/lhs") != std::string::npos);
  CHECK(error_of(R"j({"kind":"identities","signature":[{"name":"f","arity":1}],
    "identities":[{"vars":["f"],"lhs":"f(f)","rhs":"f"}]})j")
            .find("/identities/0/vars/0") != std::string::npos);
  CHECK(error_of(R"j({"kind":"search-spec","signature":[],"identities":[],
    "sizes":[3,2]})j")
            .find("/sizes") != std::string::npos);
  CHECK(error_of(R"j({"kind":"report","check":"x","status":"maybe"})j")
            .find("/status") != std::string::npos);
  CHECK(error_of(R"j({"kind":"map-bundle","maps":[{"name":"f","from":"a",
    "to":"b","domain":2,"codomain":1,"image":[0]}]})j")
            .find("/maps/0/image") != std::string::npos);
}

}  // TEST_SUITE
