#include <doctest.h>

#include "oracles.hpp"
#include "permutab/category.hpp"
#include "permutab/error.hpp"
#include "permutab/paperlab.hpp"

using namespace permutab;

namespace {

BinRelation rel_a() { return std::get<BinRelation>(load_fixture("rel-R").payload); }

FinCategory group_z2() { return std::get<FinCategory>(load_fixture("cat-group-Z2").payload); }

FinCategory idempotent() {
  return std::get<FinCategory>(load_fixture("cat-idempotent-monoid").payload);
}

std::vector<BinRelation> preorders(std::size_t n) {
  std::vector<BinRelation> out;
  for (std::uint64_t m = 0; m < (std::uint64_t{1} << (n * n)); ++m) {
    const auto r = BinRelation::from_mask(n, m);
    const auto p = properties(r);
    if (p.reflexive && p.transitive) out.push_back(r);
  }
  return out;
}

}  // namespace

TEST_SUITE("category") {

TEST_CASE("validate_category") {
  CHECK(validate_category(group_z2()).holds());
  CHECK(category_violations(group_z2()).empty());

  FinCategory missing = group_z2();
  missing.clear_comp(1, 1);
  CHECK_FALSE(is_valid_category(missing));
  CHECK_FALSE(category_violations(missing).empty());

  // Non-associative: a table that is not a monoid.
  FinCategory broken = monoid_category(3, {0, 1, 2, 1, 2, 0, 2, 1, 0}, 0);
  const auto v = category_violations(broken);
  REQUIRE_FALSE(v.empty());
  bool mentions = false;
  for (const auto& line : v) mentions = mentions || line.find("assoc") != std::string::npos;
  CHECK(mentions);

  // Morphism 1 is the only two-sided unit, but id(0) names morphism 0.
  FinCategory bad_id(1, {0, 0}, {0, 0}, {0});
  bad_id.set_comp(0, 0, 0);
  bad_id.set_comp(0, 1, 0);
  bad_id.set_comp(1, 0, 0);
  bad_id.set_comp(1, 1, 1);
  CHECK_FALSE(is_valid_category(bad_id));
  CHECK_THROWS_AS(FinCategory(1, {0, 1}, {0, 0}, {0}), Error);
}

TEST_CASE("mutating a composite with an identity is detected") {
  const auto cats = enumerate_categories(4);
  for (const auto& c : cats)
    for (const auto& e : c.comp_entries())
      for (Morphism r = 0; r < c.morphisms(); ++r) {
        const bool with_identity =
            e[0] == c.id(c.dom(e[0])) || e[1] == c.id(c.dom(e[1]));
        if (r == e[2] || !with_identity) continue;
        FinCategory m = c;
        m.set_comp(e[0], e[1], r);
        CHECK_FALSE(is_valid_category(m));
      }
}

TEST_CASE("thinness") {
  CHECK(is_thin(preorder_to_category(rel_a())));
  CHECK_FALSE(is_thin(group_z2()));
  CHECK(is_thin(discrete_category(3)));
}

TEST_CASE("preorder_to_category") {
  const auto d = preorder_to_category(BinRelation::diagonal(2));
  CHECK(d.objects() == 2);
  CHECK(d.morphisms() == 2);
  const auto one = preorder_to_category(BinRelation(2, {{0, 0}, {1, 1}, {0, 1}}));
  CHECK(one.morphisms() == 3);
  const auto ra = preorder_to_category(rel_a());
  CHECK(ra.objects() == 3);
  CHECK(ra.morphisms() == 4);
  CHECK(is_valid_category(ra));
  CHECK_THROWS_AS(preorder_to_category(BinRelation(2, {{0, 1}})), Error);
}

TEST_CASE("preorder and category round trips") {
  for (std::size_t n = 1; n <= 3; ++n)
    for (const auto& r : preorders(n)) {
      const auto c = preorder_to_category(r);
      CHECK(is_valid_category(c));
      CHECK(is_thin(c));
      CHECK(category_to_relation(c) == r);
    }
  CHECK(category_to_relation(discrete_category(3)) == BinRelation::diagonal(3));
  CHECK_THROWS_AS(category_to_relation(group_z2()), Error);

  for (const auto& c : enumerate_categories(4)) {
    if (!is_thin(c)) continue;
    const auto back = preorder_to_category(category_to_relation(c));
    CHECK(back.objects() == c.objects());
    CHECK(back.morphisms() == c.morphisms());
    CHECK(category_to_relation(back) == category_to_relation(c));
  }
}

TEST_CASE("composability relation S") {
  CHECK(composability_relation(group_z2()) == BinRelation::full(2));
  CHECK(composability_relation(idempotent()) == BinRelation(2, {{0, 0}, {0, 1}, {1, 1}}));
  CHECK_FALSE(properties(composability_relation(preorder_to_category(rel_a()))).symmetric);
}

TEST_CASE("s_properties") {
  CHECK(s_properties(group_z2()).data["symmetric"] == true);
  CHECK(s_properties(idempotent()).data["symmetric"] == false);
  FinCategory broken = group_z2();
  broken.clear_comp(0, 1);
  CHECK_THROWS_AS(s_properties(broken), Error);
}

TEST_CASE("left cancellation") {
  CHECK(has_left_cancellation(group_z2()).holds());
  const auto w = left_cancellation_witness(idempotent());
  REQUIRE(w.has_value());
  CHECK(w->g == 1);
  CHECK(w->b == 1);
  CHECK(w->d == 0);
  for (std::size_t n = 1; n <= 3; ++n)
    for (const auto& r : preorders(n))
      CHECK(has_left_cancellation(preorder_to_category(r)).holds());
}

TEST_CASE("groupoidify") {
  const auto g = groupoidify(group_z2());
  REQUIRE(std::holds_alternative<InversionMap>(g));
  CHECK(std::get<InversionMap>(g).inv == std::vector<Morphism>{0, 1});

  const Algebra a = fixture_algebra("subtr-A");
  const BinRelation sym = congruence_generated(a, rel_a());
  const auto cat = preorder_to_category(sym);
  const auto s = groupoidify(cat);
  REQUIRE(std::holds_alternative<InversionMap>(s));
  const auto pairs = sym.pairs();
  const auto ab = std::find(pairs.begin(), pairs.end(), Pair{1, 2}) - pairs.begin();
  const auto ba = std::find(pairs.begin(), pairs.end(), Pair{2, 1}) - pairs.begin();
  CHECK(std::get<InversionMap>(s).inv[ab] == Morphism(ba));
  CHECK(std::get<InversionMap>(s).inv[ba] == Morphism(ab));

  const auto f = groupoidify(preorder_to_category(rel_a()));
  REQUIRE(std::holds_alternative<GroupoidFailure>(f));
  const auto ra_pairs = rel_a().pairs();
  CHECK(ra_pairs[std::get<GroupoidFailure>(f).a] == Pair{1, 2});
}

TEST_CASE("is_groupoid") {
  CHECK(is_groupoid(group_z2()));
  CHECK_FALSE(is_groupoid(preorder_to_category(rel_a())));
  CHECK(is_groupoid(discrete_category(4)));
  CHECK_FALSE(is_groupoid(idempotent()));
}

TEST_CASE("thin categories are groupoids exactly when symmetric") {
  for (std::size_t n = 1; n <= 3; ++n)
    for (const auto& r : preorders(n)) {
      const auto c = preorder_to_category(r);
      CHECK(is_groupoid(c) == properties(category_to_relation(c)).symmetric);
    }
}

TEST_CASE("category enumeration matches the brute-force count") {
  const auto cats = enumerate_categories(4);
  std::vector<std::size_t> by_size(5, 0);
  for (const auto& c : cats) {
    CHECK(is_valid_category(c));
    ++by_size[c.morphisms()];
  }
  for (std::size_t m = 1; m <= 3; ++m) CHECK(by_size[m] == oracle::category_count(m));
  CHECK(by_size[1] == 1);
  CHECK(by_size[2] == 3);
  CHECK(by_size[3] == 11);
  CHECK(by_size[4] == 55);
}

TEST_CASE("four-morphism count matches the brute-force count") {
  std::size_t four = 0;
  for (const auto& c : enumerate_categories(4)) four += c.morphisms() == 4;
  CHECK(four == oracle::category_count(4));
}

TEST_CASE("groupoid construction over every small category") {
  for (const auto& c : enumerate_categories(4)) {
    const auto s = composability_relation(c);
    const auto p = properties(s);
    CHECK(p.reflexive);
    CHECK(p.transitive);
    const auto g = groupoidify(c);
    CHECK(std::holds_alternative<InversionMap>(g) == p.symmetric);
    CHECK(std::holds_alternative<InversionMap>(g) == is_groupoid(c));
    if (const auto* inv = std::get_if<InversionMap>(&g)) {
      CHECK(inversion_map_valid(c, *inv));
      for (Morphism f = 0; f < c.morphisms(); ++f) CHECK(inv->inv[inv->inv[f]] == f);
      CHECK(has_left_cancellation(c).holds());
    } else {
      const auto& fail = std::get<GroupoidFailure>(g);
      CHECK(s.contains(fail.b, fail.a));
      CHECK_FALSE(s.contains(fail.a, fail.b));
    }
  }
}

TEST_CASE("inversion_map_valid rejects wrong maps") {
  CHECK_FALSE(inversion_map_valid(group_z2(), {{1, 0}}));
  CHECK(inversion_map_valid(group_z2(), {{0, 1}}));
}

}  // TEST_SUITE
