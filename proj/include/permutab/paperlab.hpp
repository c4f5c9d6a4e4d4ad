#pragma once

#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "permutab/algebra.hpp"
#include "permutab/category.hpp"
#include "permutab/maltsev.hpp"
#include "permutab/monoid.hpp"
#include "permutab/relation.hpp"
#include "permutab/report.hpp"
#include "permutab/term.hpp"

namespace permutab {

/// A map between two named algebras.
struct NamedMap {
  std::string name;
  std::string from;
  std::string to;
  FiniteMap map;

  bool operator==(const NamedMap&) const = default;
};

struct MapBundle {
  std::vector<NamedMap> maps;

  const NamedMap& at(std::string_view name) const;
  bool operator==(const MapBundle&) const = default;
};

using FixturePayload =
    std::variant<Algebra, BinRelation, FinCategory, MapBundle, IdentitySet>;

struct Fixture {
  std::string name;
  std::string description;
  FixturePayload payload;
  /// Display names of carrier elements for relation and category payloads.
  std::vector<std::string> labels;
};

/// Names accepted by load_fixture. "identities-perm(n)" is listed for
/// n = 2..6 but accepts any n >= 2.
std::vector<std::string> fixture_names();

/// Throws Error for an unknown name. Every fixture is validated on load.
Fixture load_fixture(std::string_view name);

/// load_fixture for names whose payload is an algebra.
Algebra fixture_algebra(std::string_view name);
IdentitySet fixture_identities(std::string_view name);

/// Algebras of the fixture catalog of size <= max_size.
std::vector<std::string> fixture_algebra_names(std::size_t max_size);

/// One part per identity; a failing part carries the first counterexample
/// environment ("counterexample" in data, labels in the summary).
Report check_identities(const Algebra& alg, const IdentitySet& ids,
                        std::string check = "identities");

/// The span X <-s- Z -f-> X, Y <-g- Z -t-> Y of implication algebras:
/// homomorphisms, splittings, constant cross composites, and the image of
/// <f, g> in X x Y having 3 of 4 elements.
Report verify_punctual_span();
/// The same checks on caller-supplied algebras and maps (named impl-X,
/// impl-Y, impl-Z in the bundle).
Report verify_punctual_span(const Algebra& x, const Algebra& y,
                            const Algebra& z, const MapBundle& maps);

/// The subtraction algebra A with the relation R: subtraction identities,
/// compatibility, reflexive and transitive but not symmetric, and the
/// generated congruence strictly larger than R.
Report verify_subtraction_example();
Report verify_subtraction_example(const Algebra& a, const BinRelation& r);

/// For an algebra with binary `s` and constant `0` and an internal monoid
/// (M, +) on it: every x has inverse s(0, x), + is commutative, and
/// x + y = s(x, s(0, y)). Preconditions and conclusions are reported as
/// separate parts; a failed conclusion under valid preconditions is critical.
Report verify_subtractive_monoid(const Algebra& alg, const MonoidStructure& m);

/// Every internal monoid on every subtraction algebra of size <= max_size
/// (exhaustive model search) passes verify_subtractive_monoid.
Report verify_subtractive_monoids(std::size_t max_size, unsigned workers = 1);

/// The chain identities for theta1 .. theta(n-1) on alg, then congruence
/// n-permutability and the Hagemann conditions, which must follow.
Report verify_perm_algebra(const Algebra& alg, unsigned n,
                           const EnumerationOptions& options = {});

/// Every fixture claim in one report.
Report verify_paper(unsigned workers = 1);

}  // namespace permutab
