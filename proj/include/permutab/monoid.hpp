#pragma once

#include <cstddef>
#include <vector>

#include "permutab/algebra.hpp"

namespace permutab {

/// Binary operation `plus` (row-major, plus[x * size + y]) with unit.
struct MonoidStructure {
  std::size_t size = 0;
  std::vector<Element> plus;
  Element unit = 0;

  Element add(Element x, Element y) const { return plus[x * size + y]; }
  bool operator==(const MonoidStructure&) const = default;
};

/// Associativity and the two unit laws.
bool monoid_laws_hold(const MonoidStructure& m);

/// `plus` is a homomorphism alg x alg -> alg.
bool addition_is_homomorphism(const Algebra& alg, const MonoidStructure& m);

/// The unit is a homomorphism from the one-element algebra: {unit} is a
/// subuniverse and every constant equals it.
bool unit_is_homomorphism(const Algebra& alg, const MonoidStructure& m);

/// Monoid laws plus both homomorphism conditions.
bool is_internal_monoid(const Algebra& alg, const MonoidStructure& m);

/// Every internal monoid on alg, ordered by unit and then by plus table.
std::vector<MonoidStructure> enumerate_internal_monoids(const Algebra& alg);

}  // namespace permutab
