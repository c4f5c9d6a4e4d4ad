#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "permutab/relation.hpp"
#include "permutab/report.hpp"

namespace permutab {

using Object = std::uint32_t;
using Morphism = std::uint32_t;

/// A finite category in sets: objects 0..O-1, morphisms 0..M-1.
///
/// Composition convention: comp(b, g) is defined when cod(b) == dom(g) and
/// denotes "g after b" (first b, then g), i.e. a morphism dom(b) -> cod(g).
///
/// Only index ranges are checked on construction; the category laws are
/// checked by validate_category, so broken categories can be represented
/// and diagnosed.
class FinCategory {
 public:
  FinCategory(std::size_t objects, std::vector<Object> dom,
              std::vector<Object> cod, std::vector<Morphism> id);

  std::size_t objects() const noexcept { return objects_; }
  std::size_t morphisms() const noexcept { return dom_.size(); }
  Object dom(Morphism f) const { return dom_.at(f); }
  Object cod(Morphism f) const { return cod_.at(f); }
  Morphism id(Object o) const { return id_.at(o); }
  const std::vector<Object>& dom_map() const noexcept { return dom_; }
  const std::vector<Object>& cod_map() const noexcept { return cod_; }
  const std::vector<Morphism>& id_map() const noexcept { return id_; }

  std::optional<Morphism> comp(Morphism b, Morphism g) const {
    return comp_.at(b * morphisms() + g);
  }
  void set_comp(Morphism b, Morphism g, Morphism result);
  void clear_comp(Morphism b, Morphism g);

  /// Defined composites as (b, g, result), lexicographic.
  std::vector<std::array<Morphism, 3>> comp_entries() const;

  bool operator==(const FinCategory&) const = default;

 private:
  std::size_t objects_;
  std::vector<Object> dom_;
  std::vector<Object> cod_;
  std::vector<Morphism> id_;
  std::vector<std::optional<Morphism>> comp_;
};

/// Every violated law, one human-readable line each. Empty means valid.
std::vector<std::string> category_violations(const FinCategory& c);
Report validate_category(const FinCategory& c);
bool is_valid_category(const FinCategory& c);

/// No two distinct morphisms share (dom, cod).
bool is_thin(const FinCategory& c);

/// Objects are the carrier, morphisms the pairs of r in lexicographic order.
/// Requires r reflexive and transitive.
FinCategory preorder_to_category(const BinRelation& r);

/// {(dom f, cod f)} for a thin category.
BinRelation category_to_relation(const FinCategory& c);

/// S = {(b, a) | exists g: comp(b, g) = a}, a relation on morphisms: the
/// image of the span (first projection, composition) out of the composable
/// pairs.
BinRelation composability_relation(const FinCategory& c);

/// S must be reflexive and transitive on a valid category (InternalInconsistency
/// otherwise); the report says whether it is also symmetric.
Report s_properties(const FinCategory& c);

/// A triple with comp(b, g) == comp(d, g) and d < b.
struct CancellationWitness {
  Morphism g = 0;
  Morphism b = 0;
  Morphism d = 0;
};

std::optional<CancellationWitness> left_cancellation_witness(
    const FinCategory& c);
Report has_left_cancellation(const FinCategory& c);

/// inv[f] is the two-sided inverse of f.
struct InversionMap {
  std::vector<Morphism> inv;
  bool operator==(const InversionMap&) const = default;
};

/// (b, a) in S whose mirror (a, b) is not.
struct GroupoidFailure {
  Morphism b = 0;
  Morphism a = 0;
  bool operator==(const GroupoidFailure&) const = default;
};

/// Builds inverses through the relation S. If S is symmetric, every f has a
/// right inverse r (comp(f, r) = id(dom f)) and a left inverse l
/// (comp(l, f) = id(cod f)); the least-index choices must coincide. A
/// mismatch or a missing inverse raises InternalInconsistency.
std::variant<InversionMap, GroupoidFailure> groupoidify(const FinCategory& c);

/// Direct check that every morphism has a two-sided inverse, without S.
bool is_groupoid(const FinCategory& c);

bool inversion_map_valid(const FinCategory& c, const InversionMap& m);

/// One-object category of a monoid given by its multiplication table
/// (table[a * n + b] = a then b), with `unit` as the identity morphism.
FinCategory monoid_category(std::size_t n, const std::vector<Element>& table,
                            Element unit);

/// Category with only identity morphisms.
FinCategory discrete_category(std::size_t objects);

/// Every valid category with at most `max_morphisms` morphisms, one per
/// isomorphism class, in canonical form: identities are morphisms
/// 0..O-1 (id(o) = o), and each category is the lexicographically least
/// encoding in its class. Ordered by morphism count, then object count,
/// then encoding.
std::vector<FinCategory> enumerate_categories(std::size_t max_morphisms);

}  // namespace permutab
