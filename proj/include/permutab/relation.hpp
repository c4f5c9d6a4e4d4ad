#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "permutab/algebra.hpp"

namespace permutab {

using Pair = std::pair<Element, Element>;

/// Binary relation on {0..size-1}, stored as a dense boolean matrix.
/// Pair (i, j) is bit i * size + j; equality is extensional.
class BinRelation {
 public:
  explicit BinRelation(std::size_t size);
  BinRelation(std::size_t size, const std::vector<Pair>& pairs);

  static BinRelation diagonal(std::size_t size);
  static BinRelation full(std::size_t size);
  /// Relation whose bit i*size+j is bit of `mask`; requires size^2 <= 64.
  static BinRelation from_mask(std::size_t size, std::uint64_t mask);

  std::size_t size() const noexcept { return size_; }
  bool contains(Element x, Element y) const {
    return bits_[x * size_ + y] != 0;
  }
  void insert(Element x, Element y);
  void erase(Element x, Element y);

  /// Pairs in lexicographic order.
  std::vector<Pair> pairs() const;
  std::size_t count() const;
  std::uint64_t mask() const;

  bool operator==(const BinRelation&) const = default;

 private:
  std::size_t size_;
  std::vector<std::uint8_t> bits_;
};

struct RelProperties {
  bool reflexive = false;
  bool symmetric = false;
  bool transitive = false;

  bool operator==(const RelProperties&) const = default;
};

/// Left-to-right relational product: (x,z) with x r y and y s z.
/// Juxtaposition "RS" means compose(R, S).
BinRelation compose(const BinRelation& r, const BinRelation& s);
BinRelation converse(const BinRelation& r);
/// r composed with itself n times; n >= 1 (there is no zeroth power).
BinRelation relation_power(const BinRelation& r, unsigned n);
RelProperties properties(const BinRelation& r);
bool is_subrelation(const BinRelation& r, const BinRelation& s);
BinRelation transitive_closure(const BinRelation& r);
BinRelation relation_union(const BinRelation& r, const BinRelation& s);
BinRelation relation_intersection(const BinRelation& r, const BinRelation& s);

/// First tuple of related pairs that an operation maps outside the relation.
struct CompatibilityViolation {
  std::size_t symbol = 0;
  std::vector<Pair> args;
  Pair result;
};

struct CompatibilityCheck {
  std::optional<CompatibilityViolation> violation;
  bool holds() const noexcept { return !violation.has_value(); }
};

/// Whether r is a subuniverse of alg x alg (closed under every operation
/// applied componentwise). Argument tuples are scanned lexicographically over
/// r's pairs.
CompatibilityCheck is_compatible(const BinRelation& r, const Algebra& alg);

bool is_congruence(const BinRelation& r, const Algebra& alg);

/// Least congruence of alg containing r.
BinRelation congruence_generated(const Algebra& alg, const BinRelation& r);

enum class RelConstraint { any, reflexive, preorder, equivalence };

struct EnumerationOptions {
  /// Largest carrier for which enumeration is attempted.
  std::size_t max_carrier = 4;
  unsigned workers = 1;
};

/// Every compatible relation on alg satisfying the constraint, ordered by
/// pair count and then by bitmask. Throws CapExceeded when the carrier is
/// larger than options.max_carrier.
std::vector<BinRelation> enumerate_compatible(
    const Algebra& alg, RelConstraint constraint,
    const EnumerationOptions& options = {});

/// "{(0,0), (a,b)}" using `labels` when given, indices otherwise.
std::string format_pair(const Pair& p, const std::vector<std::string>& labels);
std::string format_relation(const BinRelation& r,
                            const std::vector<std::string>& labels = {});

}  // namespace permutab
