#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace permutab {

/// Carrier elements are dense indices 0..size-1. Display names live in the
/// algebra's label map.
using Element = std::uint32_t;

struct Symbol {
  std::string name;
  unsigned arity = 0;

  bool operator==(const Symbol&) const = default;
};

/// Ordered list of operation symbols. Order matters: it fixes table layout in
/// files, the order clone generation applies operations in, and the
/// lexicographic order of model enumeration.
class Signature {
 public:
  Signature() = default;
  explicit Signature(std::vector<Symbol> symbols);

  std::size_t size() const noexcept { return symbols_.size(); }
  bool empty() const noexcept { return symbols_.empty(); }
  const Symbol& operator[](std::size_t i) const { return symbols_.at(i); }
  auto begin() const noexcept { return symbols_.begin(); }
  auto end() const noexcept { return symbols_.end(); }

  std::optional<std::size_t> find(std::string_view name) const;
  bool has_constants() const;

  bool operator==(const Signature&) const = default;

 private:
  std::vector<Symbol> symbols_;
};

/// Number of entries in the table of an arity-`arity` operation on a carrier
/// of `size` elements. Throws Error on overflow.
std::size_t table_length(std::size_t size, unsigned arity);

/// Finite algebra with every operation given as a full table.
///
/// Tables are flattened row-major with the leftmost argument as the most
/// significant index: entry (a_0, ..., a_{k-1}) lives at
/// sum_i a_i * size^(k-1-i). Constants are arity-0 tables with one entry.
class Algebra {
 public:
  Algebra(std::size_t size, Signature signature,
          std::vector<std::vector<Element>> tables,
          std::vector<std::string> labels = {});

  std::size_t size() const noexcept { return size_; }
  const Signature& signature() const noexcept { return signature_; }
  std::span<const Element> table(std::size_t symbol) const {
    return tables_.at(symbol);
  }
  const std::vector<std::vector<Element>>& tables() const noexcept {
    return tables_;
  }
  const std::vector<std::string>& labels() const noexcept { return labels_; }

  /// Display name of an element; falls back to the index.
  std::string label(Element e) const;

  Element apply(std::size_t symbol, std::span<const Element> args) const;

  bool operator==(const Algebra&) const = default;

 private:
  std::size_t size_;
  Signature signature_;
  std::vector<std::vector<Element>> tables_;
  std::vector<std::string> labels_;
};

/// Index of an argument tuple inside a row-major table.
std::size_t table_index(std::size_t size, std::span<const Element> args);

/// Inverse of table_index: the argument tuple stored at `index`.
std::vector<Element> table_args(std::size_t size, unsigned arity,
                                std::size_t index);

/// One-element algebra of the given signature.
Algebra trivial_algebra(const Signature& signature);

/// Componentwise product. Pair (x, y) is element x * b.size() + y.
Algebra product_algebra(const Algebra& a, const Algebra& b);

/// Least subuniverse containing `seed` (and every constant), as a sorted list.
std::vector<Element> generated_subuniverse(const Algebra& alg,
                                           std::span<const Element> seed);

/// A total function between finite carriers.
class FiniteMap {
 public:
  FiniteMap(std::size_t domain, std::size_t codomain,
            std::vector<Element> image);

  static FiniteMap identity(std::size_t size);
  static FiniteMap constant(std::size_t domain, std::size_t codomain,
                            Element value);

  std::size_t domain() const noexcept { return domain_; }
  std::size_t codomain() const noexcept { return codomain_; }
  const std::vector<Element>& image() const noexcept { return image_; }
  Element operator()(Element x) const { return image_.at(x); }

  bool operator==(const FiniteMap&) const = default;

 private:
  std::size_t domain_;
  std::size_t codomain_;
  std::vector<Element> image_;
};

/// `second` after `first`: x -> second(first(x)).
FiniteMap compose_maps(const FiniteMap& first, const FiniteMap& second);

/// First place where a map fails to commute with an operation.
struct HomomorphismViolation {
  std::size_t symbol = 0;
  std::vector<Element> args;
  Element image_of_result = 0;  // map(op(args))
  Element result_of_images = 0;  // op(map(args))
};

struct HomomorphismCheck {
  std::optional<HomomorphismViolation> violation;
  bool holds() const noexcept { return !violation.has_value(); }
};

/// Checks map(op(x...)) == op(map(x)...) for every symbol and every argument
/// tuple, in signature order then lexicographic tuple order.
HomomorphismCheck is_homomorphism(const FiniteMap& map, const Algebra& dom,
                                  const Algebra& cod);

}  // namespace permutab
