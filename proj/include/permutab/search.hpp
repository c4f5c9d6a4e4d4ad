#pragma once

#include <chrono>
#include <cstddef>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "permutab/algebra.hpp"
#include "permutab/maltsev.hpp"
#include "permutab/monoid.hpp"
#include "permutab/relation.hpp"
#include "permutab/term.hpp"

namespace permutab {

/// The closed catalog of properties a searched model may be asked to have.
struct Predicate {
  enum class Kind {
    none,
    noncongruence_preorder,        // a compatible preorder that is not symmetric
    nonpermuting_congruence_pair,  // congruences failing to n-permute
    internal_monoid,
  };
  Kind kind = Kind::none;
  unsigned n = 2;  // only for nonpermuting_congruence_pair

  bool operator==(const Predicate&) const = default;
};

/// "none", "has-noncongruence-preorder", "has-nonpermuting-congruence-pair(3)",
/// "has-internal-monoid".
std::string to_string(const Predicate& p);
Predicate parse_predicate(std::string_view text);

struct SearchLimits {
  /// Most models examined over the whole search.
  std::size_t candidate_cap = 100000;
  /// Wall-clock budget; a search cut short by it is partial.
  std::optional<std::chrono::milliseconds> time_budget;

  bool operator==(const SearchLimits&) const = default;
};

struct SearchSpec {
  IdentitySet theory;
  std::size_t min_size = 1;
  std::size_t max_size = 1;
  Predicate predicate;
  SearchLimits limits;
  /// Keep only models whose tables are least among all relabelings by
  /// carrier permutations that fix every constant.
  bool dedup = false;

  bool operator==(const SearchSpec&) const = default;
};

/// Throws Error for empty or inverted size bounds.
void validate_spec(const SearchSpec& spec);

struct ModelEnumeration {
  std::vector<Algebra> models;
  /// Number of models per size, in the order searched.
  std::vector<std::pair<std::size_t, std::size_t>> per_size;
  /// False when a cap or the time budget cut the enumeration short.
  bool complete = true;
};

/// All models of the theory at each size in range. Tables are filled in
/// signature order, entries in row-major order, values ascending; partial
/// tables are pruned as soon as some fully determined instance of an
/// identity fails. Output is lexicographic in the concatenated tables and
/// identical for every worker count.
ModelEnumeration enumerate_models(const SearchSpec& spec, unsigned workers = 1);

using SearchWitness =
    std::variant<std::monostate, BinRelation, PermutabilityVerdict,
                 MonoidStructure>;

/// Evaluates a predicate on one model. Empty optional: predicate false.
/// Throws CapExceeded when the model is too large for relation enumeration.
std::optional<SearchWitness> evaluate_predicate(
    const Algebra& alg, const Predicate& p,
    const EnumerationOptions& options = {});

/// Whether the witness re-verifies for the predicate on alg.
bool witness_reverifies(const Algebra& alg, const Predicate& p,
                        const SearchWitness& w);

struct SizeOutcome {
  std::size_t size = 0;
  std::size_t models_examined = 0;
  bool found = false;
  bool complete = true;
};

struct FindResult {
  SearchOutcome outcome = SearchOutcome::none;
  std::optional<Algebra> model;
  SearchWitness witness;
  std::vector<SizeOutcome> sizes;
};

/// First model (in enumeration order, smallest size first) satisfying the
/// predicate. `none` is only reported when every size was searched fully.
FindResult find_model(const SearchSpec& spec, unsigned workers = 1);

}  // namespace permutab
