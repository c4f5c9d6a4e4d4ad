#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "permutab/algebra.hpp"
#include "permutab/relation.hpp"
#include "permutab/report.hpp"
#include "permutab/term.hpp"

namespace permutab {

/// Tabulated finitary operation on a carrier of `carrier` elements, laid out
/// like an algebra table. `provenance`, when set, is a term in the variables
/// x, y, z (indices 0, 1, 2) that tabulates to `table`.
struct TermOperation {
  unsigned arity = 0;
  std::size_t carrier = 0;
  std::vector<Element> table;
  std::optional<Term> provenance;

  Element operator()(std::span<const Element> args) const {
    return table[table_index(carrier, args)];
  }
  bool operator==(const TermOperation&) const = default;
};

/// Which inclusion a permutability witness refutes.
enum class PermCondition {
  alternating,        // r s r ... != s r s ...
  converse_in_power,  // R° not contained in R^(n-1)
  power_in_power,     // R^n not contained in R^(n-1)
};

const char* to_string(PermCondition c);

struct PermutabilityWitness {
  PermCondition condition = PermCondition::alternating;
  /// (r, s) for alternating; (R) for the two Hagemann conditions.
  std::vector<BinRelation> relations;
  /// For alternating: a pair in exactly one of the two composites.
  /// Otherwise: a pair of the left-hand side missing from R^(n-1).
  Pair pair{0, 0};
  /// For alternating: whether `pair` lies in r s r ... (true) or s r s ...
  bool in_first = true;

  bool operator==(const PermutabilityWitness&) const = default;
};

struct PermutabilityVerdict {
  unsigned n = 2;
  bool holds = true;
  std::optional<PermutabilityWitness> witness;

  bool operator==(const PermutabilityVerdict&) const = default;
};

/// r s r s ... with n factors, starting from r.
BinRelation alternating_composite(const BinRelation& r, const BinRelation& s,
                                  unsigned n);

/// Whether r s r ... = s r s ... with n factors on each side.
PermutabilityVerdict pair_permutes_at(const BinRelation& r,
                                      const BinRelation& s, unsigned n);

/// Over every compatible reflexive R on alg (enumeration order), checks
/// R° <= R^(n-1) and then R^n <= R^(n-1); reports the first failure.
PermutabilityVerdict hagemann_check(const Algebra& alg, unsigned n,
                                    const EnumerationOptions& options = {});

/// pair_permutes_at over every ordered pair of congruences of alg.
PermutabilityVerdict congruence_permutability_check(
    const Algebra& alg, unsigned n, const EnumerationOptions& options = {});

/// {"n", "holds"} plus, on failure, the condition, relations and pair.
Json verdict_json(const PermutabilityVerdict& v);

/// Re-checks a failure witness from scratch against alg.
bool witness_reverifies(const Algebra& alg, const PermutabilityVerdict& v);

struct CloneOptions {
  std::size_t cap = 100000;
  unsigned workers = 1;
};

/// The ternary term operations of an algebra: the subalgebra of
/// alg^(alg^3) generated by the three projections (and the constants).
///
/// Elements are kept in generation order: projections x, y, z first, then
/// constants, then one layer per saturation round. Within a round candidates
/// are ordered by symbol and then lexicographically by argument indices, and
/// each new table keeps the first way it was produced.
class TernaryClone {
 public:
  struct Origin {
    /// -1 for a projection; otherwise the signature index applied.
    long symbol = -1;
    /// Projection index, or the element indices the symbol was applied to.
    std::vector<std::size_t> args;
  };

  std::size_t size() const noexcept { return ops_.size(); }
  std::size_t carrier() const noexcept { return carrier_; }
  const std::vector<TermOperation>& operations() const noexcept { return ops_; }
  const TermOperation& operator[](std::size_t i) const { return ops_.at(i); }
  const Origin& origin(std::size_t i) const { return origins_.at(i); }
  std::size_t generation(std::size_t i) const { return generation_.at(i); }

  /// Term that produced element i, built from the recorded origins.
  Term term(std::size_t i, const Signature& signature) const;
  std::optional<std::size_t> find(const std::vector<Element>& table) const;

 private:
  friend TernaryClone ternary_clone(const Algebra&, const CloneOptions&);

  std::size_t carrier_ = 0;
  std::vector<TermOperation> ops_;
  std::vector<Origin> origins_;
  std::vector<std::size_t> generation_;

  struct TableHash {
    std::size_t operator()(const std::vector<Element>& t) const noexcept;
  };
  std::unordered_map<std::vector<Element>, std::size_t, TableHash> index_;
};

/// Saturates the ternary clone. Throws CapExceeded (with the number of
/// operations found so far) once more than options.cap are generated.
TernaryClone ternary_clone(const Algebra& alg, const CloneOptions& options = {});

enum class SearchOutcome { found, none, inconclusive };

const char* to_string(SearchOutcome o);

struct HmResult {
  SearchOutcome outcome = SearchOutcome::none;
  /// theta_1 .. theta_(n-1) with provenance terms, when found.
  std::vector<TermOperation> chain;
  std::size_t clone_size = 0;
};

/// Identities theta_1(x,y,y) = x, theta_i(x,x,y) = theta_(i+1)(x,y,y),
/// theta_(n-1)(x,x,y) = y over ternary symbols theta1 .. theta(n-1).
IdentitySet hm_identities(unsigned n);

/// Algebra on `carrier` elements whose operations theta1 .. are the chain.
Algebra chain_algebra(std::size_t carrier,
                      const std::vector<TermOperation>& chain,
                      std::vector<std::string> labels = {});

/// Searches a saturated clone for a Hagemann-Mitschke chain of length n-1.
/// Among all chains the one that is lexicographically least by clone index
/// (generation order) is returned.
HmResult find_hm_terms(const TernaryClone& clone, const Algebra& alg,
                       unsigned n);

/// Builds the clone and searches it. A capped clone yields inconclusive,
/// never none.
HmResult find_hm_terms(const Algebra& alg, unsigned n,
                       const CloneOptions& options = {});

struct DegreeResult {
  SearchOutcome outcome = SearchOutcome::none;
  unsigned degree = 0;  // least n with a chain, when found
  HmResult terms;
  std::size_t clone_size = 0;
};

/// Least n in 2..max_n for which a chain exists.
DegreeResult permutability_degree(const Algebra& alg, unsigned max_n,
                                  const CloneOptions& options = {});

/// Instance-checks the implications between the term condition, the
/// relational conditions and congruence permutability for n = 2..max_n:
///   chain at n  =>  hagemann_check(n) and congruence_permutability_check(n)
///   hagemann_check(n)  =>  congruence_permutability_check(n)
///   hagemann_check(n)  =>  every compatible preorder is symmetric
/// Any broken implication fails the report and is marked critical.
Report cross_validate(const Algebra& alg, unsigned max_n,
                      const CloneOptions& clone_options = {},
                      const EnumerationOptions& enum_options = {});

}  // namespace permutab
