#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "permutab/algebra.hpp"

namespace permutab {

/// Term over a signature: a variable index or a symbol applied to subterms.
/// Symbols are referenced by name and resolved when evaluated.
class Term {
 public:
  static Term variable(std::size_t index);
  static Term apply(std::string symbol, std::vector<Term> args = {});

  bool is_variable() const noexcept { return is_variable_; }
  std::size_t variable_index() const noexcept { return variable_; }
  const std::string& symbol() const noexcept { return symbol_; }
  const std::vector<Term>& args() const noexcept { return args_; }

  /// One past the largest variable index used (0 for ground terms).
  std::size_t variable_bound() const;
  std::size_t depth() const;

  bool operator==(const Term&) const = default;

 private:
  Term() = default;

  bool is_variable_ = false;
  std::size_t variable_ = 0;
  std::string symbol_;
  std::vector<Term> args_;
};

/// Equation lhs = rhs over `var_count` variables. `var_names` is for display
/// and parsing only; it is either empty or has exactly var_count entries.
struct Identity {
  std::size_t var_count = 0;
  Term lhs = Term::variable(0);
  Term rhs = Term::variable(0);
  std::vector<std::string> var_names;

  bool operator==(const Identity&) const = default;
};

/// A signature together with identities over it.
struct IdentitySet {
  Signature signature;
  std::vector<Identity> identities;

  bool operator==(const IdentitySet&) const = default;
};

/// Term resolved against a signature into postfix code. Building one checks
/// that every symbol exists with the right arity and that variables are in
/// range; errors name the position ("root", "root.1.0", ...) of the problem.
class CompiledTerm {
 public:
  CompiledTerm(const Term& term, const Signature& signature,
               std::size_t var_count);

  /// Evaluates with a caller-supplied operation lookup
  /// `apply(symbol, args) -> std::optional<Element>`; nullopt propagates
  /// (used for partially filled tables during model search).
  template <class Apply>
  std::optional<Element> run(std::span<const Element> env, Apply&& apply) const;

  Element evaluate(const Algebra& alg, std::span<const Element> env) const;

 private:
  struct Instr {
    bool is_variable;
    std::size_t index;  // variable index or symbol index
    unsigned arity;
  };
  std::vector<Instr> code_;
  std::size_t max_arity_ = 0;
};

template <class Apply>
std::optional<Element> CompiledTerm::run(std::span<const Element> env,
                                         Apply&& apply) const {
  std::vector<Element> stack;
  stack.reserve(code_.size());
  for (const auto& in : code_) {
    if (in.is_variable) {
      stack.push_back(env[in.index]);
      continue;
    }
    const std::size_t base = stack.size() - in.arity;
    std::optional<Element> v = apply(
        in.index, std::span<const Element>(stack.data() + base, in.arity));
    if (!v) return std::nullopt;
    stack.resize(base);
    stack.push_back(*v);
  }
  return stack.back();
}

/// Value of `term` under `env` in `alg`. Throws Error naming the offending
/// position for unknown symbols, arity mismatches and unbound variables.
Element eval_term(const Algebra& alg, const Term& term,
                  std::span<const Element> env);

struct IdentityVerdict {
  /// First violating environment in lexicographic order, if any.
  std::optional<std::vector<Element>> counterexample;
  bool holds() const noexcept { return !counterexample.has_value(); }
};

/// Evaluates both sides over all size^var_count environments.
IdentityVerdict check_identity(const Algebra& alg, const Identity& id);

/// Parses infix/prefix term syntax: `s(x,0)`, `(x*y)*x`. Names listed in
/// `var_names` are variables; other names must be symbols of `signature`.
/// Binary symbols whose names are punctuation may be written infix
/// (left-associative, one precedence level).
Term parse_term(std::string_view text, const Signature& signature,
                const std::vector<std::string>& var_names);

/// Parses `lhs = rhs`. Variables are `var_names`.
Identity parse_identity(std::string_view text, const Signature& signature,
                        std::vector<std::string> var_names);

std::string format_term(const Term& term, const Signature& signature,
                        const std::vector<std::string>& var_names = {});
std::string format_identity(const Identity& id, const Signature& signature);

}  // namespace permutab
