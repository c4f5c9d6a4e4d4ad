#include "permutab/search.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

#include "permutab/error.hpp"
#include "permutab/parallel.hpp"

namespace permutab {

std::string to_string(const Predicate& p) {
  switch (p.kind) {
    case Predicate::Kind::none:
      return "none";
    case Predicate::Kind::noncongruence_preorder:
      return "has-noncongruence-preorder";
    case Predicate::Kind::nonpermuting_congruence_pair:
      return "has-nonpermuting-congruence-pair(" + std::to_string(p.n) + ")";
    case Predicate::Kind::internal_monoid:
      return "has-internal-monoid";
  }
  return "?";
}

Predicate parse_predicate(std::string_view text) {
  if (text == "none") return {Predicate::Kind::none, 2};
  if (text == "has-noncongruence-preorder")
    return {Predicate::Kind::noncongruence_preorder, 2};
  if (text == "has-internal-monoid") return {Predicate::Kind::internal_monoid, 2};
  constexpr std::string_view pair = "has-nonpermuting-congruence-pair";
  if (text.substr(0, pair.size()) == pair) {
    auto rest = text.substr(pair.size());
    if (rest.empty()) return {Predicate::Kind::nonpermuting_congruence_pair, 2};
    if (rest.size() >= 3 && rest.front() == '(' && rest.back() == ')') {
      const std::string digits(rest.substr(1, rest.size() - 2));
      if (!digits.empty() &&
          std::all_of(digits.begin(), digits.end(),
                      [](char c) { return c >= '0' && c <= '9'; })) {
        const unsigned n = static_cast<unsigned>(std::stoul(digits));
        if (n >= 2) return {Predicate::Kind::nonpermuting_congruence_pair, n};
      }
    }
  }
  throw Error("unknown predicate '" + std::string(text) + "'");
}

void validate_spec(const SearchSpec& spec) {
  if (spec.min_size < 1) throw Error("search: sizes must be at least 1");
  if (spec.min_size > spec.max_size)
    throw Error("search: size range " + std::to_string(spec.min_size) + ".." +
                std::to_string(spec.max_size) + " is empty");
  for (const auto& id : spec.theory.identities) {
    CompiledTerm(id.lhs, spec.theory.signature, id.var_count);
    CompiledTerm(id.rhs, spec.theory.signature, id.var_count);
  }
}

namespace {

constexpr Element kUnset = std::numeric_limits<Element>::max();

using Clock = std::chrono::steady_clock;

struct CompiledIdentity {
  CompiledTerm lhs;
  CompiledTerm rhs;
  std::size_t var_count;
};

/// Relabels tables by a carrier permutation.
std::vector<std::vector<Element>> relabel(
    const Signature& sig, std::size_t n,
    const std::vector<std::vector<Element>>& tables,
    const std::vector<Element>& perm) {
  std::vector<std::vector<Element>> out(tables.size());
  for (std::size_t s = 0; s < sig.size(); ++s) {
    const unsigned k = sig[s].arity;
    out[s].resize(tables[s].size());
    for (std::size_t idx = 0; idx < tables[s].size(); ++idx) {
      auto args = table_args(n, k, idx);
      for (auto& a : args) a = perm[a];
      out[s][table_index(n, args)] = perm[tables[s][idx]];
    }
  }
  return out;
}

bool is_canonical(const Signature& sig, std::size_t n,
                  const std::vector<std::vector<Element>>& tables) {
  std::vector<bool> fixed(n, false);
  for (std::size_t s = 0; s < sig.size(); ++s)
    if (sig[s].arity == 0) fixed[tables[s][0]] = true;
  std::vector<Element> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  do {
    bool ok = true;
    for (std::size_t i = 0; i < n && ok; ++i)
      if (fixed[i] && perm[i] != i) ok = false;
    if (!ok) continue;
    if (relabel(sig, n, tables, perm) < tables) return false;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return true;
}

struct Partial {
  std::vector<Algebra> models;
  bool overflow = false;  // more than `cap` models exist in this partition
  bool timed_out = false;
};

/// Depth-first table filling for one carrier size, with the first table
/// entry pinned to `first_value` (or unpinned when there are no entries).
class SizeEnumerator {
 public:
  SizeEnumerator(const SearchSpec& spec, std::size_t n,
                 const std::vector<CompiledIdentity>& ids, std::size_t cap,
                 std::optional<Clock::time_point> deadline)
      : spec_(spec), n_(n), ids_(ids), cap_(cap), deadline_(deadline) {
    const auto& sig = spec.theory.signature;
    for (std::size_t s = 0; s < sig.size(); ++s) {
      const std::size_t len = table_length(n, sig[s].arity);
      tables_.emplace_back(len, kUnset);
      for (std::size_t i = 0; i < len; ++i) slots_.emplace_back(s, i);
    }
  }

  std::size_t slot_count() const { return slots_.size(); }

  Partial run(std::optional<Element> first_value) {
    if (first_value) {
      assign(0, *first_value);
      if (consistent()) descend(1);
    } else {
      if (consistent()) descend(0);
    }
    return std::move(out_);
  }

 private:
  void assign(std::size_t slot, Element v) {
    tables_[slots_[slot].first][slots_[slot].second] = v;
  }

  bool consistent() const {
    auto lookup = [&](std::size_t s, std::span<const Element> args)
        -> std::optional<Element> {
      const Element v = tables_[s][table_index(n_, args)];
      if (v == kUnset) return std::nullopt;
      return v;
    };
    for (const auto& id : ids_) {
      const std::size_t envs = table_length(n_, id.var_count);
      for (std::size_t e = 0; e < envs; ++e) {
        const auto env = table_args(n_, id.var_count, e);
        const auto l = id.lhs.run(env, lookup);
        if (!l) continue;
        const auto r = id.rhs.run(env, lookup);
        if (r && *l != *r) return false;
      }
    }
    return true;
  }

  bool stopped() {
    if (out_.overflow || out_.timed_out) return true;
    if (deadline_ && (++ticks_ & 0xff) == 0 && Clock::now() > *deadline_)
      out_.timed_out = true;
    return out_.overflow || out_.timed_out;
  }

  void descend(std::size_t slot) {
    if (stopped()) return;
    if (slot == slots_.size()) {
      if (spec_.dedup && !is_canonical(spec_.theory.signature, n_, tables_))
        return;
      if (out_.models.size() == cap_) {
        out_.overflow = true;
        return;
      }
      out_.models.emplace_back(n_, spec_.theory.signature, tables_);
      return;
    }
    for (Element v = 0; v < n_; ++v) {
      assign(slot, v);
      if (consistent()) descend(slot + 1);
      if (stopped()) break;
    }
    tables_[slots_[slot].first][slots_[slot].second] = kUnset;
  }

  const SearchSpec& spec_;
  std::size_t n_;
  const std::vector<CompiledIdentity>& ids_;
  std::size_t cap_;
  std::optional<Clock::time_point> deadline_;
  std::vector<std::vector<Element>> tables_;
  std::vector<std::pair<std::size_t, std::size_t>> slots_;
  Partial out_;
  std::size_t ticks_ = 0;
};

struct SizeModels {
  std::vector<Algebra> models;
  bool complete = true;
};

SizeModels enumerate_size(const SearchSpec& spec, std::size_t n,
                          const std::vector<CompiledIdentity>& ids,
                          std::size_t cap,
                          std::optional<Clock::time_point> deadline,
                          unsigned workers) {
  const std::size_t slots =
      SizeEnumerator(spec, n, ids, cap, deadline).slot_count();
  std::vector<Partial> parts;
  if (slots == 0) {
    parts.push_back(SizeEnumerator(spec, n, ids, cap, deadline).run(std::nullopt));
  } else {
    // One partition per value of the first table entry; concatenating them
    // in value order reproduces the sequential order.
    parts = parallel_map(n, workers, [&](std::size_t v) {
      return SizeEnumerator(spec, n, ids, cap, deadline)
          .run(static_cast<Element>(v));
    });
  }
  SizeModels out;
  for (auto& p : parts) {
    for (auto& m : p.models) {
      if (out.models.size() == cap) {
        out.complete = false;
        break;
      }
      out.models.push_back(std::move(m));
    }
    // A partition cut short leaves a gap, so later ones cannot extend the
    // prefix.
    if (p.overflow || p.timed_out) out.complete = false;
    if (!out.complete) break;
  }
  return out;
}

std::vector<CompiledIdentity> compile_theory(const IdentitySet& theory) {
  std::vector<CompiledIdentity> ids;
  for (const auto& id : theory.identities)
    ids.push_back({CompiledTerm(id.lhs, theory.signature, id.var_count),
                   CompiledTerm(id.rhs, theory.signature, id.var_count),
                   id.var_count});
  return ids;
}

std::optional<Clock::time_point> deadline_for(const SearchLimits& limits) {
  if (!limits.time_budget) return std::nullopt;
  return Clock::now() + *limits.time_budget;
}

}  // namespace

ModelEnumeration enumerate_models(const SearchSpec& spec, unsigned workers) {
  validate_spec(spec);
  const auto ids = compile_theory(spec.theory);
  const auto deadline = deadline_for(spec.limits);
  ModelEnumeration out;
  for (std::size_t n = spec.min_size; n <= spec.max_size; ++n) {
    const std::size_t remaining = spec.limits.candidate_cap - out.models.size();
    auto size_models = enumerate_size(spec, n, ids, remaining, deadline, workers);
    out.per_size.emplace_back(n, size_models.models.size());
    for (auto& m : size_models.models) out.models.push_back(std::move(m));
    if (!size_models.complete) {
      out.complete = false;
      break;
    }
  }
  return out;
}

std::optional<SearchWitness> evaluate_predicate(
    const Algebra& alg, const Predicate& p, const EnumerationOptions& options) {
  switch (p.kind) {
    case Predicate::Kind::none:
      return SearchWitness{};
    case Predicate::Kind::noncongruence_preorder:
      for (auto& r : enumerate_compatible(alg, RelConstraint::preorder, options))
        if (!properties(r).symmetric) return SearchWitness{std::move(r)};
      return std::nullopt;
    case Predicate::Kind::nonpermuting_congruence_pair: {
      auto v = congruence_permutability_check(alg, p.n, options);
      if (v.holds) return std::nullopt;
      return SearchWitness{std::move(v)};
    }
    case Predicate::Kind::internal_monoid: {
      auto monoids = enumerate_internal_monoids(alg);
      if (monoids.empty()) return std::nullopt;
      return SearchWitness{std::move(monoids.front())};
    }
  }
  return std::nullopt;
}

bool witness_reverifies(const Algebra& alg, const Predicate& p,
                        const SearchWitness& w) {
  switch (p.kind) {
    case Predicate::Kind::none:
      return std::holds_alternative<std::monostate>(w);
    case Predicate::Kind::noncongruence_preorder: {
      const auto* r = std::get_if<BinRelation>(&w);
      if (!r || r->size() != alg.size()) return false;
      const auto props = properties(*r);
      return props.reflexive && props.transitive && !props.symmetric &&
             is_compatible(*r, alg).holds();
    }
    case Predicate::Kind::nonpermuting_congruence_pair: {
      const auto* v = std::get_if<PermutabilityVerdict>(&w);
      return v && !v->holds && v->n == p.n && witness_reverifies(alg, *v);
    }
    case Predicate::Kind::internal_monoid: {
      const auto* m = std::get_if<MonoidStructure>(&w);
      return m && m->size == alg.size() && is_internal_monoid(alg, *m);
    }
  }
  return false;
}

FindResult find_model(const SearchSpec& spec, unsigned workers) {
  validate_spec(spec);
  const auto ids = compile_theory(spec.theory);
  const auto deadline = deadline_for(spec.limits);
  FindResult result;
  std::size_t examined = 0;
  bool all_complete = true;
  for (std::size_t n = spec.min_size; n <= spec.max_size; ++n) {
    const std::size_t remaining = spec.limits.candidate_cap - examined;
    auto size_models = enumerate_size(spec, n, ids, remaining, deadline, workers);
    examined += size_models.models.size();

    SizeOutcome so{n, size_models.models.size(), false, size_models.complete};
    bool size_inconclusive = false;
    auto verdicts = parallel_map(
        size_models.models.size(), workers,
        [&](std::size_t i) -> std::optional<std::optional<SearchWitness>> {
          try {
            return evaluate_predicate(size_models.models[i], spec.predicate);
          } catch (const CapExceeded&) {
            return std::nullopt;  // this model could not be decided
          }
        });
    for (std::size_t i = 0; i < verdicts.size(); ++i) {
      if (!verdicts[i]) {
        size_inconclusive = true;
        continue;
      }
      if (*verdicts[i]) {
        so.found = true;
        result.outcome = SearchOutcome::found;
        result.model = size_models.models[i];
        result.witness = std::move(**verdicts[i]);
        break;
      }
    }
    if (size_inconclusive && !so.found) so.complete = false;
    result.sizes.push_back(so);
    if (so.found) return result;
    if (!so.complete) all_complete = false;
    if (!size_models.complete) break;
  }
  result.outcome = all_complete ? SearchOutcome::none : SearchOutcome::inconclusive;
  return result;
}

}  // namespace permutab
