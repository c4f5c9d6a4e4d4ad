#include "permutab/maltsev.hpp"

#include <algorithm>
#include <map>

#include "permutab/error.hpp"
#include "permutab/parallel.hpp"

namespace permutab {

const char* to_string(PermCondition c) {
  switch (c) {
    case PermCondition::alternating:
      return "alternating";
    case PermCondition::converse_in_power:
      return "converse-in-power";
    case PermCondition::power_in_power:
      return "power-in-power";
  }
  return "?";
}

const char* to_string(SearchOutcome o) {
  switch (o) {
    case SearchOutcome::found:
      return "found";
    case SearchOutcome::none:
      return "none";
    case SearchOutcome::inconclusive:
      return "inconclusive";
  }
  return "?";
}

namespace {

void require_n(unsigned n, const char* op) {
  if (n < 2) throw Error(std::string(op) + ": n must be at least 2");
}

std::optional<Pair> first_missing(const BinRelation& r, const BinRelation& s) {
  for (const auto& p : r.pairs())
    if (!s.contains(p.first, p.second)) return p;
  return std::nullopt;
}

/// The Hagemann conditions for one relation.
std::optional<PermutabilityWitness> hagemann_for(const BinRelation& r,
                                                 unsigned n) {
  const BinRelation lower = relation_power(r, n - 1);
  if (auto p = first_missing(converse(r), lower))
    return PermutabilityWitness{PermCondition::converse_in_power, {r}, *p, true};
  if (auto p = first_missing(relation_power(r, n), lower))
    return PermutabilityWitness{PermCondition::power_in_power, {r}, *p, true};
  return std::nullopt;
}

}  // namespace

BinRelation alternating_composite(const BinRelation& r, const BinRelation& s,
                                  unsigned n) {
  if (n == 0) throw Error("alternating_composite: need at least one factor");
  BinRelation out = r;
  for (unsigned i = 1; i < n; ++i) out = compose(out, i % 2 ? s : r);
  return out;
}

PermutabilityVerdict pair_permutes_at(const BinRelation& r,
                                      const BinRelation& s, unsigned n) {
  require_n(n, "pair_permutes_at");
  const BinRelation left = alternating_composite(r, s, n);
  const BinRelation right = alternating_composite(s, r, n);
  PermutabilityVerdict v{n, true, std::nullopt};
  if (left == right) return v;
  // First pair of the symmetric difference in lexicographic order.
  const auto size = static_cast<Element>(r.size());
  for (Element x = 0; x < size; ++x)
    for (Element y = 0; y < size; ++y)
      if (left.contains(x, y) != right.contains(x, y)) {
        v.holds = false;
        v.witness = PermutabilityWitness{PermCondition::alternating,
                                         {r, s},
                                         {x, y},
                                         left.contains(x, y)};
        return v;
      }
  return v;
}

PermutabilityVerdict hagemann_check(const Algebra& alg, unsigned n,
                                    const EnumerationOptions& options) {
  require_n(n, "hagemann_check");
  for (const auto& r :
       enumerate_compatible(alg, RelConstraint::reflexive, options)) {
    if (auto w = hagemann_for(r, n)) return {n, false, std::move(w)};
  }
  return {n, true, std::nullopt};
}

PermutabilityVerdict congruence_permutability_check(
    const Algebra& alg, unsigned n, const EnumerationOptions& options) {
  require_n(n, "congruence_permutability_check");
  const auto congruences =
      enumerate_compatible(alg, RelConstraint::equivalence, options);
  for (const auto& r : congruences)
    for (const auto& s : congruences) {
      auto v = pair_permutes_at(r, s, n);
      if (!v.holds) return v;
    }
  return {n, true, std::nullopt};
}

bool witness_reverifies(const Algebra& alg, const PermutabilityVerdict& v) {
  if (v.holds) return !v.witness.has_value();
  if (!v.witness) return false;
  const auto& w = *v.witness;
  if (w.condition == PermCondition::alternating) {
    if (w.relations.size() != 2) return false;
    for (const auto& r : w.relations)
      if (!is_congruence(r, alg)) return false;
    const auto left = alternating_composite(w.relations[0], w.relations[1], v.n);
    const auto right =
        alternating_composite(w.relations[1], w.relations[0], v.n);
    const auto [x, y] = w.pair;
    return left.contains(x, y) == w.in_first &&
           right.contains(x, y) == !w.in_first;
  }
  if (w.relations.size() != 1) return false;
  const auto& r = w.relations[0];
  if (!properties(r).reflexive || !is_compatible(r, alg).holds()) return false;
  const auto lower = relation_power(r, v.n - 1);
  const auto upper = w.condition == PermCondition::converse_in_power
                         ? converse(r)
                         : relation_power(r, v.n);
  const auto [x, y] = w.pair;
  return upper.contains(x, y) && !lower.contains(x, y);
}

std::size_t TernaryClone::TableHash::operator()(
    const std::vector<Element>& t) const noexcept {
  std::size_t h = 1469598103934665603ull;
  for (Element e : t) h = (h ^ e) * 1099511628211ull;
  return h;
}

Term TernaryClone::term(std::size_t i, const Signature& signature) const {
  const Origin& o = origins_.at(i);
  if (o.symbol < 0) return Term::variable(o.args.at(0));
  std::vector<Term> args;
  args.reserve(o.args.size());
  for (std::size_t a : o.args) args.push_back(term(a, signature));
  return Term::apply(signature[static_cast<std::size_t>(o.symbol)].name,
                     std::move(args));
}

std::optional<std::size_t> TernaryClone::find(
    const std::vector<Element>& table) const {
  auto it = index_.find(table);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

TernaryClone ternary_clone(const Algebra& alg, const CloneOptions& options) {
  const std::size_t n = alg.size();
  const std::size_t points = table_length(n, 3);
  TernaryClone clone;
  clone.carrier_ = n;

  auto add = [&](std::vector<Element> table, TernaryClone::Origin origin,
                 std::size_t gen) {
    if (clone.index_.count(table)) return;
    if (clone.ops_.size() >= options.cap)
      throw CapExceeded("ternary_clone: more than " +
                            std::to_string(options.cap) + " operations",
                        clone.ops_.size());
    clone.index_.emplace(table, clone.ops_.size());
    clone.ops_.push_back(TermOperation{3, n, std::move(table), std::nullopt});
    clone.origins_.push_back(std::move(origin));
    clone.generation_.push_back(gen);
  };

  for (std::size_t v = 0; v < 3; ++v) {
    std::vector<Element> t(points);
    for (std::size_t p = 0; p < points; ++p) t[p] = table_args(n, 3, p)[v];
    add(std::move(t), {-1, {v}}, 0);
  }
  const auto& sig = alg.signature();
  for (std::size_t s = 0; s < sig.size(); ++s)
    if (sig[s].arity == 0)
      add(std::vector<Element>(points, alg.table(s)[0]),
          {static_cast<long>(s), {}}, 0);

  struct Candidate {
    std::vector<Element> table;
    TernaryClone::Origin origin;
  };

  std::size_t frontier = 0;
  for (std::size_t gen = 1;; ++gen) {
    const std::size_t known = clone.ops_.size();
    if (frontier == known) break;
    for (std::size_t s = 0; s < sig.size(); ++s) {
      const unsigned k = sig[s].arity;
      if (k == 0) continue;
      // One task per value of the first argument; tuples are visited in
      // lexicographic order and must touch the previous layer.
      auto batches = parallel_map(known, options.workers, [&](std::size_t a0) {
        std::vector<Candidate> found;
        std::map<std::vector<Element>, bool> local;
        const std::size_t rest = table_length(known, k - 1);
        std::vector<std::size_t> idx(k);
        std::vector<Element> args(k);
        for (std::size_t r = 0; r < rest; ++r) {
          idx[0] = a0;
          std::size_t q = r;
          for (unsigned i = k; i-- > 1;) {
            idx[i] = q % known;
            q /= known;
          }
          if (*std::max_element(idx.begin(), idx.end()) < frontier) continue;
          std::vector<Element> table(points);
          for (std::size_t p = 0; p < points; ++p) {
            for (unsigned i = 0; i < k; ++i) args[i] = clone.ops_[idx[i]].table[p];
            table[p] = alg.apply(s, args);
          }
          if (clone.index_.count(table) || local.count(table)) continue;
          local.emplace(table, true);
          found.push_back({std::move(table),
                           {static_cast<long>(s),
                            std::vector<std::size_t>(idx.begin(), idx.end())}});
        }
        return found;
      });
      for (auto& batch : batches)
        for (auto& c : batch) add(std::move(c.table), std::move(c.origin), gen);
    }
    frontier = known;
  }
  return clone;
}

IdentitySet hm_identities(unsigned n) {
  require_n(n, "hm_identities");
  std::vector<Symbol> symbols;
  for (unsigned i = 1; i < n; ++i)
    symbols.push_back({"theta" + std::to_string(i), 3});
  IdentitySet set{Signature(symbols), {}};
  const std::vector<std::string> vars{"x", "y"};
  auto theta = [](unsigned i, std::size_t a, std::size_t b, std::size_t c) {
    return Term::apply("theta" + std::to_string(i),
                       {Term::variable(a), Term::variable(b), Term::variable(c)});
  };
  set.identities.push_back({2, theta(1, 0, 1, 1), Term::variable(0), vars});
  for (unsigned i = 1; i + 1 < n; ++i)
    set.identities.push_back({2, theta(i, 0, 0, 1), theta(i + 1, 0, 1, 1), vars});
  set.identities.push_back({2, theta(n - 1, 0, 0, 1), Term::variable(1), vars});
  return set;
}

Algebra chain_algebra(std::size_t carrier,
                      const std::vector<TermOperation>& chain,
                      std::vector<std::string> labels) {
  std::vector<Symbol> symbols;
  std::vector<std::vector<Element>> tables;
  for (std::size_t i = 0; i < chain.size(); ++i) {
    if (chain[i].carrier != carrier || chain[i].arity != 3)
      throw Error("chain_algebra: operation " + std::to_string(i + 1) +
                  " is not ternary on the given carrier");
    symbols.push_back({"theta" + std::to_string(i + 1), 3});
    tables.push_back(chain[i].table);
  }
  return Algebra(carrier, Signature(symbols), std::move(tables),
                 std::move(labels));
}

HmResult find_hm_terms(const TernaryClone& clone, const Algebra& alg,
                       unsigned n) {
  require_n(n, "find_hm_terms");
  const std::size_t size = clone.carrier();
  const std::size_t pairs = size * size;

  // Each clone element f is an edge from the binary operation f(x,y,y) to
  // the binary operation f(x,x,y); a chain is a path of n-1 edges from the
  // first projection to the second.
  std::map<std::vector<Element>, std::size_t> node_id;
  auto node = [&](std::vector<Element> t) {
    return node_id.emplace(std::move(t), node_id.size()).first->second;
  };
  std::vector<Element> first(pairs), second(pairs);
  for (std::size_t p = 0; p < pairs; ++p) {
    first[p] = static_cast<Element>(p / size);
    second[p] = static_cast<Element>(p % size);
  }
  const std::size_t start = node(first);
  const std::size_t goal = node(second);
  std::vector<std::size_t> tail(clone.size()), head(clone.size());
  for (std::size_t i = 0; i < clone.size(); ++i) {
    std::vector<Element> xyy(pairs), xxy(pairs);
    for (std::size_t p = 0; p < pairs; ++p) {
      const Element x = first[p], y = second[p];
      const Element a[3] = {x, y, y};
      const Element b[3] = {x, x, y};
      xyy[p] = clone[i](a);
      xxy[p] = clone[i](b);
    }
    tail[i] = node(std::move(xyy));
    head[i] = node(std::move(xxy));
  }

  // reach[k][v]: v reaches the goal in exactly k edges.
  const std::size_t steps = n - 1;
  std::vector<std::vector<bool>> reach(steps + 1,
                                       std::vector<bool>(node_id.size(), false));
  reach[0][goal] = true;
  for (std::size_t k = 1; k <= steps; ++k)
    for (std::size_t i = 0; i < clone.size(); ++i)
      if (reach[k - 1][head[i]]) reach[k][tail[i]] = true;

  HmResult result;
  result.clone_size = clone.size();
  if (!reach[steps][start]) {
    result.outcome = SearchOutcome::none;
    return result;
  }
  std::size_t at = start;
  for (std::size_t k = steps; k > 0; --k) {
    std::size_t pick = clone.size();
    for (std::size_t i = 0; i < clone.size(); ++i)
      if (tail[i] == at && reach[k - 1][head[i]]) {
        pick = i;
        break;
      }
    if (pick == clone.size())
      throw InternalInconsistency("find_hm_terms: reachable chain not found");
    TermOperation op = clone[pick];
    op.provenance = clone.term(pick, alg.signature());
    result.chain.push_back(std::move(op));
    at = head[pick];
  }
  result.outcome = SearchOutcome::found;
  return result;
}

HmResult find_hm_terms(const Algebra& alg, unsigned n,
                       const CloneOptions& options) {
  require_n(n, "find_hm_terms");
  try {
    return find_hm_terms(ternary_clone(alg, options), alg, n);
  } catch (const CapExceeded& e) {
    HmResult r;
    r.outcome = SearchOutcome::inconclusive;
    r.clone_size = e.partial();
    return r;
  }
}

DegreeResult permutability_degree(const Algebra& alg, unsigned max_n,
                                  const CloneOptions& options) {
  require_n(max_n, "permutability_degree");
  DegreeResult out;
  TernaryClone clone;
  try {
    clone = ternary_clone(alg, options);
  } catch (const CapExceeded& e) {
    out.outcome = SearchOutcome::inconclusive;
    out.clone_size = e.partial();
    return out;
  }
  out.clone_size = clone.size();
  for (unsigned n = 2; n <= max_n; ++n) {
    auto r = find_hm_terms(clone, alg, n);
    if (r.outcome == SearchOutcome::found) {
      out.outcome = SearchOutcome::found;
      out.degree = n;
      out.terms = std::move(r);
      return out;
    }
  }
  out.outcome = SearchOutcome::none;
  return out;
}

Json verdict_json(const PermutabilityVerdict& v) {
  Json j = Json::object();
  j["n"] = v.n;
  j["holds"] = v.holds;
  if (v.witness) {
    const auto& w = *v.witness;
    j["condition"] = to_string(w.condition);
    Json rels = Json::array();
    for (const auto& r : w.relations) {
      Json pairs = Json::array();
      for (auto [a, b] : r.pairs()) pairs.push_back({a, b});
      rels.push_back(pairs);
    }
    j["relations"] = rels;
    j["pair"] = {w.pair.first, w.pair.second};
    if (w.condition == PermCondition::alternating) j["in_first"] = w.in_first;
  }
  return j;
}

Report cross_validate(const Algebra& alg, unsigned max_n,
                      const CloneOptions& clone_options,
                      const EnumerationOptions& enum_options) {
  require_n(max_n, "cross_validate");
  Report report = make_report("cross-validate", Status::holds);
  report.data["max_n"] = max_n;

  std::optional<TernaryClone> clone;
  try {
    clone = ternary_clone(alg, clone_options);
    report.data["clone_size"] = clone->size();
  } catch (const CapExceeded& e) {
    report.add(make_report("ternary-clone", Status::inconclusive,
                           "clone exceeded cap after " +
                               std::to_string(e.partial()) +
                               " operations; term-side implications skipped"));
  }

  const auto preorders =
      enumerate_compatible(alg, RelConstraint::preorder, enum_options);
  std::optional<BinRelation> asymmetric;
  for (const auto& r : preorders)
    if (!properties(r).symmetric) {
      asymmetric = r;
      break;
    }

  for (unsigned n = 2; n <= max_n; ++n) {
    const auto hv = hagemann_check(alg, n, enum_options);
    const auto cv = congruence_permutability_check(alg, n, enum_options);
    const std::string at = " at n=" + std::to_string(n);

    if (clone) {
      const auto hm = find_hm_terms(*clone, alg, n);
      const bool found = hm.outcome == SearchOutcome::found;
      Report r = make_report("terms=>relational" + at,
                             !found || (hv.holds && cv.holds),
                             found ? "chain found" : "no chain");
      if (!r.holds()) {
        r.critical = true;
        r.data["hagemann"] = verdict_json(hv);
        r.data["congruences"] = verdict_json(cv);
      }
      report.add(std::move(r));
    }

    Report hc = make_report("hagemann=>congruences" + at,
                            !hv.holds || cv.holds,
                            hv.holds ? "relational conditions hold"
                                     : "relational conditions fail");
    if (!hc.holds()) {
      hc.critical = true;
      hc.data["congruences"] = verdict_json(cv);
    }
    report.add(std::move(hc));

    Report hp = make_report("hagemann=>preorders-symmetric" + at,
                            !hv.holds || !asymmetric.has_value());
    if (!hp.holds()) {
      hp.critical = true;
      hp.summary = "asymmetric preorder " +
                   format_relation(*asymmetric, alg.labels());
    } else if (!hv.holds && asymmetric) {
      hp.summary = "hagemann fails; asymmetric preorder " +
                   format_relation(*asymmetric, alg.labels()) + " exists";
    }
    report.add(std::move(hp));
  }
  return report;
}

}  // namespace permutab
