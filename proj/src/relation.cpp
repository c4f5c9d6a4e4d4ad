#include "permutab/relation.hpp"

#include <algorithm>
#include <bit>

#include "permutab/error.hpp"
#include "permutab/parallel.hpp"

namespace permutab {

BinRelation::BinRelation(std::size_t size) : size_(size), bits_(size * size, 0) {}

BinRelation::BinRelation(std::size_t size, const std::vector<Pair>& pairs)
    : BinRelation(size) {
  for (auto [x, y] : pairs) insert(x, y);
}

BinRelation BinRelation::diagonal(std::size_t size) {
  BinRelation r(size);
  for (std::size_t i = 0; i < size; ++i)
    r.insert(static_cast<Element>(i), static_cast<Element>(i));
  return r;
}

BinRelation BinRelation::full(std::size_t size) {
  BinRelation r(size);
  std::fill(r.bits_.begin(), r.bits_.end(), 1);
  return r;
}

BinRelation BinRelation::from_mask(std::size_t size, std::uint64_t mask) {
  if (size * size > 64) throw Error("from_mask: carrier too large for a mask");
  BinRelation r(size);
  for (std::size_t b = 0; b < size * size; ++b) r.bits_[b] = (mask >> b) & 1u;
  return r;
}

void BinRelation::insert(Element x, Element y) {
  if (x >= size_ || y >= size_)
    throw Error("relation: pair (" + std::to_string(x) + "," +
                std::to_string(y) + ") out of range for carrier of size " +
                std::to_string(size_));
  bits_[x * size_ + y] = 1;
}

void BinRelation::erase(Element x, Element y) {
  if (x >= size_ || y >= size_) throw Error("relation: pair out of range");
  bits_[x * size_ + y] = 0;
}

std::vector<Pair> BinRelation::pairs() const {
  std::vector<Pair> out;
  for (std::size_t b = 0; b < bits_.size(); ++b)
    if (bits_[b])
      out.emplace_back(static_cast<Element>(b / size_),
                       static_cast<Element>(b % size_));
  return out;
}

std::size_t BinRelation::count() const {
  return static_cast<std::size_t>(std::count(bits_.begin(), bits_.end(), 1));
}

std::uint64_t BinRelation::mask() const {
  if (bits_.size() > 64) throw Error("mask: carrier too large for a mask");
  std::uint64_t m = 0;
  for (std::size_t b = 0; b < bits_.size(); ++b)
    if (bits_[b]) m |= std::uint64_t{1} << b;
  return m;
}

namespace {

void require_same_size(const BinRelation& r, const BinRelation& s,
                       const char* op) {
  if (r.size() != s.size())
    throw Error(std::string(op) + ": relations on carriers of size " +
                std::to_string(r.size()) + " and " + std::to_string(s.size()));
}

}  // namespace

BinRelation compose(const BinRelation& r, const BinRelation& s) {
  require_same_size(r, s, "compose");
  const auto n = static_cast<Element>(r.size());
  BinRelation out(n);
  for (Element x = 0; x < n; ++x)
    for (Element y = 0; y < n; ++y) {
      if (!r.contains(x, y)) continue;
      for (Element z = 0; z < n; ++z)
        if (s.contains(y, z)) out.insert(x, z);
    }
  return out;
}

BinRelation converse(const BinRelation& r) {
  BinRelation out(r.size());
  for (auto [x, y] : r.pairs()) out.insert(y, x);
  return out;
}

BinRelation relation_power(const BinRelation& r, unsigned n) {
  if (n == 0) throw Error("relation_power: exponent must be at least 1");
  BinRelation out = r;
  for (unsigned i = 1; i < n; ++i) out = compose(out, r);
  return out;
}

RelProperties properties(const BinRelation& r) {
  const auto n = static_cast<Element>(r.size());
  RelProperties p{true, true, true};
  for (Element x = 0; x < n; ++x) {
    if (!r.contains(x, x)) p.reflexive = false;
    for (Element y = 0; y < n; ++y) {
      if (r.contains(x, y) && !r.contains(y, x)) p.symmetric = false;
      if (!r.contains(x, y)) continue;
      for (Element z = 0; z < n; ++z)
        if (r.contains(y, z) && !r.contains(x, z)) p.transitive = false;
    }
  }
  return p;
}

bool is_subrelation(const BinRelation& r, const BinRelation& s) {
  require_same_size(r, s, "is_subrelation");
  for (auto [x, y] : r.pairs())
    if (!s.contains(x, y)) return false;
  return true;
}

BinRelation transitive_closure(const BinRelation& r) {
  BinRelation cur = r;
  for (;;) {
    BinRelation next = relation_union(cur, compose(cur, cur));
    if (next == cur) return cur;
    cur = std::move(next);
  }
}

BinRelation relation_union(const BinRelation& r, const BinRelation& s) {
  require_same_size(r, s, "relation_union");
  BinRelation out = r;
  for (auto [x, y] : s.pairs()) out.insert(x, y);
  return out;
}

BinRelation relation_intersection(const BinRelation& r, const BinRelation& s) {
  require_same_size(r, s, "relation_intersection");
  BinRelation out(r.size());
  for (auto [x, y] : r.pairs())
    if (s.contains(x, y)) out.insert(x, y);
  return out;
}

namespace {

/// Applies every operation componentwise to every tuple of pairs of r.
/// With `grow` null, returns the first result outside r; otherwise inserts
/// every such result into *grow.
std::optional<CompatibilityViolation> scan_operations(
    const BinRelation& r, const Algebra& alg, BinRelation* grow) {
  const auto pairs = r.pairs();
  for (std::size_t s = 0; s < alg.signature().size(); ++s) {
    const unsigned k = alg.signature()[s].arity;
    const std::size_t tuples = table_length(pairs.size(), k);
    std::vector<Element> left(k), right(k);
    for (std::size_t t = 0; t < tuples; ++t) {
      std::size_t rest = t;
      for (unsigned i = k; i-- > 0;) {
        const auto& p = pairs[rest % pairs.size()];
        rest /= pairs.size();
        left[i] = p.first;
        right[i] = p.second;
      }
      const Element a = alg.apply(s, left);
      const Element b = alg.apply(s, right);
      if (r.contains(a, b)) continue;
      if (grow) {
        grow->insert(a, b);
        continue;
      }
      CompatibilityViolation v;
      v.symbol = s;
      for (unsigned i = 0; i < k; ++i) v.args.emplace_back(left[i], right[i]);
      v.result = {a, b};
      return v;
    }
  }
  return std::nullopt;
}

}  // namespace

CompatibilityCheck is_compatible(const BinRelation& r, const Algebra& alg) {
  if (r.size() != alg.size())
    throw Error("is_compatible: relation carrier size " +
                std::to_string(r.size()) + " vs algebra size " +
                std::to_string(alg.size()));
  return {scan_operations(r, alg, nullptr)};
}

bool is_congruence(const BinRelation& r, const Algebra& alg) {
  const auto p = properties(r);
  return p.reflexive && p.symmetric && p.transitive &&
         is_compatible(r, alg).holds();
}

BinRelation congruence_generated(const Algebra& alg, const BinRelation& r) {
  if (r.size() != alg.size())
    throw Error("congruence_generated: relation carrier size " +
                std::to_string(r.size()) + " vs algebra size " +
                std::to_string(alg.size()));
  BinRelation cur = relation_union(r, BinRelation::diagonal(alg.size()));
  for (;;) {
    BinRelation next = relation_union(cur, converse(cur));
    next = transitive_closure(next);
    BinRelation grown = next;
    scan_operations(next, alg, &grown);
    if (grown == cur) return cur;
    cur = std::move(grown);
  }
}

std::vector<BinRelation> enumerate_compatible(const Algebra& alg,
                                              RelConstraint constraint,
                                              const EnumerationOptions& options) {
  const std::size_t n = alg.size();
  if (n > options.max_carrier)
    throw CapExceeded("enumerate_compatible: carrier of size " +
                          std::to_string(n) + " exceeds enumeration cap " +
                          std::to_string(options.max_carrier),
                      0);
  const std::size_t bits = n * n;
  if (bits > 30)
    throw CapExceeded("enumerate_compatible: 2^" + std::to_string(bits) +
                          " candidates is beyond enumeration",
                      0);

  std::uint64_t diag = 0;
  for (std::size_t i = 0; i < n; ++i) diag |= std::uint64_t{1} << (i * n + i);
  const bool need_diag = constraint != RelConstraint::any;

  // Candidates as masks, in (pair count, mask) order.
  std::vector<std::uint64_t> masks;
  if (need_diag) {
    std::vector<unsigned> free_bits;
    for (unsigned b = 0; b < bits; ++b)
      if (!((diag >> b) & 1u)) free_bits.push_back(b);
    const std::uint64_t combos = std::uint64_t{1} << free_bits.size();
    masks.reserve(combos);
    for (std::uint64_t c = 0; c < combos; ++c) {
      std::uint64_t m = diag;
      for (std::size_t i = 0; i < free_bits.size(); ++i)
        if ((c >> i) & 1u) m |= std::uint64_t{1} << free_bits[i];
      masks.push_back(m);
    }
  } else {
    const std::uint64_t combos = std::uint64_t{1} << bits;
    masks.reserve(combos);
    for (std::uint64_t m = 0; m < combos; ++m) masks.push_back(m);
  }
  std::sort(masks.begin(), masks.end(), [](std::uint64_t a, std::uint64_t b) {
    const int pa = std::popcount(a), pb = std::popcount(b);
    return pa != pb ? pa < pb : a < b;
  });

  auto accept = [&](std::uint64_t m) {
    const BinRelation r = BinRelation::from_mask(n, m);
    if (constraint == RelConstraint::preorder ||
        constraint == RelConstraint::equivalence) {
      const auto p = properties(r);
      if (!p.transitive) return false;
      if (constraint == RelConstraint::equivalence && !p.symmetric)
        return false;
    }
    return is_compatible(r, alg).holds();
  };

  const std::size_t chunk = 1024;
  const std::size_t tasks = (masks.size() + chunk - 1) / chunk;
  auto parts = parallel_map(tasks, options.workers, [&](std::size_t t) {
    std::vector<std::uint64_t> kept;
    const std::size_t end = std::min(masks.size(), (t + 1) * chunk);
    for (std::size_t i = t * chunk; i < end; ++i)
      if (accept(masks[i])) kept.push_back(masks[i]);
    return kept;
  });

  std::vector<BinRelation> out;
  for (const auto& part : parts)
    for (std::uint64_t m : part) out.push_back(BinRelation::from_mask(n, m));
  return out;
}

std::string format_pair(const Pair& p, const std::vector<std::string>& labels) {
  auto name = [&](Element e) {
    return e < labels.size() ? labels[e] : std::to_string(e);
  };
  return "(" + name(p.first) + "," + name(p.second) + ")";
}

std::string format_relation(const BinRelation& r,
                            const std::vector<std::string>& labels) {
  std::string out = "{";
  bool first = true;
  for (const auto& p : r.pairs()) {
    if (!first) out += ", ";
    first = false;
    out += format_pair(p, labels);
  }
  return out + "}";
}

}  // namespace permutab
