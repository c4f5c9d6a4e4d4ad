#include "permutab/algebra.hpp"

#include <algorithm>
#include <limits>
#include <set>

#include "permutab/error.hpp"

namespace permutab {

Signature::Signature(std::vector<Symbol> symbols) : symbols_(std::move(symbols)) {
  std::set<std::string_view> seen;
  for (const auto& s : symbols_) {
    if (s.name.empty()) throw Error("signature: empty symbol name");
    if (!seen.insert(s.name).second)
      throw Error("signature: duplicate symbol '" + s.name + "'");
  }
}

std::optional<std::size_t> Signature::find(std::string_view name) const {
  for (std::size_t i = 0; i < symbols_.size(); ++i)
    if (symbols_[i].name == name) return i;
  return std::nullopt;
}

bool Signature::has_constants() const {
  return std::any_of(symbols_.begin(), symbols_.end(),
                     [](const Symbol& s) { return s.arity == 0; });
}

std::size_t table_length(std::size_t size, unsigned arity) {
  std::size_t n = 1;
  for (unsigned i = 0; i < arity; ++i) {
    if (size != 0 && n > std::numeric_limits<std::size_t>::max() / size)
      throw Error("table size overflow");
    n *= size;
  }
  return n;
}

std::size_t table_index(std::size_t size, std::span<const Element> args) {
  std::size_t idx = 0;
  for (Element a : args) idx = idx * size + a;
  return idx;
}

std::vector<Element> table_args(std::size_t size, unsigned arity,
                                std::size_t index) {
  std::vector<Element> args(arity);
  for (unsigned i = arity; i-- > 0;) {
    args[i] = static_cast<Element>(index % size);
    index /= size;
  }
  return args;
}

Algebra::Algebra(std::size_t size, Signature signature,
                 std::vector<std::vector<Element>> tables,
                 std::vector<std::string> labels)
    : size_(size),
      signature_(std::move(signature)),
      tables_(std::move(tables)),
      labels_(std::move(labels)) {
  if (size_ == 0) throw Error("algebra: carrier must be nonempty");
  if (tables_.size() != signature_.size())
    throw Error("algebra: expected " + std::to_string(signature_.size()) +
                " tables, got " + std::to_string(tables_.size()));
  for (std::size_t i = 0; i < tables_.size(); ++i) {
    const auto& sym = signature_[i];
    const auto want = table_length(size_, sym.arity);
    if (tables_[i].size() != want)
      throw Error("algebra: table for '" + sym.name + "' has " +
                  std::to_string(tables_[i].size()) + " entries, expected " +
                  std::to_string(want));
    for (std::size_t j = 0; j < want; ++j)
      if (tables_[i][j] >= size_)
        throw Error("algebra: table for '" + sym.name + "' entry " +
                    std::to_string(j) + " is out of range");
  }
  if (!labels_.empty() && labels_.size() != size_)
    throw Error("algebra: label count does not match carrier size");
}

std::string Algebra::label(Element e) const {
  if (e < labels_.size()) return labels_[e];
  return std::to_string(e);
}

Element Algebra::apply(std::size_t symbol, std::span<const Element> args) const {
  const auto& t = tables_.at(symbol);
  return t[table_index(size_, args)];
}

Algebra trivial_algebra(const Signature& signature) {
  std::vector<std::vector<Element>> tables(signature.size(),
                                           std::vector<Element>{0});
  return Algebra(1, signature, std::move(tables));
}

Algebra product_algebra(const Algebra& a, const Algebra& b) {
  if (!(a.signature() == b.signature()))
    throw Error("product_algebra: signature mismatch");
  const std::size_t n = a.size() * b.size();
  std::vector<std::vector<Element>> tables;
  for (std::size_t s = 0; s < a.signature().size(); ++s) {
    const unsigned k = a.signature()[s].arity;
    const std::size_t len = table_length(n, k);
    std::vector<Element> table(len);
    std::vector<Element> left(k), right(k);
    for (std::size_t idx = 0; idx < len; ++idx) {
      auto args = table_args(n, k, idx);
      for (unsigned i = 0; i < k; ++i) {
        left[i] = static_cast<Element>(args[i] / b.size());
        right[i] = static_cast<Element>(args[i] % b.size());
      }
      table[idx] = static_cast<Element>(a.apply(s, left) * b.size() +
                                        b.apply(s, right));
    }
    tables.push_back(std::move(table));
  }
  std::vector<std::string> labels;
  if (!a.labels().empty() || !b.labels().empty()) {
    for (std::size_t x = 0; x < a.size(); ++x)
      for (std::size_t y = 0; y < b.size(); ++y)
        labels.push_back("(" + a.label(static_cast<Element>(x)) + "," +
                         b.label(static_cast<Element>(y)) + ")");
  }
  return Algebra(n, a.signature(), std::move(tables), std::move(labels));
}

std::vector<Element> generated_subuniverse(const Algebra& alg,
                                           std::span<const Element> seed) {
  std::vector<bool> in(alg.size(), false);
  std::vector<Element> members;
  auto add = [&](Element e) {
    if (!in[e]) {
      in[e] = true;
      members.push_back(e);
    }
  };
  for (Element e : seed) {
    if (e >= alg.size())
      throw Error("generated_subuniverse: seed element " + std::to_string(e) +
                  " out of range");
    add(e);
  }
  for (std::size_t s = 0; s < alg.signature().size(); ++s)
    if (alg.signature()[s].arity == 0) add(alg.table(s)[0]);

  // Saturate: every tuple over the current members, until no new element.
  std::size_t known = 0;
  while (known != members.size()) {
    known = members.size();
    const auto snapshot = members;
    for (std::size_t s = 0; s < alg.signature().size(); ++s) {
      const unsigned k = alg.signature()[s].arity;
      if (k == 0) continue;
      const std::size_t count = table_length(snapshot.size(), k);
      std::vector<Element> args(k);
      for (std::size_t t = 0; t < count; ++t) {
        auto pick = table_args(snapshot.size(), k, t);
        for (unsigned i = 0; i < k; ++i) args[i] = snapshot[pick[i]];
        add(alg.apply(s, args));
      }
    }
  }
  std::sort(members.begin(), members.end());
  return members;
}

FiniteMap::FiniteMap(std::size_t domain, std::size_t codomain,
                     std::vector<Element> image)
    : domain_(domain), codomain_(codomain), image_(std::move(image)) {
  if (image_.size() != domain_)
    throw Error("map: image has " + std::to_string(image_.size()) +
                " entries, domain has " + std::to_string(domain_));
  for (Element e : image_)
    if (e >= codomain_) throw Error("map: image entry out of range");
}

FiniteMap FiniteMap::identity(std::size_t size) {
  std::vector<Element> img(size);
  for (std::size_t i = 0; i < size; ++i) img[i] = static_cast<Element>(i);
  return FiniteMap(size, size, std::move(img));
}

FiniteMap FiniteMap::constant(std::size_t domain, std::size_t codomain,
                              Element value) {
  return FiniteMap(domain, codomain, std::vector<Element>(domain, value));
}

FiniteMap compose_maps(const FiniteMap& first, const FiniteMap& second) {
  if (first.codomain() != second.domain())
    throw Error("compose_maps: codomain/domain mismatch");
  std::vector<Element> img(first.domain());
  for (std::size_t x = 0; x < first.domain(); ++x)
    img[x] = second(first(static_cast<Element>(x)));
  return FiniteMap(first.domain(), second.codomain(), std::move(img));
}

HomomorphismCheck is_homomorphism(const FiniteMap& map, const Algebra& dom,
                                  const Algebra& cod) {
  if (!(dom.signature() == cod.signature()))
    throw Error("is_homomorphism: signature mismatch");
  if (map.domain() != dom.size() || map.codomain() != cod.size())
    throw Error("is_homomorphism: map dimensions do not match carriers");
  for (std::size_t s = 0; s < dom.signature().size(); ++s) {
    const unsigned k = dom.signature()[s].arity;
    const std::size_t len = table_length(dom.size(), k);
    std::vector<Element> mapped(k);
    for (std::size_t idx = 0; idx < len; ++idx) {
      auto args = table_args(dom.size(), k, idx);
      for (unsigned i = 0; i < k; ++i) mapped[i] = map(args[i]);
      const Element lhs = map(dom.table(s)[idx]);
      const Element rhs = cod.apply(s, mapped);
      if (lhs != rhs)
        return {HomomorphismViolation{s, std::move(args), lhs, rhs}};
    }
  }
  return {};
}

}  // namespace permutab
