#include "permutab/monoid.hpp"

#include "permutab/error.hpp"

namespace permutab {

bool monoid_laws_hold(const MonoidStructure& m) {
  const auto n = static_cast<Element>(m.size);
  if (m.plus.size() != m.size * m.size || m.unit >= n) return false;
  for (Element x = 0; x < n; ++x) {
    if (m.add(m.unit, x) != x || m.add(x, m.unit) != x) return false;
    for (Element y = 0; y < n; ++y)
      for (Element z = 0; z < n; ++z)
        if (m.add(m.add(x, y), z) != m.add(x, m.add(y, z))) return false;
  }
  return true;
}

bool addition_is_homomorphism(const Algebra& alg, const MonoidStructure& m) {
  if (m.size != alg.size()) throw Error("monoid: carrier size mismatch");
  const FiniteMap plus(alg.size() * alg.size(), alg.size(), m.plus);
  return is_homomorphism(plus, product_algebra(alg, alg), alg).holds();
}

bool unit_is_homomorphism(const Algebra& alg, const MonoidStructure& m) {
  if (m.size != alg.size()) throw Error("monoid: carrier size mismatch");
  const FiniteMap unit(1, alg.size(), {m.unit});
  return is_homomorphism(unit, trivial_algebra(alg.signature()), alg).holds();
}

bool is_internal_monoid(const Algebra& alg, const MonoidStructure& m) {
  return monoid_laws_hold(m) && unit_is_homomorphism(alg, m) &&
         addition_is_homomorphism(alg, m);
}

std::vector<MonoidStructure> enumerate_internal_monoids(const Algebra& alg) {
  const std::size_t n = alg.size();
  std::vector<MonoidStructure> out;
  for (Element e = 0; e < n; ++e) {
    MonoidStructure m{n, std::vector<Element>(n * n, 0), e};
    if (!unit_is_homomorphism(alg, m)) continue;
    // Unit row and column are forced; the other (n-1)^2 entries are free.
    std::vector<std::size_t> free;
    for (Element x = 0; x < n; ++x)
      for (Element y = 0; y < n; ++y) {
        if (x == e)
          m.plus[x * n + y] = y;
        else if (y == e)
          m.plus[x * n + y] = x;
        else
          free.push_back(x * n + y);
      }
    const std::size_t combos = table_length(n, static_cast<unsigned>(free.size()));
    for (std::size_t c = 0; c < combos; ++c) {
      const auto values = table_args(n, static_cast<unsigned>(free.size()), c);
      for (std::size_t i = 0; i < free.size(); ++i) m.plus[free[i]] = values[i];
      if (monoid_laws_hold(m) && addition_is_homomorphism(alg, m))
        out.push_back(m);
    }
  }
  return out;
}

}  // namespace permutab
