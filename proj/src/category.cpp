#include "permutab/category.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>

#include "permutab/error.hpp"

namespace permutab {

FinCategory::FinCategory(std::size_t objects, std::vector<Object> dom,
                         std::vector<Object> cod, std::vector<Morphism> id)
    : objects_(objects),
      dom_(std::move(dom)),
      cod_(std::move(cod)),
      id_(std::move(id)),
      comp_(dom_.size() * dom_.size()) {
  if (cod_.size() != dom_.size())
    throw Error("category: dom and cod have different lengths");
  if (id_.size() != objects_)
    throw Error("category: id must have one entry per object");
  for (std::size_t f = 0; f < dom_.size(); ++f)
    if (dom_[f] >= objects_ || cod_[f] >= objects_)
      throw Error("category: morphism " + std::to_string(f) +
                  " has an endpoint out of range");
  for (Morphism i : id_)
    if (i >= dom_.size()) throw Error("category: identity out of range");
}

void FinCategory::set_comp(Morphism b, Morphism g, Morphism result) {
  if (b >= morphisms() || g >= morphisms() || result >= morphisms())
    throw Error("category: composite (" + std::to_string(b) + "," +
                std::to_string(g) + ") -> " + std::to_string(result) +
                " out of range");
  comp_[b * morphisms() + g] = result;
}

void FinCategory::clear_comp(Morphism b, Morphism g) {
  if (b >= morphisms() || g >= morphisms())
    throw Error("category: composite index out of range");
  comp_[b * morphisms() + g].reset();
}

std::vector<std::array<Morphism, 3>> FinCategory::comp_entries() const {
  std::vector<std::array<Morphism, 3>> out;
  const auto m = static_cast<Morphism>(morphisms());
  for (Morphism b = 0; b < m; ++b)
    for (Morphism g = 0; g < m; ++g)
      if (auto r = comp(b, g)) out.push_back({b, g, *r});
  return out;
}

namespace {

/// Shared walk over the category laws; `sink` receives each violation and
/// returns false to stop early.
void scan_laws(const FinCategory& c,
               const std::function<bool(std::string)>& sink) {
  const auto m = static_cast<Morphism>(c.morphisms());
  const auto objects = static_cast<Object>(c.objects());
  auto ms = [](Morphism f) { return std::to_string(f); };

  for (Object o = 0; o < objects; ++o) {
    const Morphism i = c.id(o);
    if (c.dom(i) != o || c.cod(i) != o)
      if (!sink("identity " + ms(i) + " of object " + std::to_string(o) +
                " is not an endomorphism of it"))
        return;
  }
  for (Morphism b = 0; b < m; ++b)
    for (Morphism g = 0; g < m; ++g) {
      const bool composable = c.cod(b) == c.dom(g);
      const auto r = c.comp(b, g);
      if (composable && !r) {
        if (!sink("composite of composable pair (" + ms(b) + "," + ms(g) +
                  ") is undefined"))
          return;
      } else if (!composable && r) {
        if (!sink("composite defined on non-composable pair (" + ms(b) + "," +
                  ms(g) + ")"))
          return;
      } else if (r && (c.dom(*r) != c.dom(b) || c.cod(*r) != c.cod(g))) {
        if (!sink("composite (" + ms(b) + "," + ms(g) + ") -> " + ms(*r) +
                  " has wrong endpoints"))
          return;
      }
    }
  for (Morphism f = 0; f < m; ++f) {
    if (c.dom(f) >= objects || c.cod(f) >= objects) continue;
    if (c.comp(c.id(c.dom(f)), f) != f)
      if (!sink("left unit law fails at " + ms(f))) return;
    if (c.comp(f, c.id(c.cod(f))) != f)
      if (!sink("right unit law fails at " + ms(f))) return;
  }
  for (Morphism b = 0; b < m; ++b)
    for (Morphism g = 0; g < m; ++g) {
      const auto bg = c.comp(b, g);
      if (!bg || c.cod(b) != c.dom(g)) continue;
      for (Morphism h = 0; h < m; ++h) {
        if (c.cod(g) != c.dom(h)) continue;
        const auto gh = c.comp(g, h);
        if (!gh) continue;
        if (c.comp(*bg, h) != c.comp(b, *gh))
          if (!sink("associativity fails at (" + ms(b) + "," + ms(g) + "," +
                    ms(h) + ")"))
            return;
      }
    }
}

void require_valid(const FinCategory& c, const char* op) {
  if (!is_valid_category(c))
    throw Error(std::string(op) + ": invalid category (" +
                category_violations(c).front() + ")");
}

}  // namespace

std::vector<std::string> category_violations(const FinCategory& c) {
  std::vector<std::string> out;
  scan_laws(c, [&](std::string v) {
    out.push_back(std::move(v));
    return true;
  });
  return out;
}

bool is_valid_category(const FinCategory& c) {
  bool ok = true;
  scan_laws(c, [&](std::string) {
    ok = false;
    return false;
  });
  return ok;
}

Report validate_category(const FinCategory& c) {
  const auto violations = category_violations(c);
  Report r = make_report("validate-category", violations.empty(),
                         violations.empty()
                             ? "all category laws hold"
                             : std::to_string(violations.size()) +
                                   " violation(s)");
  for (const auto& v : violations)
    r.add(make_report("law", Status::fails, v));
  r.data["violations"] = violations;
  return r;
}

bool is_thin(const FinCategory& c) {
  require_valid(c, "is_thin");
  std::map<std::pair<Object, Object>, Morphism> seen;
  for (Morphism f = 0; f < c.morphisms(); ++f)
    if (!seen.emplace(std::make_pair(c.dom(f), c.cod(f)), f).second)
      return false;
  return true;
}

FinCategory preorder_to_category(const BinRelation& r) {
  const auto p = properties(r);
  if (!p.reflexive || !p.transitive)
    throw Error("preorder_to_category: relation is not reflexive and transitive");
  const auto pairs = r.pairs();
  const std::size_t n = r.size();
  std::vector<Object> dom, cod;
  std::vector<Morphism> id(n);
  std::map<Pair, Morphism> index;
  for (const auto& [x, y] : pairs) {
    index[{x, y}] = static_cast<Morphism>(dom.size());
    dom.push_back(x);
    cod.push_back(y);
  }
  for (std::size_t o = 0; o < n; ++o)
    id[o] = index.at({static_cast<Element>(o), static_cast<Element>(o)});
  FinCategory c(n, std::move(dom), std::move(cod), std::move(id));
  for (const auto& [x, y] : pairs)
    for (const auto& [y2, z] : pairs)
      if (y == y2) c.set_comp(index.at({x, y}), index.at({y2, z}), index.at({x, z}));
  return c;
}

BinRelation category_to_relation(const FinCategory& c) {
  if (!is_thin(c)) throw Error("category_to_relation: category is not thin");
  BinRelation r(c.objects());
  for (Morphism f = 0; f < c.morphisms(); ++f) r.insert(c.dom(f), c.cod(f));
  return r;
}

BinRelation composability_relation(const FinCategory& c) {
  require_valid(c, "composability_relation");
  BinRelation s(c.morphisms());
  for (const auto& [b, g, a] : c.comp_entries()) s.insert(b, a);
  return s;
}

Report s_properties(const FinCategory& c) {
  const BinRelation s = composability_relation(c);
  const auto p = properties(s);
  if (!p.reflexive || !p.transitive)
    throw InternalInconsistency(
        "s_properties: S fails reflexivity or transitivity on a valid category");
  Report r = make_report("s-properties", Status::holds,
                         std::string("S is reflexive and transitive; ") +
                             (p.symmetric ? "symmetric" : "not symmetric"));
  r.data["reflexive"] = p.reflexive;
  r.data["transitive"] = p.transitive;
  r.data["symmetric"] = p.symmetric;
  return r;
}

std::optional<CancellationWitness> left_cancellation_witness(
    const FinCategory& c) {
  require_valid(c, "has_left_cancellation");
  const auto m = static_cast<Morphism>(c.morphisms());
  for (Morphism g = 0; g < m; ++g)
    for (Morphism b = 0; b < m; ++b) {
      if (c.cod(b) != c.dom(g)) continue;
      for (Morphism d = 0; d < b; ++d) {
        if (c.cod(d) != c.dom(g)) continue;
        if (c.comp(b, g) == c.comp(d, g)) return CancellationWitness{g, b, d};
      }
    }
  return std::nullopt;
}

Report has_left_cancellation(const FinCategory& c) {
  const auto w = left_cancellation_witness(c);
  Report r = make_report("left-cancellation", !w.has_value());
  if (w) {
    r.summary = "g after b equals g after d with g=" + std::to_string(w->g) +
                ", b=" + std::to_string(w->b) + ", d=" + std::to_string(w->d);
    r.data["witness"] = {{"g", w->g}, {"b", w->b}, {"d", w->d}};
  }
  return r;
}

std::variant<InversionMap, GroupoidFailure> groupoidify(const FinCategory& c) {
  const BinRelation s = composability_relation(c);
  for (const auto& [b, a] : s.pairs())
    if (!s.contains(a, b)) return GroupoidFailure{b, a};

  // With S symmetric, (f, id(dom f)) in S gives a right inverse, and the
  // mirror argument a left inverse; in finite sets both are plain lookups.
  const auto m = static_cast<Morphism>(c.morphisms());
  InversionMap map{std::vector<Morphism>(m)};
  for (Morphism f = 0; f < m; ++f) {
    std::optional<Morphism> right, left;
    for (Morphism g = 0; g < m && !right; ++g)
      if (c.comp(f, g) == c.id(c.dom(f))) right = g;
    for (Morphism g = 0; g < m && !left; ++g)
      if (c.comp(g, f) == c.id(c.cod(f))) left = g;
    if (!right || !left)
      throw InternalInconsistency("groupoidify: S is symmetric but morphism " +
                                  std::to_string(f) + " lacks an inverse");
    if (*right != *left)
      throw InternalInconsistency("groupoidify: left and right inverses of " +
                                  std::to_string(f) + " differ");
    map.inv[f] = *right;
  }
  if (!inversion_map_valid(c, map))
    throw InternalInconsistency("groupoidify: inversion map invalid");
  return map;
}

bool is_groupoid(const FinCategory& c) {
  require_valid(c, "is_groupoid");
  const auto m = static_cast<Morphism>(c.morphisms());
  for (Morphism f = 0; f < m; ++f) {
    bool has_inverse = false;
    for (Morphism g = 0; g < m && !has_inverse; ++g)
      has_inverse = c.comp(f, g) == c.id(c.dom(f)) &&
                    c.comp(g, f) == c.id(c.cod(f));
    if (!has_inverse) return false;
  }
  return true;
}

bool inversion_map_valid(const FinCategory& c, const InversionMap& map) {
  if (map.inv.size() != c.morphisms()) return false;
  for (Morphism f = 0; f < c.morphisms(); ++f) {
    const Morphism g = map.inv[f];
    if (g >= c.morphisms()) return false;
    if (c.comp(f, g) != c.id(c.dom(f))) return false;
    if (c.comp(g, f) != c.id(c.cod(f))) return false;
  }
  return true;
}

FinCategory monoid_category(std::size_t n, const std::vector<Element>& table,
                            Element unit) {
  if (table.size() != n * n || unit >= n)
    throw Error("monoid_category: table or unit does not fit carrier");
  FinCategory c(1, std::vector<Object>(n, 0), std::vector<Object>(n, 0),
                {static_cast<Morphism>(unit)});
  for (Morphism b = 0; b < n; ++b)
    for (Morphism g = 0; g < n; ++g) c.set_comp(b, g, table[b * n + g]);
  return c;
}

FinCategory discrete_category(std::size_t objects) {
  std::vector<Object> ends(objects);
  std::iota(ends.begin(), ends.end(), 0);
  std::vector<Morphism> id(ends.begin(), ends.end());
  FinCategory c(objects, ends, ends, id);
  for (Morphism o = 0; o < objects; ++o) c.set_comp(o, o, o);
  return c;
}

namespace {

/// Encoding used for canonical comparison: non-identity endpoints, then the
/// full composition table (undefined entries as M).
std::vector<std::uint32_t> encode(const FinCategory& c) {
  std::vector<std::uint32_t> code;
  const std::size_t o = c.objects(), m = c.morphisms();
  for (std::size_t f = o; f < m; ++f) code.push_back(c.dom(static_cast<Morphism>(f)));
  for (std::size_t f = o; f < m; ++f) code.push_back(c.cod(static_cast<Morphism>(f)));
  for (Morphism b = 0; b < m; ++b)
    for (Morphism g = 0; g < m; ++g)
      code.push_back(c.comp(b, g).value_or(static_cast<Morphism>(m)));
  return code;
}

bool is_canonical(const FinCategory& c) {
  const std::size_t o = c.objects(), m = c.morphisms(), k = m - o;
  const auto code = encode(c);
  std::vector<Object> sigma(o);
  std::iota(sigma.begin(), sigma.end(), 0);
  do {
    std::vector<std::size_t> pi(k);
    std::iota(pi.begin(), pi.end(), 0);
    do {
      // Relabel: object x -> sigma[x]; identity x -> sigma[x];
      // non-identity o+i -> o+pi[i].
      auto mor = [&](Morphism f) -> Morphism {
        return f < o ? sigma[f] : static_cast<Morphism>(o + pi[f - o]);
      };
      std::vector<Object> dom(m), cod(m);
      for (Morphism f = 0; f < m; ++f) {
        dom[mor(f)] = sigma[c.dom(f)];
        cod[mor(f)] = sigma[c.cod(f)];
      }
      std::vector<Morphism> id(o);
      std::iota(id.begin(), id.end(), 0);
      FinCategory image(o, dom, cod, id);
      for (const auto& [b, g, r] : c.comp_entries())
        image.set_comp(mor(b), mor(g), mor(r));
      if (encode(image) < code) return false;
    } while (std::next_permutation(pi.begin(), pi.end()));
  } while (std::next_permutation(sigma.begin(), sigma.end()));
  return true;
}

}  // namespace

std::vector<FinCategory> enumerate_categories(std::size_t max_morphisms) {
  std::vector<FinCategory> out;
  for (std::size_t m = 1; m <= max_morphisms; ++m)
    for (std::size_t o = 1; o <= m; ++o) {
      const std::size_t k = m - o;
      std::vector<Morphism> id(o);
      std::iota(id.begin(), id.end(), 0);
      std::vector<FinCategory> found;
      // Endpoints of the non-identities, as a base-o counter.
      const std::size_t assignments = table_length(o, static_cast<unsigned>(2 * k));
      for (std::size_t a = 0; a < assignments; ++a) {
        std::vector<Object> dom(m), cod(m);
        std::iota(dom.begin(), dom.begin() + static_cast<long>(o), 0);
        std::iota(cod.begin(), cod.begin() + static_cast<long>(o), 0);
        std::size_t rest = a;
        for (std::size_t i = 0; i < k; ++i) {
          dom[o + i] = static_cast<Object>(rest % o);
          rest /= o;
          cod[o + i] = static_cast<Object>(rest % o);
          rest /= o;
        }
        FinCategory c(o, dom, cod, id);
        std::vector<std::pair<Morphism, Morphism>> open;
        for (Morphism b = 0; b < m; ++b)
          for (Morphism g = 0; g < m; ++g) {
            if (cod[b] != dom[g]) continue;
            if (b < o)
              c.set_comp(b, g, g);
            else if (g < o)
              c.set_comp(b, g, b);
            else
              open.emplace_back(b, g);
          }
        std::vector<std::vector<Morphism>> choices;
        for (auto [b, g] : open) {
          std::vector<Morphism> opts;
          for (Morphism f = 0; f < m; ++f)
            if (dom[f] == dom[b] && cod[f] == cod[g]) opts.push_back(f);
          choices.push_back(std::move(opts));
        }
        std::function<void(std::size_t)> fill = [&](std::size_t i) {
          if (i == open.size()) {
            if (is_valid_category(c) && is_canonical(c)) found.push_back(c);
            return;
          }
          for (Morphism f : choices[i]) {
            c.set_comp(open[i].first, open[i].second, f);
            fill(i + 1);
          }
        };
        bool feasible = std::none_of(choices.begin(), choices.end(),
                                     [](const auto& v) { return v.empty(); });
        if (feasible) fill(0);
      }
      std::sort(found.begin(), found.end(),
                [](const FinCategory& x, const FinCategory& y) {
                  return encode(x) < encode(y);
                });
      for (auto& c : found) out.push_back(std::move(c));
    }
  return out;
}

}  // namespace permutab
