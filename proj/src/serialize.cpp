#include "permutab/serialize.hpp"

#include <optional>
#include <set>

namespace permutab {

namespace {

std::string pointer_token(std::string_view key) {
  std::string out;
  for (char c : key) {
    if (c == '~')
      out += "~0";
    else if (c == '/')
      out += "~1";
    else
      out += c;
  }
  return out;
}

/// A JSON value together with its pointer, for positioned errors.
class Node {
 public:
  Node(const Json& j, std::string path) : j_(&j), path_(std::move(path)) {}

  const Json& json() const { return *j_; }
  const std::string& path() const { return path_; }

  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError("at " + (path_.empty() ? std::string("/") : path_) +
                     ": " + msg);
  }

  void expect_object() const {
    if (!j_->is_object()) fail("expected an object");
  }

  std::optional<Node> find(std::string_view key) const {
    expect_object();
    auto it = j_->find(std::string(key));
    if (it == j_->end()) return std::nullopt;
    return Node(*it, path_ + "/" + pointer_token(key));
  }

  Node at(std::string_view key) const {
    if (auto n = find(key)) return *n;
    fail("missing member \"" + std::string(key) + "\"");
  }

  std::vector<Node> items() const {
    if (!j_->is_array()) fail("expected an array");
    std::vector<Node> out;
    out.reserve(j_->size());
    for (std::size_t i = 0; i < j_->size(); ++i)
      out.emplace_back((*j_)[i], path_ + "/" + std::to_string(i));
    return out;
  }

  std::vector<std::pair<std::string, Node>> members() const {
    expect_object();
    std::vector<std::pair<std::string, Node>> out;
    for (auto it = j_->begin(); it != j_->end(); ++it)
      out.emplace_back(it.key(), Node(it.value(), path_ + "/" + pointer_token(it.key())));
    return out;
  }

  std::uint64_t as_uint() const {
    if (j_->is_number_unsigned()) return j_->get<std::uint64_t>();
    if (j_->is_number_integer() && j_->get<std::int64_t>() >= 0)
      return static_cast<std::uint64_t>(j_->get<std::int64_t>());
    fail("expected a nonnegative integer");
  }

  std::uint64_t as_uint_below(std::uint64_t bound, std::string_view what) const {
    const auto v = as_uint();
    if (v >= bound)
      fail(std::string(what) + " " + std::to_string(v) + " out of range (< " +
           std::to_string(bound) + ")");
    return v;
  }

  std::string as_string() const {
    if (!j_->is_string()) fail("expected a string");
    return j_->get<std::string>();
  }

  bool as_bool() const {
    if (!j_->is_boolean()) fail("expected a boolean");
    return j_->get<bool>();
  }

 private:
  const Json* j_;
  std::string path_;
};

std::vector<Element> elements_below(const Node& n, std::uint64_t bound,
                                    std::string_view what) {
  std::vector<Element> out;
  for (const auto& item : n.items())
    out.push_back(static_cast<Element>(item.as_uint_below(bound, what)));
  return out;
}

std::vector<std::string> labels_of(const Node& n, std::size_t size) {
  std::vector<std::string> out;
  for (const auto& item : n.items()) out.push_back(item.as_string());
  if (!out.empty() && out.size() != size)
    n.fail("expected " + std::to_string(size) + " labels, got " +
           std::to_string(out.size()));
  return out;
}

std::vector<std::string> optional_labels(const Node& n, std::size_t size) {
  if (auto l = n.find("labels")) return labels_of(*l, size);
  return {};
}

/// Checks "kind" and "version" when present.
void check_tag(const Node& n, std::string_view kind) {
  if (auto k = n.find("kind"); k && k->as_string() != kind)
    k->fail("expected kind \"" + std::string(kind) + "\", got \"" +
            k->as_string() + "\"");
  if (auto v = n.find("version"); v && v->as_uint() != kFormatVersion)
    v->fail("unsupported version " + std::to_string(v->as_uint()));
}

Json tagged(std::string_view kind) {
  Json j = Json::object();
  j["kind"] = kind;
  j["version"] = kFormatVersion;
  return j;
}

void merge(Json& into, const Json& from) {
  for (auto it = from.begin(); it != from.end(); ++it) into[it.key()] = it.value();
}

// ---- algebra ----

Json algebra_body(const Algebra& a) {
  Json j = Json::object();
  j["size"] = a.size();
  Json ops = Json::object();
  for (std::size_t i = 0; i < a.signature().size(); ++i) {
    const auto& sym = a.signature()[i];
    ops[sym.name] = {{"arity", sym.arity}, {"table", a.tables()[i]}};
  }
  j["ops"] = std::move(ops);
  if (!a.labels().empty()) j["labels"] = a.labels();
  return j;
}

Algebra parse_algebra(const Node& n) {
  check_tag(n, "algebra");
  const Node size_node = n.at("size");
  const auto size = size_node.as_uint();
  if (size == 0) size_node.fail("size must be positive");
  if (size > 0xFFFFFFFFull) size_node.fail("size too large");
  std::vector<Symbol> symbols;
  std::vector<std::vector<Element>> tables;
  for (const auto& [name, op] : n.at("ops").members()) {
    const Node arity_node = op.at("arity");
    const auto arity = arity_node.as_uint();
    if (arity > 16) arity_node.fail("arity too large");
    std::size_t len = 0;
    try {
      len = table_length(size, static_cast<unsigned>(arity));
    } catch (const Error& e) {
      arity_node.fail(e.what());
    }
    const Node table = op.at("table");
    auto entries = elements_below(table, size, "entry");
    if (entries.size() != len)
      table.fail("expected " + std::to_string(len) + " entries, got " +
                 std::to_string(entries.size()));
    symbols.push_back({name, static_cast<unsigned>(arity)});
    tables.push_back(std::move(entries));
  }
  auto labels = optional_labels(n, size);
  return Algebra(size, Signature(std::move(symbols)), std::move(tables),
                 std::move(labels));
}

// ---- relation ----

Json relation_body(const BinRelation& r, const std::vector<std::string>& labels) {
  Json j = Json::object();
  j["size"] = r.size();
  Json pairs = Json::array();
  for (auto [x, y] : r.pairs()) pairs.push_back({x, y});
  j["pairs"] = std::move(pairs);
  if (!labels.empty()) j["labels"] = labels;
  return j;
}

std::pair<BinRelation, std::vector<std::string>> parse_relation(const Node& n) {
  check_tag(n, "relation");
  const Node size_node = n.at("size");
  const auto size = size_node.as_uint();
  if (size == 0) size_node.fail("size must be positive");
  if (size > 4096) size_node.fail("size too large");
  BinRelation r(size);
  for (const auto& p : n.at("pairs").items()) {
    const auto xy = p.items();
    if (xy.size() != 2) p.fail("expected a pair [i, j]");
    r.insert(static_cast<Element>(xy[0].as_uint_below(size, "element")),
             static_cast<Element>(xy[1].as_uint_below(size, "element")));
  }
  return {std::move(r), optional_labels(n, size)};
}

// ---- category ----

Json category_body(const FinCategory& c, const std::vector<std::string>& labels) {
  Json j = Json::object();
  j["objects"] = c.objects();
  j["morphisms"] = c.morphisms();
  j["dom"] = c.dom_map();
  j["cod"] = c.cod_map();
  j["id"] = c.id_map();
  Json comp = Json::array();
  for (const auto& e : c.comp_entries()) comp.push_back({e[0], e[1], e[2]});
  j["comp"] = std::move(comp);
  if (!labels.empty()) j["labels"] = labels;
  return j;
}

std::pair<FinCategory, std::vector<std::string>> parse_category(const Node& n) {
  check_tag(n, "category");
  const auto objects = n.at("objects").as_uint();
  const Node m_node = n.at("morphisms");
  const auto morphisms = m_node.as_uint();
  if (morphisms > 4096) m_node.fail("too many morphisms");
  const Node dom_node = n.at("dom");
  const Node cod_node = n.at("cod");
  const Node id_node = n.at("id");
  auto dom = elements_below(dom_node, objects, "object");
  auto cod = elements_below(cod_node, objects, "object");
  auto id = elements_below(id_node, morphisms, "morphism");
  if (dom.size() != morphisms) dom_node.fail("expected one entry per morphism");
  if (cod.size() != morphisms) cod_node.fail("expected one entry per morphism");
  if (id.size() != objects) id_node.fail("expected one entry per object");
  FinCategory c(objects, std::move(dom), std::move(cod), std::move(id));
  std::set<std::pair<Morphism, Morphism>> seen;
  for (const auto& e : n.at("comp").items()) {
    const auto v = e.items();
    if (v.size() != 3) e.fail("expected [b, g, result]");
    const auto b = static_cast<Morphism>(v[0].as_uint_below(morphisms, "morphism"));
    const auto g = static_cast<Morphism>(v[1].as_uint_below(morphisms, "morphism"));
    const auto r = static_cast<Morphism>(v[2].as_uint_below(morphisms, "morphism"));
    if (!seen.insert({b, g}).second) e.fail("composite of this pair given twice");
    c.set_comp(b, g, r);
  }
  return {std::move(c), optional_labels(n, morphisms)};
}

// ---- map bundle ----

Json bundle_body(const MapBundle& b) {
  Json maps = Json::array();
  for (const auto& m : b.maps)
    maps.push_back({{"name", m.name},
                    {"from", m.from},
                    {"to", m.to},
                    {"domain", m.map.domain()},
                    {"codomain", m.map.codomain()},
                    {"image", m.map.image()}});
  return {{"maps", std::move(maps)}};
}

MapBundle parse_bundle(const Node& n) {
  check_tag(n, "map-bundle");
  MapBundle b;
  for (const auto& m : n.at("maps").items()) {
    const auto domain = m.at("domain").as_uint();
    const auto codomain = m.at("codomain").as_uint();
    const Node image_node = m.at("image");
    auto image = elements_below(image_node, codomain, "image entry");
    if (image.size() != domain)
      image_node.fail("expected " + std::to_string(domain) + " entries");
    b.maps.push_back({m.at("name").as_string(), m.at("from").as_string(),
                      m.at("to").as_string(),
                      FiniteMap(domain, codomain, std::move(image))});
  }
  return b;
}

// ---- identities ----

Json signature_json(const Signature& sig) {
  Json j = Json::array();
  for (const auto& s : sig) j.push_back({{"name", s.name}, {"arity", s.arity}});
  return j;
}

Signature parse_signature(const Node& n) {
  std::vector<Symbol> symbols;
  std::set<std::string> names;
  for (const auto& s : n.items()) {
    auto name = s.at("name").as_string();
    if (name.empty()) s.fail("empty symbol name");
    if (!names.insert(name).second) s.fail("duplicate symbol \"" + name + "\"");
    const Node arity = s.at("arity");
    if (arity.as_uint() > 16) arity.fail("arity too large");
    symbols.push_back({std::move(name), static_cast<unsigned>(arity.as_uint())});
  }
  return Signature(std::move(symbols));
}

std::vector<std::string> variable_names(const Identity& id) {
  if (!id.var_names.empty()) return id.var_names;
  std::vector<std::string> names;
  for (std::size_t i = 0; i < id.var_count; ++i)
    names.push_back("x" + std::to_string(i));
  return names;
}

Json identities_json(const Signature& sig, const std::vector<Identity>& ids) {
  Json j = Json::array();
  for (const auto& id : ids) {
    const auto vars = variable_names(id);
    j.push_back({{"vars", vars},
                 {"lhs", format_term(id.lhs, sig, vars)},
                 {"rhs", format_term(id.rhs, sig, vars)}});
  }
  return j;
}

std::vector<Identity> parse_identities(const Node& n, const Signature& sig) {
  std::vector<Identity> out;
  for (const auto& item : n.items()) {
    std::vector<std::string> vars;
    std::set<std::string> seen;
    for (const auto& v : item.at("vars").items()) {
      auto name = v.as_string();
      if (name.empty()) v.fail("empty variable name");
      if (sig.find(name)) v.fail("variable \"" + name + "\" is also a symbol");
      if (!seen.insert(name).second) v.fail("duplicate variable \"" + name + "\"");
      vars.push_back(std::move(name));
    }
    auto side = [&](std::string_view key) {
      const Node t = item.at(key);
      try {
        const Term term = parse_term(t.as_string(), sig, vars);
        CompiledTerm(term, sig, vars.size());
        return term;
      } catch (const ParseError&) {
        throw;
      } catch (const Error& e) {
        t.fail(e.what());
      }
    };
    Identity id;
    id.var_count = vars.size();
    id.lhs = side("lhs");
    id.rhs = side("rhs");
    id.var_names = std::move(vars);
    out.push_back(std::move(id));
  }
  return out;
}

Json identity_set_body(const IdentitySet& s) {
  return {{"signature", signature_json(s.signature)},
          {"identities", identities_json(s.signature, s.identities)}};
}

IdentitySet parse_identity_set(const Node& n) {
  check_tag(n, "identities");
  IdentitySet s;
  s.signature = parse_signature(n.at("signature"));
  s.identities = parse_identities(n.at("identities"), s.signature);
  return s;
}

// ---- search spec ----

Json spec_body(const SearchSpec& s) {
  Json j = identity_set_body(s.theory);
  j["sizes"] = {s.min_size, s.max_size};
  j["predicate"] = to_string(s.predicate);
  Json limits = {{"cap", s.limits.candidate_cap}};
  if (s.limits.time_budget) limits["time_ms"] = s.limits.time_budget->count();
  j["limits"] = std::move(limits);
  j["dedup"] = s.dedup;
  return j;
}

SearchSpec parse_spec(const Node& n) {
  check_tag(n, "search-spec");
  SearchSpec s;
  s.theory.signature = parse_signature(n.at("signature"));
  if (auto ids = n.find("identities"))
    s.theory.identities = parse_identities(*ids, s.theory.signature);
  const Node sizes_node = n.at("sizes");
  const auto sizes = sizes_node.items();
  if (sizes.size() != 2) sizes_node.fail("expected [min, max]");
  s.min_size = sizes[0].as_uint();
  s.max_size = sizes[1].as_uint();
  if (auto p = n.find("predicate")) {
    try {
      s.predicate = parse_predicate(p->as_string());
    } catch (const ParseError&) {
      throw;
    } catch (const Error& e) {
      p->fail(e.what());
    }
  }
  if (auto l = n.find("limits")) {
    if (auto cap = l->find("cap")) s.limits.candidate_cap = cap->as_uint();
    if (auto t = l->find("time_ms"))
      s.limits.time_budget = std::chrono::milliseconds(t->as_uint());
  }
  if (auto d = n.find("dedup")) s.dedup = d->as_bool();
  try {
    validate_spec(s);
  } catch (const Error& e) {
    sizes_node.fail(e.what());
  }
  return s;
}

// ---- report ----

Json report_body(const Report& r) {
  Json j = Json::object();
  j["check"] = r.check;
  j["status"] = to_string(r.status);
  j["summary"] = r.summary;
  j["critical"] = r.critical;
  j["data"] = r.data;
  Json parts = Json::array();
  for (const auto& p : r.parts) parts.push_back(report_body(p));
  j["parts"] = std::move(parts);
  return j;
}

Report parse_report(const Node& n) {
  Report r;
  r.check = n.at("check").as_string();
  const Node status = n.at("status");
  const auto s = status.as_string();
  if (s == "holds")
    r.status = Status::holds;
  else if (s == "fails")
    r.status = Status::fails;
  else if (s == "inconclusive")
    r.status = Status::inconclusive;
  else
    status.fail("unknown status \"" + s + "\"");
  if (auto summary = n.find("summary")) r.summary = summary->as_string();
  if (auto critical = n.find("critical")) r.critical = critical->as_bool();
  if (auto data = n.find("data")) r.data = data->json();
  if (auto parts = n.find("parts"))
    for (const auto& p : parts->items()) r.parts.push_back(parse_report(p));
  return r;
}

}  // namespace

const char* kind_name(const DocumentPayload& p) {
  struct Visitor {
    const char* operator()(const Algebra&) const { return "algebra"; }
    const char* operator()(const BinRelation&) const { return "relation"; }
    const char* operator()(const FinCategory&) const { return "category"; }
    const char* operator()(const MapBundle&) const { return "map-bundle"; }
    const char* operator()(const IdentitySet&) const { return "identities"; }
    const char* operator()(const SearchSpec&) const { return "search-spec"; }
    const char* operator()(const Report&) const { return "report"; }
  };
  return std::visit(Visitor{}, p);
}

Json to_json(const Document& doc) {
  Json j = tagged(kind_name(doc.payload));
  const auto& labels = doc.labels;
  const Json body = std::visit(
      [&](const auto& v) -> Json {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, Algebra>) return algebra_body(v);
        if constexpr (std::is_same_v<T, BinRelation>) return relation_body(v, labels);
        if constexpr (std::is_same_v<T, FinCategory>) return category_body(v, labels);
        if constexpr (std::is_same_v<T, MapBundle>) return bundle_body(v);
        if constexpr (std::is_same_v<T, IdentitySet>) return identity_set_body(v);
        if constexpr (std::is_same_v<T, SearchSpec>) return spec_body(v);
        if constexpr (std::is_same_v<T, Report>) return report_body(v);
      },
      doc.payload);
  merge(j, body);
  return j;
}

Document document_from_json(const Json& j) {
  const Node root(j, "");
  const auto kind = root.at("kind").as_string();
  check_tag(root, kind);
  if (kind == "algebra") return {parse_algebra(root), {}};
  if (kind == "relation") {
    auto [r, labels] = parse_relation(root);
    return {std::move(r), std::move(labels)};
  }
  if (kind == "category") {
    auto [c, labels] = parse_category(root);
    return {std::move(c), std::move(labels)};
  }
  if (kind == "map-bundle") return {parse_bundle(root), {}};
  if (kind == "identities") return {parse_identity_set(root), {}};
  if (kind == "search-spec") return {parse_spec(root), {}};
  if (kind == "report") return {parse_report(root), {}};
  root.at("kind").fail("unknown kind \"" + kind + "\"");
}

std::string serialize(const Document& doc) { return to_json(doc).dump(2) + "\n"; }

Document parse_document(std::string_view text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError("at byte " + std::to_string(e.byte) + ": malformed JSON");
  }
  return document_from_json(j);
}

Document fixture_document(const Fixture& f) {
  return std::visit(
      [&](const auto& v) -> Document {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, BinRelation> ||
                      std::is_same_v<T, FinCategory>)
          return {v, f.labels};
        else
          return {v, {}};
      },
      f.payload);
}

Json algebra_json(const Algebra& a) { return to_json({a, {}}); }

Algebra algebra_from_json(const Json& j) { return parse_algebra(Node(j, "")); }

Json relation_json(const BinRelation& r, const std::vector<std::string>& labels) {
  return to_json({r, labels});
}

Json report_json(const Report& r) { return to_json({r, {}}); }

Report report_from_json(const Json& j) {
  const Node root(j, "");
  check_tag(root, "report");
  return parse_report(root);
}

}  // namespace permutab
