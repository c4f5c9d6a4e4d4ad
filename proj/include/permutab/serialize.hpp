#pragma once

#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "permutab/algebra.hpp"
#include "permutab/category.hpp"
#include "permutab/error.hpp"
#include "permutab/paperlab.hpp"
#include "permutab/relation.hpp"
#include "permutab/report.hpp"
#include "permutab/search.hpp"
#include "permutab/term.hpp"

namespace permutab {

inline constexpr int kFormatVersion = 1;

/// Malformed document. The message names the JSON pointer (or byte offset
/// for syntax errors) of the problem.
class ParseError : public Error {
 public:
  using Error::Error;
};

using DocumentPayload =
    std::variant<Algebra, BinRelation, FinCategory, MapBundle, IdentitySet,
                 SearchSpec, Report>;

/// Tagged container for every file the tools read or write. `labels` are the
/// element (relation) or morphism (category) display names; algebras carry
/// their own.
struct Document {
  DocumentPayload payload;
  std::vector<std::string> labels;

  bool operator==(const Document&) const = default;
};

/// "algebra", "relation", "category", "map-bundle", "identities",
/// "search-spec", "report".
const char* kind_name(const DocumentPayload& p);

Json to_json(const Document& doc);
Document document_from_json(const Json& j);

/// Pretty-printed JSON with a trailing newline.
std::string serialize(const Document& doc);
Document parse_document(std::string_view text);

Document fixture_document(const Fixture& f);

// Direct conversions; the *_from_json functions accept bare payloads
// (without "kind") as well as full documents of the right kind.
Json algebra_json(const Algebra& a);
Algebra algebra_from_json(const Json& j);
Json relation_json(const BinRelation& r,
                   const std::vector<std::string>& labels = {});
Json report_json(const Report& r);
Report report_from_json(const Json& j);

}  // namespace permutab
