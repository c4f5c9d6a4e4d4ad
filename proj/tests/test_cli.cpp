#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "permutab/cli.hpp"
#include "permutab/paperlab.hpp"
#include "permutab/serialize.hpp"

using namespace permutab;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "permutab-cli-tests";
  fs::create_directories(dir);
  return dir / name;
}

std::string write(const std::string& name, const std::string& text) {
  const fs::path p = scratch(name);
  std::ofstream(p) << text;
  return p.string();
}

std::string slurp(const std::string& path) {
  std::ifstream f(path);
  return {std::istreambuf_iterator<char>(f), {}};
}

struct EnvCap {
  explicit EnvCap(const char* v) { ::setenv("PERMUTAB_CAP", v, 1); }
  ~EnvCap() { ::unsetenv("PERMUTAB_CAP"); }
};

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("usage errors") {
  CHECK(run({}).code == cli::kUsage);
  CHECK(run({"frobnicate"}).code == cli::kUsage);
  CHECK(run({"hagemann"}).code == cli::kUsage);
  CHECK(run({"hagemann", "--algebra", "fixture:nope"}).code == cli::kUsage);
  CHECK(run({"hagemann", "--algebra", "/no/such/file.json"}).code == cli::kUsage);
  const Run pow = run({"relcalc", "power", "--rel", "fixture:rel-R", "--n", "0"});
  CHECK(pow.code == cli::kUsage);
  CHECK_FALSE(pow.err.empty());
  CHECK(run({"--help"}).code == cli::kHolds);
}

TEST_CASE("malformed input names the position") {
  const auto path = write("bad.json", R"j({"kind":"algebra","size":2,
    "ops":{"*":{"arity":2,"table":[0,1,5,0]}}})j");
  const Run r = run({"hagemann", "--algebra", path});
  CHECK(r.code == cli::kUsage);
  CHECK(r.err.find("/ops/*/table/2") != std::string::npos);
}

TEST_CASE("identity checks") {
  CHECK(run({"check-identities", "--algebra", "fixture:impl-X", "--identities",
             "fixture:identities-implication"})
            .code == cli::kHolds);
  const Run r = run({"check-identities", "--algebra", "fixture:impl-X",
                     "--identities", "fixture:identities-subtraction"});
  CHECK(r.code != cli::kHolds);
}

TEST_CASE("hagemann witness on A") {
  const Run r = run({"hagemann", "--algebra", "fixture:subtr-A", "--n", "3",
                     "--json"});
  CHECK(r.code == cli::kFails);
  const Report rep = report_from_json(Json::parse(r.out));
  CHECK_FALSE(rep.holds());
  CHECK(r.out.find("converse-in-power") != std::string::npos);
  const Run text = run({"hagemann", "--algebra", "fixture:subtr-A", "--n", "3"});
  CHECK(text.out.find("(b,a)") != std::string::npos);
}

TEST_CASE("degrees") {
  const Run x = run({"degree", "--algebra", "fixture:impl-X", "--json"});
  CHECK(x.code == cli::kHolds);
  CHECK(Json::parse(x.out)["data"]["degree"] == 3);
  CHECK(run({"degree", "--algebra", "fixture:subtr-A", "--max-n", "6"}).code ==
        cli::kFails);
  CHECK(run({"hm-terms", "--algebra", "fixture:perm-Z2", "--n", "2"}).code ==
        cli::kHolds);
}

TEST_CASE("caps") {
  CHECK(run({"clone", "--algebra", "fixture:impl-X"}).code == cli::kHolds);
  const Run capped = run({"clone", "--algebra", "fixture:impl-X", "--cap", "10",
                          "--json"});
  CHECK(capped.code == cli::kInconclusive);
  CHECK(Json::parse(capped.out)["status"] == "inconclusive");
  {
    EnvCap env("10");
    CHECK(run({"clone", "--algebra", "fixture:impl-X"}).code ==
          cli::kInconclusive);
    CHECK(run({"clone", "--algebra", "fixture:impl-X", "--cap", "1000"}).code ==
          cli::kHolds);
  }
  {
    EnvCap env("ten");
    CHECK(run({"clone", "--algebra", "fixture:impl-X"}).code == cli::kUsage);
  }
}

TEST_CASE("relation outputs feed back in as inputs") {
  const std::string out = scratch("composed.json").string();
  const Run c = run({"relcalc", "compose", "--rel", "fixture:rel-R", "--rel2",
                     "fixture:rel-R", "--out", out});
  CHECK(c.code == cli::kHolds);
  const Document d = parse_document(slurp(out));
  CHECK(std::get<BinRelation>(d.payload) ==
        std::get<BinRelation>(load_fixture("rel-R").payload));
  CHECK(run({"compatible", "--algebra", "fixture:subtr-A", "--rel", out}).code ==
        cli::kHolds);
  CHECK(run({"congruence-gen", "--algebra", "fixture:subtr-A", "--rel", out})
            .code == cli::kHolds);
}

TEST_CASE("report documents written with --out parse back") {
  const std::string out = scratch("span.json").string();
  const Run r = run({"verify-paper", "span", "--out", out});
  CHECK(r.code == cli::kHolds);
  const Document d = parse_document(slurp(out));
  CHECK(std::get<Report>(d.payload) == verify_punctual_span());
  const Run j = run({"verify-paper", "span", "--json"});
  CHECK(j.out == slurp(out));
}

TEST_CASE("categories") {
  CHECK(run({"category", "validate", "--category", "fixture:cat-group-Z2"})
            .code == cli::kHolds);
  CHECK(run({"category", "groupoidify", "--category", "fixture:cat-group-Z2"})
            .code == cli::kHolds);
  const Run g = run({"category", "groupoidify", "--category",
                     "from-preorder(fixture:rel-R)"});
  CHECK(g.code == cli::kFails);
  CHECK(g.out.find("(a,b)") != std::string::npos);
  const Run c = run({"category", "cancel", "--category",
                     "fixture:cat-idempotent-monoid"});
  CHECK(c.code == cli::kFails);
  CHECK(c.out.find("a after a equals a after 1") != std::string::npos);
}

TEST_CASE("search") {
  SearchSpec spec;
  spec.theory = fixture_identities("identities-subtraction");
  spec.min_size = 2;
  spec.max_size = 3;
  spec.predicate = parse_predicate("has-noncongruence-preorder");
  const auto path = write("spec.json", serialize({spec, {}}));
  const Run found = run({"search", "--spec", path, "--json"});
  CHECK(found.code == cli::kHolds);
  const Run none = run({"search", "--spec", path, "--sizes", "1..2"});
  CHECK(none.code == cli::kFails);
  const Run capped = run({"search", "--spec", path, "--cap", "3"});
  CHECK(capped.code == cli::kInconclusive);
  CHECK(run({"search", "--spec", path, "--sizes", "3..2"}).code == cli::kUsage);
  const Run all = run({"search", "--spec", path, "--enumerate", "--sizes",
                       "3..3", "--dedup", "--json"});
  CHECK(all.code == cli::kHolds);
}

TEST_CASE("verification commands and fixtures") {
  CHECK(run({"verify-paper", "subtraction"}).code == cli::kHolds);
  CHECK(run({"verify-paper", "monoid", "--max-size", "2"}).code == cli::kHolds);
  CHECK(run({"verify-paper", "perm", "--algebra", "fixture:perm-Z2", "--n", "2"})
            .code == cli::kHolds);
  CHECK(run({"verify-paper"}).code == cli::kHolds);
  CHECK(run({"cross-validate", "--algebra", "fixture:impl-Z"}).code ==
        cli::kHolds);

  const Run list = run({"fixtures", "list"});
  CHECK(list.code == cli::kHolds);
  for (const auto& name : fixture_names())
    CHECK(list.out.find(name) != std::string::npos);
  const Run exp = run({"fixtures", "export", "subtr-A"});
  CHECK(exp.code == cli::kHolds);
  CHECK(parse_document(exp.out) == fixture_document(load_fixture("subtr-A")));
  CHECK(run({"fixtures", "export", "nope"}).code == cli::kUsage);
}

}  // TEST_SUITE
