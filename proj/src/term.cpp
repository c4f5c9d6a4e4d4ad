#include "permutab/term.hpp"

#include <algorithm>
#include <cctype>
#include <functional>

#include "permutab/error.hpp"

namespace permutab {

Term Term::variable(std::size_t index) {
  Term t;
  t.is_variable_ = true;
  t.variable_ = index;
  return t;
}

Term Term::apply(std::string symbol, std::vector<Term> args) {
  Term t;
  t.symbol_ = std::move(symbol);
  t.args_ = std::move(args);
  return t;
}

std::size_t Term::variable_bound() const {
  if (is_variable_) return variable_ + 1;
  std::size_t b = 0;
  for (const auto& a : args_) b = std::max(b, a.variable_bound());
  return b;
}

std::size_t Term::depth() const {
  std::size_t d = 0;
  for (const auto& a : args_) d = std::max(d, a.depth() + 1);
  return d;
}

namespace {

std::string child_path(const std::string& path, std::size_t i) {
  return path + "." + std::to_string(i);
}

}  // namespace

CompiledTerm::CompiledTerm(const Term& term, const Signature& signature,
                           std::size_t var_count) {
  std::function<void(const Term&, const std::string&)> emit =
      [&](const Term& t, const std::string& path) {
        if (t.is_variable()) {
          if (t.variable_index() >= var_count)
            throw Error("term at " + path + ": variable " +
                        std::to_string(t.variable_index()) +
                        " out of range (" + std::to_string(var_count) +
                        " variables)");
          code_.push_back({true, t.variable_index(), 0});
          return;
        }
        auto sym = signature.find(t.symbol());
        if (!sym)
          throw Error("term at " + path + ": symbol '" + t.symbol() +
                      "' not in signature");
        const unsigned arity = signature[*sym].arity;
        if (arity != t.args().size())
          throw Error("term at " + path + ": symbol '" + t.symbol() +
                      "' has arity " + std::to_string(arity) + ", applied to " +
                      std::to_string(t.args().size()) + " arguments");
        for (std::size_t i = 0; i < t.args().size(); ++i)
          emit(t.args()[i], child_path(path, i));
        code_.push_back({false, *sym, arity});
        max_arity_ = std::max<std::size_t>(max_arity_, arity);
      };
  emit(term, "root");
}

Element CompiledTerm::evaluate(const Algebra& alg,
                               std::span<const Element> env) const {
  auto v = run(env, [&](std::size_t s, std::span<const Element> args) {
    return std::optional<Element>(alg.apply(s, args));
  });
  return *v;
}

Element eval_term(const Algebra& alg, const Term& term,
                  std::span<const Element> env) {
  if (env.size() < term.variable_bound())
    throw Error("eval_term: environment has " + std::to_string(env.size()) +
                " entries, term needs " + std::to_string(term.variable_bound()));
  for (Element e : env)
    if (e >= alg.size()) throw Error("eval_term: environment value out of range");
  return CompiledTerm(term, alg.signature(), env.size()).evaluate(alg, env);
}

IdentityVerdict check_identity(const Algebra& alg, const Identity& id) {
  const CompiledTerm lhs(id.lhs, alg.signature(), id.var_count);
  const CompiledTerm rhs(id.rhs, alg.signature(), id.var_count);
  const std::size_t envs = table_length(alg.size(), id.var_count);
  for (std::size_t e = 0; e < envs; ++e) {
    const auto env = table_args(alg.size(), id.var_count, e);
    if (lhs.evaluate(alg, env) != rhs.evaluate(alg, env)) return {env};
  }
  return {};
}

namespace {

bool is_name_char(char c) {
  const auto u = static_cast<unsigned char>(c);
  return std::isalnum(u) || c == '_' || u >= 0x80;
}

bool is_punct_symbol(const std::string& name) {
  return !name.empty() && std::none_of(name.begin(), name.end(), is_name_char);
}

class Parser {
 public:
  Parser(std::string_view text, const Signature& sig,
         const std::vector<std::string>& vars)
      : text_(text), sig_(sig), vars_(vars) {}

  Term parse_expr() {
    Term left = parse_primary();
    for (;;) {
      skip_ws();
      const std::size_t at = pos_;
      std::string op = peek_operator();
      if (op.empty()) return left;
      auto sym = sig_.find(op);
      if (!sym || sig_[*sym].arity != 2)
        fail(at, "'" + op + "' is not a binary symbol");
      pos_ += op.size();
      Term right = parse_primary();
      left = Term::apply(op, {std::move(left), std::move(right)});
    }
  }

  void expect_end() {
    skip_ws();
    if (pos_ != text_.size()) fail(pos_, "unexpected trailing input");
  }

  std::size_t position() const { return pos_; }
  void skip_ws() {
    while (pos_ < text_.size() &&
           std::isspace(static_cast<unsigned char>(text_[pos_])))
      ++pos_;
  }
  bool consume(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  [[noreturn]] void fail(std::size_t at, const std::string& msg) const {
    throw Error("term parse error at column " + std::to_string(at + 1) + ": " +
                msg + " in \"" + std::string(text_) + "\"");
  }

 private:
  std::string peek_operator() const {
    std::size_t end = pos_;
    while (end < text_.size()) {
      const char c = text_[end];
      if (is_name_char(c) || std::isspace(static_cast<unsigned char>(c)) ||
          c == '(' || c == ')' || c == ',' || c == '=')
        break;
      ++end;
    }
    return std::string(text_.substr(pos_, end - pos_));
  }

  Term parse_primary() {
    skip_ws();
    const std::size_t at = pos_;
    if (consume('(')) {
      Term inner = parse_expr();
      if (!consume(')')) fail(pos_, "expected ')'");
      return inner;
    }
    std::size_t end = pos_;
    while (end < text_.size() && is_name_char(text_[end])) ++end;
    if (end == pos_) {
      // A punctuation symbol in prefix position, e.g. *(x,y).
      std::string op = peek_operator();
      if (op.empty()) fail(at, "expected a term");
      end = pos_ + op.size();
    }
    std::string name(text_.substr(pos_, end - pos_));
    pos_ = end;

    auto var = std::find(vars_.begin(), vars_.end(), name);
    if (var != vars_.end()) {
      skip_ws();
      if (pos_ < text_.size() && text_[pos_] == '(')
        fail(pos_, "variable '" + name + "' cannot take arguments");
      return Term::variable(static_cast<std::size_t>(var - vars_.begin()));
    }
    auto sym = sig_.find(name);
    if (!sym) fail(at, "unknown name '" + name + "'");
    std::vector<Term> args;
    if (consume('(')) {
      if (!consume(')')) {
        do {
          args.push_back(parse_expr());
        } while (consume(','));
        if (!consume(')')) fail(pos_, "expected ')' or ','");
      }
    }
    if (args.size() != sig_[*sym].arity)
      fail(at, "symbol '" + name + "' has arity " +
                   std::to_string(sig_[*sym].arity) + ", given " +
                   std::to_string(args.size()) + " arguments");
    return Term::apply(name, std::move(args));
  }

  std::string_view text_;
  const Signature& sig_;
  const std::vector<std::string>& vars_;
  std::size_t pos_ = 0;
};

}  // namespace

Term parse_term(std::string_view text, const Signature& signature,
                const std::vector<std::string>& var_names) {
  Parser p(text, signature, var_names);
  Term t = p.parse_expr();
  p.expect_end();
  return t;
}

Identity parse_identity(std::string_view text, const Signature& signature,
                        std::vector<std::string> var_names) {
  const auto eq = text.find('=');
  if (eq == std::string_view::npos)
    throw Error("identity parse error: missing '=' in \"" + std::string(text) +
                "\"");
  Identity id;
  id.lhs = parse_term(text.substr(0, eq), signature, var_names);
  id.rhs = parse_term(text.substr(eq + 1), signature, var_names);
  id.var_count = var_names.size();
  id.var_names = std::move(var_names);
  return id;
}

std::string format_term(const Term& term, const Signature& signature,
                        const std::vector<std::string>& var_names) {
  if (term.is_variable()) {
    if (term.variable_index() < var_names.size())
      return var_names[term.variable_index()];
    return "x" + std::to_string(term.variable_index());
  }
  if (term.args().empty()) return term.symbol();
  if (term.args().size() == 2 && is_punct_symbol(term.symbol())) {
    auto side = [&](const Term& t) {
      std::string s = format_term(t, signature, var_names);
      const bool infix = !t.is_variable() && t.args().size() == 2 &&
                         is_punct_symbol(t.symbol());
      return infix ? "(" + s + ")" : s;
    };
    return side(term.args()[0]) + term.symbol() + side(term.args()[1]);
  }
  std::string out = term.symbol() + "(";
  for (std::size_t i = 0; i < term.args().size(); ++i) {
    if (i) out += ",";
    out += format_term(term.args()[i], signature, var_names);
  }
  return out + ")";
}

std::string format_identity(const Identity& id, const Signature& signature) {
  return format_term(id.lhs, signature, id.var_names) + " = " +
         format_term(id.rhs, signature, id.var_names);
}

}  // namespace permutab
