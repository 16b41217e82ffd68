#include "mdlgauge/cfrag.hpp"

#include <array>
#include <optional>
#include <set>

#include "mdlgauge/lexcount.hpp"

namespace mdlgauge::term {

namespace {

using lex::Token;
using lex::TokenClass;

const std::set<std::string, std::less<>>& type_keywords() {
  static const std::set<std::string, std::less<>> kw = {
      "void", "bool", "char", "short", "int", "long", "float", "double", "signed", "unsigned", "auto",
  };
  return kw;
}

const std::set<std::string, std::less<>>& type_qualifiers() {
  static const std::set<std::string, std::less<>> kw = {
      "const", "volatile", "static", "inline", "constexpr", "extern", "mutable",
  };
  return kw;
}

struct BinaryLevel {
  std::array<std::string_view, 4> ops;
};

// Loosest to tightest, all left-associative.
constexpr std::array<BinaryLevel, 10> kBinaryLevels = {{
    {{"||"}},
    {{"&&"}},
    {{"|"}},
    {{"^"}},
    {{"&"}},
    {{"==", "!="}},
    {{"<", ">", "<=", ">="}},
    {{"<<", ">>"}},
    {{"+", "-"}},
    {{"*", "/", "%"}},
}};

constexpr std::array<std::string_view, 11> kAssignOps = {
    "=", "+=", "-=", "*=", "/=", "%=", "&=", "|=", "^=", "<<=", ">>=",
};

Term leaf(std::string s) { return Term::node(std::move(s)); }

class Encoder {
 public:
  explicit Encoder(std::vector<Token> toks) : toks_(std::move(toks)) {}

  Term encode() {
    if (toks_.empty()) return leaf("unit");
    // A lone expression (optionally ';'-terminated) encodes as itself.
    if (auto e = attempt([&] {
          Term t = expression();
          accept(";");
          if (!at_end()) fail("trailing tokens");
          return t;
        })) {
      return *e;
    }
    std::vector<Term> items;
    while (!at_end()) {
      for (auto& t : top_level()) items.push_back(std::move(t));
    }
    if (items.size() == 1) return items.front();
    return Term::node("unit", std::move(items));
  }

 private:
  // -- token helpers ---------------------------------------------------------

  bool at_end() const { return pos_ >= toks_.size(); }
  const Token* peek(std::size_t ahead = 0) const {
    return pos_ + ahead < toks_.size() ? &toks_[pos_ + ahead] : nullptr;
  }
  bool is(std::string_view text, std::size_t ahead = 0) const {
    const Token* t = peek(ahead);
    return t && t->text == text && t->cls != TokenClass::string_literal &&
           t->cls != TokenClass::char_literal;
  }
  bool accept(std::string_view text) {
    if (!is(text)) return false;
    ++pos_;
    return true;
  }
  void expect(std::string_view text) {
    if (!accept(text)) fail("expected '" + std::string(text) + "'");
  }
  [[noreturn]] void fail(const std::string& msg) const {
    const std::string found = at_end() ? "end of input" : "'" + toks_[pos_].text + "'";
    throw SyntaxError(msg + ", found " + found, pos_);
  }
  bool is_name(std::size_t ahead = 0) const {
    const Token* t = peek(ahead);
    return t && t->cls == TokenClass::identifier;
  }
  std::string name() {
    if (!is_name()) fail("expected identifier");
    return toks_[pos_++].text;
  }

  template <typename F>
  auto attempt(F&& f) -> std::optional<decltype(f())> {
    const std::size_t saved = pos_;
    try {
      return f();
    } catch (const SyntaxError&) {
      pos_ = saved;
      return std::nullopt;
    }
  }

  // -- types -----------------------------------------------------------------

  Term type() {
    std::vector<std::string> quals;
    while (peek() && peek()->cls == TokenClass::keyword && type_qualifiers().contains(peek()->text)) {
      quals.push_back(toks_[pos_++].text);
    }
    accept("typename");
    accept("struct");
    Term base = base_type();
    while (accept("::")) base = Term::node("::", {base, leaf(name())});
    for (;;) {
      if (accept("*")) {
        base = Term::node("ptr", {base});
      } else if (accept("&")) {
        base = Term::node("ref", {base});
      } else if (accept("&&")) {
        base = Term::node("rref", {base});
      } else if (accept("const")) {
        base = Term::node("const", {base});
      } else {
        break;
      }
    }
    for (auto it = quals.rbegin(); it != quals.rend(); ++it) base = Term::node(*it, {base});
    return base;
  }

  Term base_type() {
    const Token* t = peek();
    if (t && t->cls == TokenClass::keyword && type_keywords().contains(t->text)) {
      std::string words = toks_[pos_++].text;
      // unsigned long long, long double, ...
      while (peek() && peek()->cls == TokenClass::keyword && type_keywords().contains(peek()->text)) {
        words += "_" + toks_[pos_++].text;
      }
      return leaf(words);
    }
    std::string n = name();
    if (is("<")) {
      if (auto args = attempt([&] { return template_args(); })) {
        std::vector<Term> kids{leaf(n)};
        for (auto& a : *args) kids.push_back(std::move(a));
        return Term::node("tmpl", std::move(kids));
      }
    }
    return leaf(n);
  }

  std::vector<Term> template_args() {
    expect("<");
    std::vector<Term> args;
    if (!accept(">")) {
      do {
        const Token* t = peek();
        if (t && t->cls == TokenClass::number) {
          args.push_back(leaf(toks_[pos_++].text));
        } else {
          args.push_back(type());
        }
      } while (accept(","));
      expect(">");
    }
    return args;
  }

  // -- top level -------------------------------------------------------------

  std::vector<Term> top_level() {
    if (accept(";")) return {};
    if (is("template")) return {template_item()};
    if (is("struct") || is("class")) {
      if (auto s = attempt([&] { return struct_def(); })) return {*s};
    }
    return declaration_or_function();
  }

  Term template_item() {
    expect("template");
    expect("<");
    std::vector<Term> params;
    if (!accept(">")) {
      do {
        if (!accept("typename") && !accept("class")) {
          params.push_back(Term::node("param", {type(), leaf(name())}));
          continue;
        }
        params.push_back(leaf(name()));
      } while (accept(","));
      expect(">");
    }
    auto inner = top_level();
    if (inner.size() != 1) fail("template must introduce exactly one declaration");
    return Term::node("template", {Term::node("tparams", std::move(params)), inner.front()});
  }

  Term struct_def() {
    const std::string kind = toks_[pos_++].text;
    std::string n = name();
    expect("{");
    std::vector<Term> members{leaf(n)};
    while (!accept("}")) {
      if (at_end()) fail("unterminated " + kind);
      if (accept("public") || accept("private") || accept("protected")) {
        expect(":");
        continue;
      }
      for (auto& m : top_level()) members.push_back(std::move(m));
    }
    expect(";");
    return Term::node(kind, std::move(members));
  }

  std::string declarator_name() {
    if (accept("operator")) {
      if (accept("(")) {
        expect(")");
        return "operator()";
      }
      if (accept("[")) {
        expect("]");
        return "operator[]";
      }
      const Token* t = peek();
      if (!t || (t->cls != TokenClass::op && t->cls != TokenClass::punctuator)) {
        fail("expected operator symbol");
      }
      return "operator" + toks_[pos_++].text;
    }
    return name();
  }

  std::vector<Term> declaration_or_function() {
    Term ty = type();
    std::string n = declarator_name();
    if (accept("(")) {
      std::vector<Term> params;
      if (!accept(")")) {
        do {
          if (is("...")) {
            ++pos_;
            params.push_back(leaf("..."));
            continue;
          }
          Term pty = type();
          if (is_name()) {
            params.push_back(Term::node("param", {pty, leaf(name())}));
          } else {
            params.push_back(Term::node("param", {pty}));
          }
        } while (accept(","));
        expect(")");
      }
      while (accept("const")) {
      }
      Term sig = Term::node("params", std::move(params));
      if (accept(";")) return {Term::node("fundecl", {leaf(n), ty, sig})};
      return {Term::node("fun", {leaf(n), ty, sig, block()})};
    }
    return declarators(ty, n);
  }

  // After the type and first name of a declaration.
  std::vector<Term> declarators(const Term& ty, std::string first) {
    std::vector<Term> out;
    std::string n = std::move(first);
    for (;;) {
      Term t = ty;
      while (accept("[")) {
        t = is("]") ? Term::node("array", {t}) : Term::node("array", {t, expression()});
        expect("]");
      }
      if (accept("=")) {
        out.push_back(Term::node("decl", {t, leaf(n), assignment()}));
      } else {
        out.push_back(Term::node("decl", {t, leaf(n)}));
      }
      if (!accept(",")) break;
      n = name();
    }
    expect(";");
    return out;
  }

  // -- statements ------------------------------------------------------------

  Term block() {
    expect("{");
    std::vector<Term> stmts;
    while (!accept("}")) {
      if (at_end()) fail("unterminated block");
      for (auto& s : statement()) stmts.push_back(std::move(s));
    }
    return Term::node("block", std::move(stmts));
  }

  bool looks_like_declaration() {
    const Token* t = peek();
    if (!t) return false;
    if (t->cls == TokenClass::keyword) {
      return type_keywords().contains(t->text) || type_qualifiers().contains(t->text) ||
             t->text == "typename" || t->text == "struct";
    }
    if (t->cls != TokenClass::identifier) return false;
    const std::size_t saved = pos_;
    bool result = false;
    try {
      type();
      result = is_name();
    } catch (const SyntaxError&) {
    }
    pos_ = saved;
    return result;
  }

  Term nop() { return leaf("nop"); }

  std::vector<Term> statement() {
    if (is("{")) return {block()};
    if (accept(";")) return {nop()};
    if (accept("return")) {
      if (accept(";")) return {leaf("return")};
      Term e = expression();
      expect(";");
      return {Term::node("return", {e})};
    }
    if (accept("for")) {
      expect("(");
      Term init = nop();
      if (!accept(";")) {
        if (looks_like_declaration()) {
          auto decls = declarators_from_start();
          init = decls.size() == 1 ? decls.front() : Term::node("decls", std::move(decls));
        } else {
          init = expression();
          expect(";");
        }
      }
      Term cond = is(";") ? nop() : expression();
      expect(";");
      Term step = is(")") ? nop() : expression();
      expect(")");
      auto body = statement();
      return {Term::node("for", {init, cond, step, single(std::move(body))})};
    }
    if (accept("while")) {
      expect("(");
      Term cond = expression();
      expect(")");
      return {Term::node("while", {cond, single(statement())})};
    }
    if (accept("if")) {
      expect("(");
      Term cond = expression();
      expect(")");
      Term then = single(statement());
      if (accept("else")) return {Term::node("if", {cond, then, single(statement())})};
      return {Term::node("if", {cond, then})};
    }
    if (accept("break")) {
      expect(";");
      return {leaf("break")};
    }
    if (accept("continue")) {
      expect(";");
      return {leaf("continue")};
    }
    if (looks_like_declaration()) return declarators_from_start();
    Term e = expression();
    expect(";");
    return {e};
  }

  std::vector<Term> declarators_from_start() {
    Term ty = type();
    std::string n = name();
    return declarators(ty, std::move(n));
  }

  static Term single(std::vector<Term> stmts) {
    if (stmts.size() == 1) return stmts.front();
    return Term::node("block", std::move(stmts));
  }

  // -- expressions -----------------------------------------------------------

  Term expression() {
    Term e = assignment();
    while (accept(",")) e = Term::node(",", {e, assignment()});
    return e;
  }

  Term assignment() {
    Term lhs = conditional();
    for (auto op : kAssignOps) {
      if (accept(op)) return Term::node(std::string(op), {lhs, assignment()});
    }
    return lhs;
  }

  Term conditional() {
    Term c = binary(0);
    if (!accept("?")) return c;
    Term a = expression();
    expect(":");
    Term b = assignment();
    return Term::node("?:", {c, a, b});
  }

  Term binary(std::size_t level) {
    if (level == kBinaryLevels.size()) return unary();
    Term lhs = binary(level + 1);
    for (;;) {
      std::optional<std::string_view> hit;
      for (auto op : kBinaryLevels[level].ops) {
        if (!op.empty() && is(op)) hit = op;
      }
      if (!hit) return lhs;
      ++pos_;
      lhs = Term::node(std::string(*hit), {lhs, binary(level + 1)});
    }
  }

  Term unary() {
    static constexpr std::array<std::pair<std::string_view, std::string_view>, 8> kPrefix = {{
        {"-", "neg"}, {"+", "pos"}, {"!", "!"}, {"~", "~"},
        {"*", "deref"}, {"&", "addr"}, {"++", "pre++"}, {"--", "pre--"},
    }};
    for (auto [op, label] : kPrefix) {
      if (accept(op)) return Term::node(std::string(label), {unary()});
    }
    if (accept("sizeof")) return Term::node("sizeof", {unary()});
    return postfix(primary());
  }

  Term postfix(Term e) {
    for (;;) {
      if (accept("(")) {
        std::vector<Term> args;
        if (!accept(")")) {
          do {
            args.push_back(assignment());
          } while (accept(","));
          expect(")");
        }
        const bool plain_name = e.is_leaf() && !e.is_var() &&
                                lex::is_valid_identifier(e.name());
        if (plain_name && !args.empty()) {
          e = Term::node(e.name(), std::move(args));
        } else {
          args.insert(args.begin(), e);
          e = Term::node("call", std::move(args));
        }
      } else if (accept("[")) {
        Term i = expression();
        expect("]");
        e = Term::node("index", {e, i});
      } else if (accept(".")) {
        e = Term::node(".", {e, leaf(member_name())});
      } else if (accept("->")) {
        e = Term::node("->", {e, leaf(member_name())});
      } else if (accept("++")) {
        e = Term::node("post++", {e});
      } else if (accept("--")) {
        e = Term::node("post--", {e});
      } else {
        return e;
      }
    }
  }

  std::string member_name() {
    if (is("operator")) return declarator_name();
    return name();
  }

  Term primary() {
    const Token* t = peek();
    if (!t) fail("expected expression");
    if (accept("(")) {
      Term e = expression();
      expect(")");
      return e;
    }
    switch (t->cls) {
      case TokenClass::number:
      case TokenClass::string_literal:
      case TokenClass::char_literal:
        return leaf(toks_[pos_++].text);
      case TokenClass::identifier: {
        std::string n = toks_[pos_++].text;
        if (is("<")) {
          // Template-id only when followed by a call, scope or brace.
          if (auto args = attempt([&] {
                auto a = template_args();
                if (!is("(") && !is("::") && !is("{")) fail("not a template-id");
                return a;
              })) {
            std::vector<Term> kids{leaf(n)};
            for (auto& a : *args) kids.push_back(std::move(a));
            return Term::node("tmpl", std::move(kids));
          }
        }
        Term e = leaf(n);
        while (accept("::")) e = Term::node("::", {e, leaf(name())});
        return e;
      }
      case TokenClass::keyword:
        if (t->text == "true" || t->text == "false" || t->text == "nullptr" || t->text == "this") {
          return leaf(toks_[pos_++].text);
        }
        if (type_keywords().contains(t->text)) {
          // Functional cast such as double(x).
          Term ty = leaf(toks_[pos_++].text);
          expect("(");
          Term e = expression();
          expect(")");
          return Term::node("cast", {ty, e});
        }
        break;
      default:
        break;
    }
    fail("expected expression");
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

}  // namespace

Term encode_c(std::string_view source) {
  return Encoder(lex::tokenize(source, lex::Dialect::cpp_like).tokens).encode();
}

}  // namespace mdlgauge::term
