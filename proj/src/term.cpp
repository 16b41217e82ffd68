#include "mdlgauge/term.hpp"

#include <algorithm>
#include <functional>
#include <set>

namespace mdlgauge::term {

namespace {

std::size_t mix(std::size_t h, std::size_t v) {
  return h ^ (v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
}

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\v' || c == '\f'; }

bool is_delim(char c) { return is_space(c) || c == '(' || c == ')' || c == '"'; }

std::string quote(std::string_view s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  out += '"';
  return out;
}

std::string render_symbol(std::string_view s) {
  return needs_quoting(s) ? quote(s) : std::string(s);
}

std::string render_var(std::string_view name) {
  const bool plain = !name.empty() && std::none_of(name.begin(), name.end(), is_delim) &&
                     name.find('\\') == std::string_view::npos;
  return "?" + (plain ? std::string(name) : quote(name));
}

void render_into(const Term& t, std::string& out) {
  if (t.is_var()) {
    out += render_var(t.name());
    return;
  }
  if (t.is_leaf()) {
    out += render_symbol(t.name());
    return;
  }
  out += '(';
  out += render_symbol(t.name());
  for (const auto& c : t.children()) {
    out += ' ';
    render_into(c, out);
  }
  out += ')';
}

class TermParser {
 public:
  explicit TermParser(std::string_view text) : text_(text) {}

  Term parse_all() {
    skip_ws();
    Term t = parse();
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected trailing input");
    return t;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const { throw SyntaxError(msg, pos_); }

  void skip_ws() {
    while (pos_ < text_.size() && is_space(text_[pos_])) ++pos_;
  }

  std::string symbol() {
    if (pos_ >= text_.size()) fail("expected symbol, found end of input");
    if (text_[pos_] == '"') return quoted();
    const std::size_t start = pos_;
    while (pos_ < text_.size() && !is_delim(text_[pos_])) ++pos_;
    if (pos_ == start) fail(std::string("expected symbol, found '") + text_[pos_] + "'");
    return std::string(text_.substr(start, pos_ - start));
  }

  std::string quoted() {
    const std::size_t start = pos_;
    ++pos_;
    std::string out;
    while (pos_ < text_.size() && text_[pos_] != '"') {
      if (text_[pos_] == '\\') {
        ++pos_;
        if (pos_ >= text_.size()) break;
      }
      out += text_[pos_++];
    }
    if (pos_ >= text_.size()) {
      pos_ = start;
      fail("unterminated quoted symbol");
    }
    ++pos_;
    return out;
  }

  Term parse() {
    skip_ws();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    const char c = text_[pos_];
    if (c == ')') fail("unexpected ')'");
    if (c == '?') {
      ++pos_;
      if (pos_ >= text_.size() || (is_delim(text_[pos_]) && text_[pos_] != '"')) {
        fail("metavariable needs a name");
      }
      return Term::var(symbol());
    }
    if (c != '(') {
      std::string sym = symbol();
      return Term::node(std::move(sym));
    }
    ++pos_;
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == '?') fail("metavariable in head position");
    if (pos_ < text_.size() && text_[pos_] == '(') fail("compound term in head position");
    std::string label = symbol();
    std::vector<Term> kids;
    for (;;) {
      skip_ws();
      if (pos_ >= text_.size()) fail("missing ')'");
      if (text_[pos_] == ')') {
        ++pos_;
        break;
      }
      kids.push_back(parse());
    }
    return Term::node(std::move(label), std::move(kids));
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

bool has_vars_in(const Term& t, const Substitution& s) {
  if (t.is_var()) return s.contains(t.name());
  if (t.is_ground()) return false;
  return std::any_of(t.children().begin(), t.children().end(),
                     [&](const Term& c) { return has_vars_in(c, s); });
}

}  // namespace

Term Term::var(std::string name) {
  const std::size_t h = mix(std::hash<std::string>{}(name), 0x51);
  return Term(std::make_shared<const Rep>(Rep{true, std::move(name), {}, 1, 1, h, false}));
}

Term Term::node(std::string label, std::vector<Term> children) {
  std::size_t size = 1, depth = 0;
  std::size_t h = mix(std::hash<std::string>{}(label), children.size());
  bool ground = true;
  for (const auto& c : children) {
    size += c.size();
    depth = std::max(depth, c.depth());
    h = mix(h, c.hash());
    ground = ground && c.is_ground();
  }
  return Term(std::make_shared<const Rep>(
      Rep{false, std::move(label), std::move(children), size, depth + 1, h, ground}));
}

bool operator==(const Term& a, const Term& b) {
  if (a.rep_ == b.rep_) return true;
  if (a.hash() != b.hash() || a.size() != b.size() || a.is_var() != b.is_var() ||
      a.arity() != b.arity() || a.name() != b.name()) {
    return false;
  }
  for (std::size_t i = 0; i < a.arity(); ++i) {
    if (!(a.child(i) == b.child(i))) return false;
  }
  return true;
}

std::strong_ordering operator<=>(const Term& a, const Term& b) {
  if (a.rep_ == b.rep_) return std::strong_ordering::equal;
  if (auto c = a.is_var() <=> b.is_var(); c != 0) return c;
  if (auto c = a.name() <=> b.name(); c != 0) return c;
  if (auto c = a.arity() <=> b.arity(); c != 0) return c;
  for (std::size_t i = 0; i < a.arity(); ++i) {
    if (auto c = a.child(i) <=> b.child(i); c != 0) return c;
  }
  return std::strong_ordering::equal;
}

SyntaxError::SyntaxError(const std::string& msg, std::size_t position)
    : std::runtime_error(msg + " at position " + std::to_string(position)), position_(position) {}

bool needs_quoting(std::string_view symbol) {
  return symbol.empty() || symbol.front() == '?' ||
         std::any_of(symbol.begin(), symbol.end(), [](char c) { return is_delim(c) || c == '\\'; });
}

Term parse_term(std::string_view text) { return TermParser(text).parse_all(); }

std::string render_term(const Term& t) {
  std::string out;
  render_into(t, out);
  return out;
}

std::string render_substitution(const Substitution& s) {
  std::string out = "{";
  for (const auto& [name, value] : s) {
    if (out.size() > 1) out += ", ";
    out += render_var(name);
    out += " -> ";
    out += render_term(value);
  }
  out += "}";
  return out;
}

Term substitute(const Substitution& s, const Term& t) {
  if (t.is_var()) {
    auto it = s.find(t.name());
    return it == s.end() ? t : it->second;
  }
  if (t.is_ground() || s.empty()) return t;
  std::vector<Term> kids;
  kids.reserve(t.arity());
  bool changed = false;
  for (const auto& c : t.children()) {
    kids.push_back(substitute(s, c));
    changed = changed || !kids.back().same_object(c);
  }
  return changed ? Term::node(t.name(), std::move(kids)) : t;
}

Substitution normalize(const Substitution& s) {
  Substitution out = s;
  for (std::size_t round = 0; round <= s.size(); ++round) {
    bool dirty = false;
    for (auto& [name, value] : out) {
      if (has_vars_in(value, out)) {
        value = substitute(out, value);
        dirty = true;
      }
    }
    if (!dirty) return out;
  }
  throw std::invalid_argument("normalize: cyclic substitution");
}

void collect_vars(const Term& t, std::vector<std::string>& out) {
  if (t.is_var()) {
    if (std::find(out.begin(), out.end(), t.name()) == out.end()) out.push_back(t.name());
    return;
  }
  if (t.is_ground()) return;
  for (const auto& c : t.children()) collect_vars(c, out);
}

std::vector<std::string> vars_of(const Term& t) {
  std::vector<std::string> out;
  collect_vars(t, out);
  return out;
}

std::size_t occurrences(const Term& t, std::string_view var) {
  if (t.is_var()) return t.name() == var ? 1 : 0;
  std::size_t n = 0;
  if (!t.is_ground()) {
    for (const auto& c : t.children()) n += occurrences(c, var);
  }
  return n;
}

void validate(const Abstraction& a) {
  std::set<std::string> seen;
  for (const auto& p : a.params) {
    if (!seen.insert(p).second) throw InvalidAbstraction("duplicate parameter ?" + p);
  }
  for (const auto& v : vars_of(a.body)) {
    if (!seen.contains(v)) throw InvalidAbstraction("body uses undeclared metavariable ?" + v);
  }
}

Term instantiate(const Abstraction& a, std::span<const Term> args) {
  if (args.size() != a.params.size()) {
    throw ArityMismatch("abstraction '" + a.name + "' takes " + std::to_string(a.params.size()) +
                        " arguments, got " + std::to_string(args.size()));
  }
  Substitution s;
  for (std::size_t i = 0; i < args.size(); ++i) s.emplace(a.params[i], args[i]);
  return substitute(s, a.body);
}

Abstraction parse_abstraction(std::string_view text, std::string name) {
  std::size_t pos = 0;
  while (pos < text.size() && is_space(text[pos])) ++pos;
  constexpr std::string_view kHeader = "params:";
  if (text.substr(pos, kHeader.size()) != kHeader) {
    throw SyntaxError("abstraction must start with 'params:'", pos);
  }
  pos += kHeader.size();
  const std::size_t eol = std::min(text.find('\n', pos), text.size());

  std::vector<std::string> params;
  std::size_t p = pos;
  while (p < eol) {
    while (p < eol && is_space(text[p])) ++p;
    if (p >= eol) break;
    if (text[p] != '?') throw SyntaxError("parameter must start with '?'", p);
    const std::size_t start = ++p;
    while (p < eol && !is_space(text[p])) ++p;
    if (p == start) throw SyntaxError("empty parameter name", p);
    params.emplace_back(text.substr(start, p - start));
  }
  std::optional<Term> body;
  try {
    body = parse_term(text.substr(eol));
  } catch (const SyntaxError& e) {
    throw SyntaxError(std::string("in abstraction body: ") + e.what(), eol + e.position());
  }
  Abstraction a{std::move(name), std::move(params), std::move(*body)};
  validate(a);
  return a;
}

std::string render_abstraction(const Abstraction& a) {
  std::string out = "params:";
  for (const auto& p : a.params) out += " " + render_var(p);
  out += "\n" + render_term(a.body) + "\n";
  return out;
}

}  // namespace mdlgauge::term
