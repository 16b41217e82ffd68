#include "mdlgauge/lexcount.hpp"

#include <algorithm>
#include <array>
#include <set>

namespace mdlgauge::lex {

namespace {

// Longest first; maximal munch picks the first entry that matches.
constexpr std::array<std::string_view, 27> kOperators = {
    "<<=", ">>=", "->*", "<=>", "...",
    "++",  "--",  "+=",  "-=",  "*=", "/=", "%=", "&=", "|=", "^=",
    "==",  "!=",  "<=",  ">=",  "&&", "||", "<<", ">>", "->", "::", ".*", "##",
};

constexpr std::string_view kPunctuators[] = {
    "(", ")", "[", "]", "{", "}", ";", ",", ".", ":", "...", "#", "##",
};

const std::set<std::string, std::less<>>& keywords() {
  static const std::set<std::string, std::less<>> kw = {
      "alignas",   "alignof",      "asm",          "auto",        "bool",
      "break",     "case",         "catch",        "char",        "char8_t",
      "char16_t",  "char32_t",     "class",        "concept",     "const",
      "consteval", "constexpr",    "constinit",    "const_cast",  "continue",
      "co_await",  "co_return",    "co_yield",     "decltype",    "default",
      "delete",    "do",           "double",       "dynamic_cast", "else",
      "enum",      "explicit",     "export",       "extern",      "false",
      "float",     "for",          "friend",       "goto",        "if",
      "inline",    "int",          "long",         "mutable",     "namespace",
      "new",       "noexcept",     "nullptr",      "operator",    "private",
      "protected", "public",       "register",     "reinterpret_cast",
      "requires",  "return",       "short",        "signed",      "sizeof",
      "static",    "static_assert", "static_cast", "struct",      "switch",
      "template",  "this",         "thread_local", "throw",       "true",
      "try",       "typedef",      "typeid",       "typename",    "union",
      "unsigned",  "using",        "virtual",      "void",        "volatile",
      "wchar_t",   "while",
  };
  return kw;
}

bool is_space(unsigned char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\v' || c == '\f';
}
bool is_digit(unsigned char c) { return c >= '0' && c <= '9'; }
bool is_ident_start(unsigned char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_' || c >= 0x80;
}
bool is_ident_char(unsigned char c) { return is_ident_start(c) || is_digit(c); }

TokenClass classify_symbol(std::string_view sym) {
  for (auto p : kPunctuators) {
    if (p == sym) return TokenClass::punctuator;
  }
  // Anything outside the operator alphabet is a stray character.
  static constexpr std::string_view kOpChars = "+-*/%=<>!&|^~?";
  if (sym.size() == 1 && kOpChars.find(sym[0]) == std::string_view::npos) {
    return TokenClass::punctuator;
  }
  return TokenClass::op;
}

class CppLexer {
 public:
  CppLexer(std::string_view text, TokenStream& out) : text_(text), out_(out) {}

  void run() {
    while (pos_ < text_.size()) {
      const unsigned char c = text_[pos_];
      if (is_space(c)) {
        ++pos_;
      } else if (c == '/' && peek(1) == '/') {
        skip_line_comment();
      } else if (c == '/' && peek(1) == '*') {
        skip_block_comment();
      } else if (is_ident_start(c)) {
        lex_word();
      } else if (is_digit(c) || (c == '.' && is_digit(peek(1)))) {
        lex_number();
      } else if (c == '"') {
        lex_quoted(pos_, pos_, '"', TokenClass::string_literal);
      } else if (c == '\'') {
        lex_quoted(pos_, pos_, '\'', TokenClass::char_literal);
      } else {
        lex_symbol();
      }
    }
  }

 private:
  unsigned char peek(std::size_t ahead) const {
    return pos_ + ahead < text_.size() ? static_cast<unsigned char>(text_[pos_ + ahead]) : 0;
  }

  void emit(TokenClass cls, std::size_t begin, std::size_t end) {
    out_.tokens.push_back(Token{cls, std::string(text_.substr(begin, end - begin))});
  }

  void skip_line_comment() {
    while (pos_ < text_.size() && text_[pos_] != '\n') ++pos_;
  }

  void skip_block_comment() {
    const std::size_t start = pos_;
    const auto close = text_.find("*/", pos_ + 2);
    if (close == std::string_view::npos) {
      throw LexError(LexError::Kind::unterminated_comment, start);
    }
    pos_ = close + 2;
  }

  void lex_word() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() && is_ident_char(text_[pos_])) ++pos_;
    const std::string_view word = text_.substr(start, pos_ - start);
    if (pos_ < text_.size() && is_literal_prefix(word)) {
      const char q = text_[pos_];
      if (q == '"' && word.back() == 'R') {
        lex_raw_string(start);
        return;
      }
      if (q == '"' || q == '\'') {
        lex_quoted(start, pos_, q, q == '"' ? TokenClass::string_literal : TokenClass::char_literal);
        return;
      }
    }
    emit(is_keyword(word) ? TokenClass::keyword : TokenClass::identifier, start, pos_);
  }

  static bool is_literal_prefix(std::string_view w) {
    return w == "L" || w == "u" || w == "U" || w == "u8" || w == "R" || w == "LR" ||
           w == "uR" || w == "UR" || w == "u8R";
  }

  // Preprocessing-number: digits, letters, '.', digit separators, and signed
  // exponents.
  void lex_number() {
    const std::size_t start = pos_;
    ++pos_;
    while (pos_ < text_.size()) {
      const unsigned char c = text_[pos_];
      if ((c == '+' || c == '-') && pos_ > start) {
        const char prev = static_cast<char>(text_[pos_ - 1] | 0x20);
        if (prev == 'e' || prev == 'p') {
          ++pos_;
          continue;
        }
        break;
      }
      if (c == '\'' && is_ident_char(peek(1))) {
        pos_ += 2;
        continue;
      }
      if (is_ident_char(c) || c == '.') {
        ++pos_;
        continue;
      }
      break;
    }
    emit(TokenClass::number, start, pos_);
  }

  // `quote_at` points at the opening quote; the token starts at `start` to
  // include any encoding prefix.
  void lex_quoted(std::size_t start, std::size_t quote_at, char quote, TokenClass cls) {
    pos_ = quote_at + 1;
    while (pos_ < text_.size()) {
      const char c = text_[pos_];
      if (c == '\\') {
        pos_ += 2;
        continue;
      }
      if (c == '\n') break;
      if (c == quote) {
        ++pos_;
        emit(cls, start, pos_);
        return;
      }
      ++pos_;
    }
    throw LexError(LexError::Kind::unterminated_literal, start);
  }

  void lex_raw_string(std::size_t start) {
    const std::size_t open = text_.find('(', pos_ + 1);
    if (open == std::string_view::npos) {
      throw LexError(LexError::Kind::unterminated_literal, start);
    }
    const std::string closing =
        ")" + std::string(text_.substr(pos_ + 1, open - pos_ - 1)) + "\"";
    const auto end = text_.find(closing, open + 1);
    if (end == std::string_view::npos) {
      throw LexError(LexError::Kind::unterminated_literal, start);
    }
    pos_ = end + closing.size();
    emit(TokenClass::string_literal, start, pos_);
  }

  void lex_symbol() {
    const std::string_view rest = text_.substr(pos_);
    for (auto op : kOperators) {
      if (rest.substr(0, op.size()) == op) {
        emit(classify_symbol(op), pos_, pos_ + op.size());
        pos_ += op.size();
        return;
      }
    }
    // Single byte, or a whole UTF-8 sequence is never reached here since
    // bytes >= 0x80 start identifiers.
    emit(classify_symbol(rest.substr(0, 1)), pos_, pos_ + 1);
    ++pos_;
  }

  std::string_view text_;
  TokenStream& out_;
  std::size_t pos_ = 0;
};

void lex_generic(std::string_view text, TokenStream& out) {
  std::size_t pos = 0;
  while (pos < text.size()) {
    const unsigned char c = text[pos];
    if (is_space(c)) {
      ++pos;
      continue;
    }
    if (is_ident_char(c)) {
      const std::size_t start = pos;
      while (pos < text.size() && is_ident_char(text[pos])) ++pos;
      out.tokens.push_back(Token{is_digit(c) ? TokenClass::number : TokenClass::identifier,
                                 std::string(text.substr(start, pos - start))});
      continue;
    }
    out.tokens.push_back(Token{classify_symbol(text.substr(pos, 1)), std::string(1, text[pos])});
    ++pos;
  }
}

}  // namespace

std::string_view to_string(TokenClass c) {
  switch (c) {
    case TokenClass::identifier: return "identifier";
    case TokenClass::keyword: return "keyword";
    case TokenClass::number: return "number";
    case TokenClass::string_literal: return "string-literal";
    case TokenClass::char_literal: return "char-literal";
    case TokenClass::op: return "operator";
    case TokenClass::punctuator: return "punctuator";
  }
  return "?";
}

Dialect parse_dialect(std::string_view name) {
  if (name == "cpp-like" || name == "cpp") return Dialect::cpp_like;
  if (name == "generic") return Dialect::generic;
  throw std::invalid_argument("unknown tokenizer dialect '" + std::string(name) + "'");
}

std::string_view to_string(Dialect d) {
  return d == Dialect::cpp_like ? "cpp-like" : "generic";
}

LexError::LexError(Kind kind, std::size_t offset)
    : std::runtime_error((kind == Kind::unterminated_comment ? "unterminated comment"
                                                             : "unterminated literal") +
                         std::string(" at byte offset ") + std::to_string(offset)),
      kind_(kind),
      offset_(offset) {}

TokenStream tokenize(std::string_view text, Dialect dialect, std::string source_id) {
  TokenStream out;
  out.source_id = std::move(source_id);
  if (dialect == Dialect::cpp_like) {
    CppLexer(text, out).run();
  } else {
    lex_generic(text, out);
  }
  return out;
}

std::size_t count_tokens(const TokenStream& stream) { return stream.tokens.size(); }

bool is_keyword(std::string_view word) { return keywords().contains(word); }

bool is_valid_identifier(std::string_view word) {
  if (word.empty() || !is_ident_start(word[0]) || static_cast<unsigned char>(word[0]) >= 0x80) {
    return false;
  }
  return std::all_of(word.begin(), word.end(), [](unsigned char c) {
    return c < 0x80 && is_ident_char(c);
  });
}

TokenStream rename_identifiers(const TokenStream& stream, const Renaming& mapping) {
  std::set<std::string> present;
  for (const auto& t : stream.tokens) {
    if (t.cls == TokenClass::identifier) present.insert(t.text);
  }

  std::map<std::string, std::string> image;  // target -> source identifier
  for (const auto& id : present) {
    auto it = mapping.find(id);
    const std::string& target = it == mapping.end() ? id : it->second;
    if (it != mapping.end()) {
      if (is_keyword(target)) {
        throw RenameError(RenameError::Kind::collision_with_keyword,
                          "rename target '" + target + "' is a keyword");
      }
      if (!is_valid_identifier(target)) {
        throw RenameError(RenameError::Kind::invalid_target,
                          "rename target '" + target + "' is not an identifier");
      }
    }
    auto [pos, inserted] = image.emplace(target, id);
    if (!inserted) {
      throw RenameError(RenameError::Kind::non_injective_mapping,
                        "identifiers '" + pos->second + "' and '" + id + "' both map to '" +
                            target + "'");
    }
  }

  TokenStream out = stream;
  for (auto& t : out.tokens) {
    if (t.cls != TokenClass::identifier) continue;
    if (auto it = mapping.find(t.text); it != mapping.end()) t.text = it->second;
  }
  return out;
}

std::string render(const TokenStream& stream) {
  std::string out;
  for (const auto& t : stream.tokens) {
    if (!out.empty()) out += ' ';
    out += t.text;
  }
  return out;
}

}  // namespace mdlgauge::lex
