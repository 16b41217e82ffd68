#pragma once

#include <cstddef>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace mdlgauge::lex {

enum class TokenClass {
  identifier,
  keyword,
  number,
  string_literal,
  char_literal,
  op,
  punctuator,
};

std::string_view to_string(TokenClass c);

struct Token {
  TokenClass cls;
  std::string text;

  friend bool operator==(const Token&, const Token&) = default;
};

struct TokenStream {
  std::vector<Token> tokens;
  std::string source_id;

  std::size_t size() const { return tokens.size(); }
  bool operator==(const TokenStream& o) const { return tokens == o.tokens; }
};

enum class Dialect { cpp_like, generic };

// Accepts "cpp-like"/"cpp" and "generic"; throws std::invalid_argument otherwise.
Dialect parse_dialect(std::string_view name);
std::string_view to_string(Dialect d);

class LexError : public std::runtime_error {
 public:
  enum class Kind { unterminated_comment, unterminated_literal };

  LexError(Kind kind, std::size_t offset);

  Kind kind() const { return kind_; }
  // Byte offset of the opening delimiter.
  std::size_t offset() const { return offset_; }

 private:
  Kind kind_;
  std::size_t offset_;
};

/// Splits source text into lexical tokens, discarding comments and
/// whitespace. The cpp-like dialect uses maximal munch over a fixed operator
/// table (see kOperators in lexcount.cpp); numeric literals follow the
/// preprocessing-number rule, so "0.0f" and "1e-5" are single tokens.
///
/// Keywords get their own class but count exactly like identifiers.
TokenStream tokenize(std::string_view text, Dialect dialect = Dialect::cpp_like,
                     std::string source_id = {});

std::size_t count_tokens(const TokenStream& stream);

bool is_keyword(std::string_view word);
bool is_valid_identifier(std::string_view word);

class RenameError : public std::invalid_argument {
 public:
  enum class Kind { collision_with_keyword, non_injective_mapping, invalid_target };

  RenameError(Kind kind, const std::string& what) : std::invalid_argument(what), kind_(kind) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

using Renaming = std::map<std::string, std::string>;

// Replaces identifier tokens per `mapping`. The effective renaming must stay
// injective over the identifiers present, including ones left unmapped.
TokenStream rename_identifiers(const TokenStream& stream, const Renaming& mapping);

// Space-joined token texts; re-tokenizing the result yields the same stream.
std::string render(const TokenStream& stream);

}  // namespace mdlgauge::lex
