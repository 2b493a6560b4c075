#ifndef AEFF_SRC_LEXER_HPP
#define AEFF_SRC_LEXER_HPP

#include <string>
#include <string_view>
#include <vector>

#include "aeff/error.hpp"

namespace aeff::detail {

enum class TokenKind { Ident, Symbol, End };

struct Token {
  TokenKind kind;
  std::string text;
  SourceLoc loc;

  bool is(std::string_view symbol) const { return kind != TokenKind::End && text == symbol; }
};

bool is_keyword(std::string_view word);

/// Splits the input into identifiers (keywords included) and symbols. The
/// last token is always End. Throws ParseError(Lexical) on stray characters.
std::vector<Token> tokenize(std::string_view text);

}  // namespace aeff::detail

#endif  // AEFF_SRC_LEXER_HPP
