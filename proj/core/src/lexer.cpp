#include "lexer.hpp"

#include <array>
#include <cctype>

namespace aeff::detail {

namespace {

constexpr std::array<std::string_view, 20> kKeywords = {
    "fun",   "return", "let",   "in",  "send", "recv",      "promise",
    "rec",   "loop",   "as",    "await", "match", "with",   "inl",
    "inr",   "run",    "unit",  "operation", "type", "expect"};

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'';
}

}  // namespace

bool is_keyword(std::string_view word) {
  for (auto k : kKeywords) {
    if (k == word) return true;
  }
  return false;
}

std::vector<Token> tokenize(std::string_view text) {
  std::vector<Token> out;
  int line = 1;
  int column = 1;
  std::size_t i = 0;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k) {
      if (text[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
      ++i;
    }
  };
  while (i < text.size()) {
    char c = text[i];
    if (c == '#') {
      while (i < text.size() && text[i] != '\n') advance(1);
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    SourceLoc loc{line, column};
    if (ident_start(c)) {
      std::size_t j = i + 1;
      while (j < text.size() && ident_char(text[j])) ++j;
      std::string word(text.substr(i, j - i));
      out.push_back({word == "_" ? TokenKind::Symbol : TokenKind::Ident, word, loc});
      advance(j - i);
      continue;
    }
    auto two = text.substr(i, 2);
    if (two == "->" || two == "||") {
      out.push_back({TokenKind::Symbol, std::string(two), loc});
      advance(2);
      continue;
    }
    static constexpr std::string_view kSingles = "()<>{},:;|!+=";
    if (kSingles.find(c) != std::string_view::npos) {
      out.push_back({TokenKind::Symbol, std::string(1, c), loc});
      advance(1);
      continue;
    }
    std::string shown = static_cast<unsigned char>(c) < 0x20 || static_cast<unsigned char>(c) >= 0x7f
                            ? "byte " + std::to_string(static_cast<unsigned char>(c))
                            : std::string("'") + c + "'";
    throw ParseError(ParseError::Kind::Lexical, loc, "unexpected character " + shown);
  }
  out.push_back({TokenKind::End, "", SourceLoc{line, column}});
  return out;
}

}  // namespace aeff::detail
