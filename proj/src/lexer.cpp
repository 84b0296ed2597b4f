// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "oq2/token.hpp"

#include <array>
#include <cctype>
#include <string>

#include "oq2/source.hpp"

namespace oq2 {

namespace {

constexpr std::array<std::string_view, 19> kKeywords = {
    "OPENQASM", "include", "qreg", "creg",  "gate", "opaque", "if",
    "measure",  "reset",   "barrier", "U",  "CX",   "pi",     "sin",
    "cos",      "tan",     "exp",  "ln",    "sqrt",
};

bool is_ident_start(char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z'); }
bool is_ident_char(char c) {
  return is_ident_start(c) || (c >= '0' && c <= '9') || c == '_';
}
bool is_digit(char c) { return c >= '0' && c <= '9'; }

class Lexer {
 public:
  Lexer(std::string_view src, int file) : src_(src), file_(file) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    while (!at_end()) {
      skip_space_and_comments();
      if (at_end()) break;
      out.push_back(next_token());
    }
    out.push_back({TokenKind::Eof, "", pos()});
    return out;
  }

 private:
  std::string_view src_;
  int file_;
  std::size_t i_ = 0;
  int line_ = 1;
  int col_ = 1;

  bool at_end() const { return i_ >= src_.size(); }
  char peek(std::size_t ahead = 0) const {
    return i_ + ahead < src_.size() ? src_[i_ + ahead] : '\0';
  }
  SourcePos pos() const { return {file_, line_, col_}; }

  char advance() {
    char c = src_[i_++];
    if (c == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    return c;
  }

  [[noreturn]] void fail(SourcePos at, const std::string& msg) {
    throw Error(ErrorKind::Lex, at, msg);
  }

  void skip_space_and_comments() {
    while (!at_end()) {
      char c = peek();
      if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
        advance();
      } else if (c == '/' && peek(1) == '/') {
        while (!at_end() && peek() != '\n') advance();
      } else {
        break;
      }
    }
  }

  Token next_token() {
    SourcePos at = pos();
    char c = peek();
    if (static_cast<unsigned char>(c) >= 0x80)
      fail(at, "non-ASCII byte in input");
    if (is_ident_start(c)) return word(at);
    if (is_digit(c) || c == '.') return number(at);
    if (c == '"') return string_literal(at);
    return symbol(at);
  }

  Token word(SourcePos at) {
    std::string text;
    while (!at_end() && is_ident_char(peek())) text.push_back(advance());
    for (auto kw : kKeywords)
      if (text == kw) return {TokenKind::Keyword, text, at};
    if (text[0] >= 'A' && text[0] <= 'Z')
      fail(at, "'" + text + "' is not a reserved word; identifiers must start "
               "with a lowercase letter");
    return {TokenKind::Identifier, text, at};
  }

  // real requires a decimal point; an exponent is consumed only when it is
  // well formed, otherwise it is left for the next token exactly as a
  // longest-match over the literal patterns would.
  Token number(SourcePos at) {
    std::string text;
    bool has_dot = false;
    while (!at_end() && is_digit(peek())) text.push_back(advance());
    if (peek() == '.') {
      has_dot = true;
      text.push_back(advance());
      while (!at_end() && is_digit(peek())) text.push_back(advance());
    }
    if (text == ".") fail(at, "stray '.'");
    if (!has_dot) {
      if (text.size() > 1 && text[0] == '0')
        fail(at, "integer literal with a leading zero");
      return {TokenKind::Integer, text, at};
    }
    if ((peek() == 'e' || peek() == 'E')) {
      std::size_t d = (peek(1) == '+' || peek(1) == '-') ? 2 : 1;
      if (is_digit(peek(d))) {
        text.push_back(advance());  // e
        if (peek() == '+' || peek() == '-') text.push_back(advance());
        while (!at_end() && is_digit(peek())) text.push_back(advance());
      }
    }
    return {TokenKind::Real, text, at};
  }

  Token string_literal(SourcePos at) {
    advance();  // opening quote
    std::string text;
    while (!at_end() && peek() != '"' && peek() != '\n') text.push_back(advance());
    if (at_end() || peek() == '\n') fail(at, "unterminated string");
    advance();  // closing quote
    return {TokenKind::String, text, at};
  }

  Token symbol(SourcePos at) {
    char c = advance();
    switch (c) {
      case '(': case ')': case '[': case ']': case '{': case '}':
      case ';': case ',': case '+': case '-': case '*': case '/':
      case '^': case '>':
        return {TokenKind::Symbol, std::string(1, c), at};
      case '=':
        if (peek() == '=') {
          advance();
          return {TokenKind::Symbol, "==", at};
        }
        fail(at, "stray '='; did you mean '=='?");
      default:
        fail(at, std::string("stray character '") + c + "'");
    }
  }
};

}  // namespace

bool is_keyword(std::string_view word) {
  for (auto kw : kKeywords)
    if (word == kw) return true;
  return false;
}

std::vector<Token> tokenize(std::string_view src, int file) {
  return Lexer(src, file).run();
}

std::string render_pos(const SourcePos& pos, const std::vector<std::string>& files) {
  std::string name = "<input>";
  if (pos.file >= 0 && static_cast<std::size_t>(pos.file) < files.size())
    name = files[pos.file];
  return name + ":" + std::to_string(pos.line) + ":" + std::to_string(pos.col);
}

}  // namespace oq2
