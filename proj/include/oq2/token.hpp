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

#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "oq2/source.hpp"

namespace oq2 {

enum class TokenKind {
  Keyword,     // reserved word, including U, CX, pi and the unary functions
  Identifier,  // [a-z][A-Za-z0-9_]*
  Real,        // requires a decimal point; optional exponent
  Integer,     // [1-9][0-9]* | 0
  Symbol,      // one of ( ) [ ] { } ; , + - * / ^ > or the pair ==
  String,      // double-quoted file name; lexeme holds the unquoted text
  Arrow,       // never produced by the lexer; the parser fuses '-' '>'
  Eof,
};

// lexeme holds the exact source spelling (unquoted for String).
struct Token {
  TokenKind kind = TokenKind::Eof;
  std::string lexeme;
  SourcePos pos;
};

bool is_keyword(std::string_view word);

// Splits src into tokens, ending with one Eof token. Comments ("//" to end
// of line) and whitespace are skipped. Throws Error(ErrorKind::Lex) on any
// spelling outside the language: non-ASCII bytes, a capitalized word that is
// not a reserved word, an integer with a leading zero, a lone '=', stray
// characters, or an unterminated string.
std::vector<Token> tokenize(std::string_view src, int file);

}  // namespace oq2
