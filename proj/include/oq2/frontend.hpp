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

#include <cstddef>
#include <string>
#include <vector>

#include "oq2/ast.hpp"
#include "oq2/token.hpp"

namespace oq2 {

struct IncludeOptions {
  std::vector<std::string> search_paths;  // tried in order after cwd and the embedded stdlib
  int max_depth = 64;
};

// Records where an include directive sat in the merged stream: the
// directive's own tokens are dropped and the included file's tokens (minus
// its Eof) spliced in starting at token_index. The mark lets the parser keep
// an Include node in the AST at top-level statement boundaries.
struct IncludeMark {
  std::size_t token_index;
  std::string filename;
  SourcePos pos;  // position of the include keyword
};

struct TokenStream {
  std::vector<Token> tokens;          // ends with the root file's Eof
  std::vector<IncludeMark> includes;  // ascending token_index
};

// Loads path ("-" reads stdin), tokenizes, and splices every include
// directive in place, recursively. A file name resolves, in order, to: the
// literal path relative to the working directory, the embedded qelib1.inc,
// then name under each search path. Throws Error(ErrorKind::Include) for an
// unresolvable name, an inclusion cycle, or nesting past opts.max_depth.
TokenStream preprocess_include(const std::string& path, SourceManager& sm,
                               const IncludeOptions& opts = {});

// Same, from in-memory text registered under the given display name.
TokenStream preprocess_text(std::string text, std::string name, SourceManager& sm,
                            const IncludeOptions& opts = {});

// Recursive-descent parse of a preprocessed stream. The version statement
// must be the first statement, must come from the main file, and must name
// version 2.0; included files must not contain one.
Program parse(const TokenStream& stream, const SourceManager& sm);

Program parse_file(const std::string& path, SourceManager& sm,
                   const IncludeOptions& opts = {});
Program parse_text(std::string text, std::string name, SourceManager& sm,
                   const IncludeOptions& opts = {});

// Parses one parameter expression with nothing trailing it.
Expr parse_param_expr(const std::string& text);

}  // namespace oq2
