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

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace oq2 {

// Location of a token in an input file. line and col are 1-based; file
// indexes the SourceManager table (and Program::files after parsing).
struct SourcePos {
  int file = 0;
  int line = 0;
  int col = 0;
};

struct SourceFile {
  std::string name;
  std::string text;
};

// Owns the text of every file touched while assembling one program,
// including files spliced in by include directives. File 0 is the main file.
struct SourceManager {
  std::vector<SourceFile> files;

  int add(std::string name, std::string text) {
    files.push_back({std::move(name), std::move(text)});
    return static_cast<int>(files.size()) - 1;
  }

  std::vector<std::string> names() const {
    std::vector<std::string> out;
    out.reserve(files.size());
    for (const auto& f : files) out.push_back(f.name);
    return out;
  }
};

enum class ErrorKind { Lex, Parse, Include, Eval, Unroll, Sim };

// A language-level failure tied to a source position. what() is the bare
// message; callers render the position with the file table they hold.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, SourcePos pos, const std::string& message)
      : std::runtime_error(message), kind_(kind), pos_(pos) {}

  ErrorKind kind() const { return kind_; }
  SourcePos pos() const { return pos_; }

 private:
  ErrorKind kind_;
  SourcePos pos_;
};

// "file:line:col". Positions outside the table (synthetic errors with no
// source location) render as "<input>".
std::string render_pos(const SourcePos& pos, const std::vector<std::string>& files);

}  // namespace oq2
