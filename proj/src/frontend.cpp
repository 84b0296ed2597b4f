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

#include "oq2/frontend.hpp"

#include <cerrno>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>

#include "oq2/stdlib.hpp"

namespace oq2 {

namespace {

namespace fs = std::filesystem;

std::optional<std::string> read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

// Splices include directives into one token stream. Cycles are detected on
// canonicalized paths; the embedded stdlib uses a reserved key.
class Preprocessor {
 public:
  Preprocessor(SourceManager& sm, const IncludeOptions& opts) : sm_(sm), opts_(opts) {}

  TokenStream run_path(const std::string& path) {
    std::string text;
    std::string display = path;
    if (path == "-") {
      text.assign(std::istreambuf_iterator<char>(std::cin),
                  std::istreambuf_iterator<char>());
      display = "<stdin>";
    } else {
      auto loaded = read_file(path);
      if (!loaded)
        throw Error(ErrorKind::Include, {}, "cannot open '" + path + "'");
      text = std::move(*loaded);
      stack_.push_back(canonical_key(path));
    }
    splice(std::move(text), display, /*root=*/true);
    return std::move(out_);
  }

  TokenStream run_text(std::string text, std::string name) {
    splice(std::move(text), std::move(name), /*root=*/true);
    return std::move(out_);
  }

 private:
  SourceManager& sm_;
  const IncludeOptions& opts_;
  std::vector<std::string> stack_;  // canonical keys of open files
  TokenStream out_;

  static std::string canonical_key(const std::string& path) {
    std::error_code ec;
    fs::path canon = fs::weakly_canonical(path, ec);
    return ec ? path : canon.string();
  }

  void splice(std::string text, std::string display, bool root) {
    int file = sm_.add(std::move(display), std::move(text));
    std::vector<Token> toks = tokenize(sm_.files[file].text, file);
    for (std::size_t i = 0; i + 1 < toks.size(); ++i) {
      Token& t = toks[i];
      if (t.kind == TokenKind::Keyword && t.lexeme == "include") {
        if (toks[i + 1].kind != TokenKind::String)
          throw Error(ErrorKind::Include, t.pos,
                      "expected a quoted file name after 'include'");
        if (i + 2 >= toks.size() || toks[i + 2].kind != TokenKind::Symbol ||
            toks[i + 2].lexeme != ";")
          throw Error(ErrorKind::Include, toks[i + 1].pos,
                      "expected ';' after include file name");
        enter_include(toks[i + 1].lexeme, t.pos);
        i += 2;
        continue;
      }
      out_.tokens.push_back(std::move(t));
    }
    if (root) out_.tokens.push_back(toks.back());  // the Eof
  }

  void enter_include(const std::string& name, SourcePos at) {
    if (static_cast<int>(stack_.size()) >= opts_.max_depth)
      throw Error(ErrorKind::Include, at,
                  "includes nested deeper than " + std::to_string(opts_.max_depth));
    out_.includes.push_back({out_.tokens.size(), name, at});

    std::string text, display, key;
    if (auto direct = read_file(name)) {
      text = std::move(*direct);
      display = name;
      key = canonical_key(name);
    } else if (name == "qelib1.inc") {
      text = std::string(qelib1_source());
      display = "qelib1.inc";
      key = "<qelib1.inc>";
    } else {
      bool found = false;
      for (const auto& dir : opts_.search_paths) {
        fs::path candidate = fs::path(dir) / name;
        if (auto loaded = read_file(candidate.string())) {
          text = std::move(*loaded);
          display = candidate.string();
          key = canonical_key(display);
          found = true;
          break;
        }
      }
      if (!found) {
        std::string tried = "'" + name + "'";
        for (const auto& dir : opts_.search_paths)
          tried += ", '" + (fs::path(dir) / name).string() + "'";
        throw Error(ErrorKind::Include,
                    at, "cannot resolve include \"" + name + "\" (tried " + tried + ")");
      }
    }

    for (const auto& open : stack_)
      if (open == key)
        throw Error(ErrorKind::Include, at, "include cycle through '" + name + "'");
    stack_.push_back(key);
    splice(std::move(text), std::move(display), /*root=*/false);
    stack_.pop_back();
  }
};

class Parser {
 public:
  Parser(const TokenStream& ts, const SourceManager& sm) : ts_(ts), sm_(sm) {}

  Program run() {
    if (ts_.tokens.empty())
      throw Error(ErrorKind::Parse, {}, "empty token stream");
    parse_version();
    while (true) {
      flush_include_marks();
      if (at(TokenKind::Eof)) break;
      prog_.statements.push_back(parse_statement());
    }
    prog_.files = sm_.names();
    return std::move(prog_);
  }

  Expr parse_expression_only() {
    Expr e = parse_expr();
    if (!at(TokenKind::Eof))
      throw Error(ErrorKind::Parse, cur().pos,
                  "unexpected '" + cur().lexeme + "' after expression");
    return e;
  }

 private:
  const TokenStream& ts_;
  const SourceManager& sm_;
  std::size_t i_ = 0;
  std::size_t mark_ = 0;
  Program prog_;

  const Token& cur() const { return ts_.tokens[i_]; }
  bool at(TokenKind k) const { return cur().kind == k; }
  bool at_symbol(std::string_view s) const {
    return cur().kind == TokenKind::Symbol && cur().lexeme == s;
  }
  bool at_keyword(std::string_view s) const {
    return cur().kind == TokenKind::Keyword && cur().lexeme == s;
  }
  Token take() { return ts_.tokens[i_++]; }

  [[noreturn]] void fail(const std::string& expected) {
    const Token& t = cur();
    std::string found = t.kind == TokenKind::Eof ? "end of input" : "'" + t.lexeme + "'";
    throw Error(ErrorKind::Parse, t.pos, "expected " + expected + ", found " + found);
  }

  Token expect_symbol(std::string_view s) {
    if (!at_symbol(s)) fail("'" + std::string(s) + "'");
    return take();
  }
  Token expect_identifier(const std::string& what) {
    if (!at(TokenKind::Identifier)) fail(what);
    return take();
  }

  std::uint64_t expect_nninteger(const std::string& what) {
    if (!at(TokenKind::Integer)) fail(what);
    Token t = take();
    if (t.lexeme.size() > 18)
      throw Error(ErrorKind::Parse, t.pos, "integer literal out of range");
    return std::strtoull(t.lexeme.c_str(), nullptr, 10);
  }

  // Emits Include nodes for marks landing exactly between top-level
  // statements. A mark inside a consumed statement means the directive sat
  // mid-statement; its content is already in that statement, so the
  // directive is dropped and such content formats inlined.
  void flush_include_marks() {
    while (mark_ < ts_.includes.size() && ts_.includes[mark_].token_index <= i_) {
      const IncludeMark& m = ts_.includes[mark_];
      if (m.token_index == i_)
        prog_.statements.push_back({m.pos, Include{m.filename}});
      ++mark_;
    }
  }

  void parse_version() {
    if (!at_keyword("OPENQASM"))
      fail("'OPENQASM <version>;' as the first statement");
    Token kw = take();
    if (kw.pos.file != 0)
      throw Error(ErrorKind::Parse, kw.pos,
                  "included files must not contain a version statement");
    if (!at(TokenKind::Real)) fail("a version number such as 2.0");
    Token ver = take();
    if (std::strtod(ver.lexeme.c_str(), nullptr) != 2.0)
      throw Error(ErrorKind::Parse, ver.pos,
                  "unsupported version '" + ver.lexeme + "'; this tool implements 2.0");
    expect_symbol(";");
  }

  Statement parse_statement() {
    const Token& t = cur();
    if (t.kind == TokenKind::Identifier) return parse_apply();
    if (t.kind != TokenKind::Keyword) fail("a statement");
    const std::string& kw = t.lexeme;
    if (kw == "qreg" || kw == "creg") return parse_reg_decl();
    if (kw == "gate") return parse_gate_decl();
    if (kw == "opaque") return parse_opaque_decl();
    if (kw == "if") return parse_if();
    if (kw == "barrier") return parse_barrier();
    if (kw == "U" || kw == "CX" || kw == "measure" || kw == "reset")
      return parse_qop();
    if (kw == "OPENQASM") {
      if (t.pos.file != 0)
        throw Error(ErrorKind::Parse, t.pos,
                    "included files must not contain a version statement");
      throw Error(ErrorKind::Parse, t.pos, "duplicate version statement");
    }
    if (kw == "include")
      throw Error(ErrorKind::Parse, t.pos, "unresolved include directive");
    fail("a statement");
  }

  // qop := uop | measure | reset. This is what an if-guard may prefix.
  Statement parse_qop() {
    const Token& t = cur();
    if (t.kind == TokenKind::Identifier) return parse_apply();
    if (t.kind == TokenKind::Keyword) {
      if (t.lexeme == "U") return parse_builtin_u();
      if (t.lexeme == "CX") return parse_builtin_cx();
      if (t.lexeme == "measure") return parse_measure();
      if (t.lexeme == "reset") return parse_reset();
    }
    fail("a quantum operation");
  }

  Statement parse_reg_decl() {
    Token kw = take();
    RegDecl d;
    d.quantum = kw.lexeme == "qreg";
    d.name = expect_identifier("a register name").lexeme;
    expect_symbol("[");
    d.size = expect_nninteger("a register size");
    expect_symbol("]");
    expect_symbol(";");
    return {kw.pos, std::move(d)};
  }

  std::vector<std::string> parse_idlist(const std::string& what) {
    std::vector<std::string> names;
    names.push_back(expect_identifier(what).lexeme);
    while (at_symbol(",")) {
      take();
      names.push_back(expect_identifier(what).lexeme);
    }
    return names;
  }

  void parse_signature(std::vector<std::string>& params, std::vector<std::string>& qargs) {
    if (at_symbol("(")) {
      take();
      if (!at_symbol(")")) params = parse_idlist("a parameter name");
      expect_symbol(")");
    }
    qargs = parse_idlist("an argument name");
  }

  Statement parse_gate_decl() {
    Token kw = take();
    GateDecl d;
    d.name = expect_identifier("a gate name").lexeme;
    parse_signature(d.params, d.qargs);
    expect_symbol("{");
    while (!at_symbol("}")) {
      if (at(TokenKind::Eof)) fail("'}'");
      // Grammar restricts bodies to uop/barrier; measure, reset and if are
      // parsed here anyway so the checker can reject them as rule (d) with a
      // better message than a parse error.
      if (at_keyword("barrier"))
        d.body.push_back(parse_barrier());
      else if (at_keyword("if"))
        d.body.push_back(parse_if());
      else
        d.body.push_back(parse_qop());
    }
    take();  // '}'
    return {kw.pos, std::move(d)};
  }

  Statement parse_opaque_decl() {
    Token kw = take();
    OpaqueDecl d;
    d.name = expect_identifier("a gate name").lexeme;
    parse_signature(d.params, d.qargs);
    expect_symbol(";");
    return {kw.pos, std::move(d)};
  }

  Argument parse_argument() {
    Token name = expect_identifier("a register name");
    Argument arg{name.lexeme, std::nullopt, name.pos};
    if (at_symbol("[")) {
      take();
      Token idx = cur();
      std::uint64_t v = expect_nninteger("an index");
      if (v > 0xFFFFFFFFull)
        throw Error(ErrorKind::Parse, idx.pos, "index out of range");
      arg.index = static_cast<std::uint32_t>(v);
      expect_symbol("]");
    }
    return arg;
  }

  std::vector<Argument> parse_anylist() {
    std::vector<Argument> args;
    args.push_back(parse_argument());
    while (at_symbol(",")) {
      take();
      args.push_back(parse_argument());
    }
    return args;
  }

  Statement parse_builtin_u() {
    Token kw = take();
    BuiltinU u;
    expect_symbol("(");
    u.params = parse_explist();
    expect_symbol(")");
    u.target = parse_argument();
    expect_symbol(";");
    return {kw.pos, std::move(u)};
  }

  Statement parse_builtin_cx() {
    Token kw = take();
    BuiltinCX cx;
    cx.control = parse_argument();
    expect_symbol(",");
    cx.target = parse_argument();
    expect_symbol(";");
    return {kw.pos, std::move(cx)};
  }

  Statement parse_measure() {
    Token kw = take();
    Measure m;
    m.src = parse_argument();
    if (!at_symbol("-")) fail("'->'");
    take();
    if (!at_symbol(">")) fail("'->'");
    take();
    m.dst = parse_argument();
    expect_symbol(";");
    return {kw.pos, std::move(m)};
  }

  Statement parse_reset() {
    Token kw = take();
    Reset r;
    r.target = parse_argument();
    expect_symbol(";");
    return {kw.pos, std::move(r)};
  }

  Statement parse_barrier() {
    Token kw = take();
    Barrier b;
    b.args = parse_anylist();
    expect_symbol(";");
    return {kw.pos, std::move(b)};
  }

  Statement parse_apply() {
    Token name = take();
    Apply a;
    a.name = name.lexeme;
    if (at_symbol("(")) {
      take();
      if (!at_symbol(")")) a.params = parse_explist();
      expect_symbol(")");
    }
    a.args = parse_anylist();
    expect_symbol(";");
    return {name.pos, std::move(a)};
  }

  Statement parse_if() {
    Token kw = take();
    If s;
    expect_symbol("(");
    Token reg = expect_identifier("a classical register name");
    s.creg = reg.lexeme;
    s.creg_pos = reg.pos;
    expect_symbol("==");
    s.value = expect_nninteger("a comparison value");
    expect_symbol(")");
    s.op = std::make_unique<Statement>(parse_qop());
    return {kw.pos, std::move(s)};
  }

  std::vector<Expr> parse_explist() {
    std::vector<Expr> list;
    list.push_back(parse_expr());
    while (at_symbol(",")) {
      take();
      list.push_back(parse_expr());
    }
    return list;
  }

  // Precedence, loosest first: + - | * / | unary - | ^ (right) | atoms.
  Expr parse_expr() { return parse_additive(); }

  Expr parse_additive() {
    Expr lhs = parse_multiplicative();
    while (at_symbol("+") || at_symbol("-")) {
      Token op = take();
      Expr node = make_expr(op.lexeme == "+" ? ParamExpr::Kind::Add : ParamExpr::Kind::Sub,
                            op.pos);
      node->lhs = std::move(lhs);
      node->rhs = parse_multiplicative();
      lhs = std::move(node);
    }
    return lhs;
  }

  Expr parse_multiplicative() {
    Expr lhs = parse_unary();
    while (at_symbol("*") || at_symbol("/")) {
      Token op = take();
      Expr node = make_expr(op.lexeme == "*" ? ParamExpr::Kind::Mul : ParamExpr::Kind::Div,
                            op.pos);
      node->lhs = std::move(lhs);
      node->rhs = parse_unary();
      lhs = std::move(node);
    }
    return lhs;
  }

  Expr parse_unary() {
    if (at_symbol("-")) {
      Token op = take();
      Expr node = make_expr(ParamExpr::Kind::Neg, op.pos);
      node->lhs = parse_unary();
      return node;
    }
    return parse_power();
  }

  Expr parse_power() {
    Expr base = parse_atom();
    if (at_symbol("^")) {
      Token op = take();
      Expr node = make_expr(ParamExpr::Kind::Pow, op.pos);
      node->lhs = std::move(base);
      node->rhs = parse_unary();  // right associative; allows a negated exponent
      return node;
    }
    return base;
  }

  Expr parse_atom() {
    const Token& t = cur();
    if (t.kind == TokenKind::Real) {
      Expr e = make_expr(ParamExpr::Kind::Real, t.pos);
      e->real = std::strtod(take().lexeme.c_str(), nullptr);
      return e;
    }
    if (t.kind == TokenKind::Integer) {
      Expr e = make_expr(ParamExpr::Kind::Int, t.pos);
      e->integer = expect_nninteger("an integer");
      return e;
    }
    if (t.kind == TokenKind::Identifier) {
      Expr e = make_expr(ParamExpr::Kind::Var, t.pos);
      e->var = take().lexeme;
      return e;
    }
    if (t.kind == TokenKind::Keyword) {
      if (t.lexeme == "pi") return make_expr(ParamExpr::Kind::Pi, take().pos);
      ParamExpr::Kind fn;
      if (t.lexeme == "sin") fn = ParamExpr::Kind::Sin;
      else if (t.lexeme == "cos") fn = ParamExpr::Kind::Cos;
      else if (t.lexeme == "tan") fn = ParamExpr::Kind::Tan;
      else if (t.lexeme == "exp") fn = ParamExpr::Kind::ExpFn;
      else if (t.lexeme == "ln") fn = ParamExpr::Kind::Ln;
      else if (t.lexeme == "sqrt") fn = ParamExpr::Kind::Sqrt;
      else fail("an expression");
      Expr e = make_expr(fn, take().pos);
      expect_symbol("(");
      e->lhs = parse_expr();
      expect_symbol(")");
      return e;
    }
    if (at_symbol("(")) {
      take();
      Expr e = parse_expr();
      expect_symbol(")");
      return e;
    }
    fail("an expression");
  }
};

}  // namespace

TokenStream preprocess_include(const std::string& path, SourceManager& sm,
                               const IncludeOptions& opts) {
  return Preprocessor(sm, opts).run_path(path);
}

TokenStream preprocess_text(std::string text, std::string name, SourceManager& sm,
                            const IncludeOptions& opts) {
  return Preprocessor(sm, opts).run_text(std::move(text), std::move(name));
}

Program parse(const TokenStream& stream, const SourceManager& sm) {
  return Parser(stream, sm).run();
}

Program parse_file(const std::string& path, SourceManager& sm, const IncludeOptions& opts) {
  TokenStream ts = preprocess_include(path, sm, opts);
  return parse(ts, sm);
}

Program parse_text(std::string text, std::string name, SourceManager& sm,
                   const IncludeOptions& opts) {
  TokenStream ts = preprocess_text(std::move(text), std::move(name), sm, opts);
  return parse(ts, sm);
}

Expr parse_param_expr(const std::string& text) {
  SourceManager sm;
  sm.add("<expr>", text);
  TokenStream ts;
  ts.tokens = tokenize(sm.files[0].text, 0);
  return Parser(ts, sm).parse_expression_only();
}

}  // namespace oq2
