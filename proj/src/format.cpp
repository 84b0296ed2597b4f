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

#include "oq2/format.hpp"

#include <charconv>
#include <string>

namespace oq2 {

// Shortest spelling that round-trips through binary64 and lexes back as one
// numeric token: a digit run is already an integer literal, and scientific
// notation gains ".0" because a real literal requires a decimal point.
std::string format_double(double v) {
  char buf[40];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  std::string s(buf, res.ptr);
  // keep the token a real: "1e-17" -> "1.0e-17", "1" -> "1.0"
  if (s.find('.') == std::string::npos) {
    auto e = s.find_first_of("eE");
    if (e != std::string::npos)
      s.insert(e, ".0");
    else
      s += ".0";
  }
  return s;
}

namespace {

// Binding strength; a child is parenthesized when it binds looser than its
// context requires. '^' is right associative, the others left.
int prec_of(ParamExpr::Kind k) {
  using K = ParamExpr::Kind;
  switch (k) {
    case K::Add:
    case K::Sub:
      return 1;
    case K::Mul:
    case K::Div:
      return 2;
    case K::Neg:
      return 3;
    case K::Pow:
      return 4;
    default:
      return 5;
  }
}

void emit_expr(const ParamExpr& e, int required, std::string& out) {
  using K = ParamExpr::Kind;
  int p = prec_of(e.kind);
  bool paren = p < required;
  if (paren) out += "(";
  switch (e.kind) {
    case K::Real:
      out += format_double(e.real);
      break;
    case K::Int:
      out += std::to_string(e.integer);
      break;
    case K::Pi:
      out += "pi";
      break;
    case K::Var:
      out += e.var;
      break;
    case K::Neg:
      out += "-";
      emit_expr(*e.lhs, 3, out);
      break;
    case K::Add:
    case K::Sub:
      emit_expr(*e.lhs, 1, out);
      out += e.kind == K::Add ? " + " : " - ";
      emit_expr(*e.rhs, 2, out);
      break;
    case K::Mul:
    case K::Div:
      emit_expr(*e.lhs, 2, out);
      out += e.kind == K::Mul ? " * " : " / ";
      emit_expr(*e.rhs, 3, out);
      break;
    case K::Pow:
      emit_expr(*e.lhs, 5, out);
      out += " ^ ";
      emit_expr(*e.rhs, 3, out);
      break;
    case K::Sin:
    case K::Cos:
    case K::Tan:
    case K::ExpFn:
    case K::Ln:
    case K::Sqrt: {
      const char* name = e.kind == K::Sin   ? "sin"
                         : e.kind == K::Cos ? "cos"
                         : e.kind == K::Tan ? "tan"
                         : e.kind == K::ExpFn ? "exp"
                         : e.kind == K::Ln  ? "ln"
                                            : "sqrt";
      out += name;
      out += "(";
      emit_expr(*e.lhs, 1, out);
      out += ")";
      break;
    }
  }
  if (paren) out += ")";
}

std::string argument_text(const Argument& a) {
  std::string s = a.reg;
  if (a.index) s += "[" + std::to_string(*a.index) + "]";
  return s;
}

std::string explist_text(const std::vector<Expr>& list) {
  std::string s;
  for (std::size_t i = 0; i < list.size(); ++i) {
    if (i) s += ", ";
    emit_expr(*list[i], 1, s);
  }
  return s;
}

std::string arglist_text(const std::vector<Argument>& list) {
  std::string s;
  for (std::size_t i = 0; i < list.size(); ++i) {
    if (i) s += ", ";
    s += argument_text(list[i]);
  }
  return s;
}

std::string join(const std::vector<std::string>& names) {
  std::string s;
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (i) s += ", ";
    s += names[i];
  }
  return s;
}

std::string signature_text(const std::string& name, const std::vector<std::string>& params,
                           const std::vector<std::string>& qargs) {
  std::string s = name;
  if (!params.empty()) s += "(" + join(params) + ")";
  s += " " + join(qargs);
  return s;
}

struct StatementPrinter {
  int indent;
  std::string pad() const { return std::string(indent, ' '); }

  std::string operator()(const RegDecl& d) const {
    return pad() + (d.quantum ? "qreg " : "creg ") + d.name + "[" +
           std::to_string(d.size) + "];";
  }
  std::string operator()(const Include& inc) const {
    return pad() + "include \"" + inc.filename + "\";";
  }
  std::string operator()(const GateDecl& d) const {
    std::string head = pad() + "gate " + signature_text(d.name, d.params, d.qargs);
    if (d.body.empty()) return head + " { }";
    std::string s = head + " {\n";
    for (const auto& b : d.body) s += format_statement(b, indent + 2) + "\n";
    return s + pad() + "}";
  }
  std::string operator()(const OpaqueDecl& d) const {
    return pad() + "opaque " + signature_text(d.name, d.params, d.qargs) + ";";
  }
  std::string operator()(const BuiltinU& u) const {
    return pad() + "U(" + explist_text(u.params) + ") " + argument_text(u.target) + ";";
  }
  std::string operator()(const BuiltinCX& cx) const {
    return pad() + "CX " + argument_text(cx.control) + ", " + argument_text(cx.target) +
           ";";
  }
  std::string operator()(const Apply& a) const {
    std::string s = pad() + a.name;
    if (!a.params.empty()) s += "(" + explist_text(a.params) + ")";
    return s + " " + arglist_text(a.args) + ";";
  }
  std::string operator()(const Measure& m) const {
    return pad() + "measure " + argument_text(m.src) + " -> " + argument_text(m.dst) +
           ";";
  }
  std::string operator()(const Reset& r) const {
    return pad() + "reset " + argument_text(r.target) + ";";
  }
  std::string operator()(const Barrier& b) const {
    return pad() + "barrier " + arglist_text(b.args) + ";";
  }
  std::string operator()(const If& s) const {
    return pad() + "if (" + s.creg + " == " + std::to_string(s.value) + ") " +
           format_statement(*s.op, 0);
  }
};

}  // namespace

std::string format_expr(const ParamExpr& e) {
  std::string out;
  emit_expr(e, 1, out);
  return out;
}

std::string format_statement(const Statement& s, int indent) {
  return std::visit(StatementPrinter{indent}, s.node);
}

std::string format(const Program& program) {
  std::string out = "OPENQASM " + std::to_string(program.version_major) + "." +
                    std::to_string(program.version_minor) + ";\n";
  for (const auto& s : program.statements) {
    if (s.pos.file != 0) continue;  // came from an include; its directive line stands in
    out += format_statement(s, 0) + "\n";
  }
  return out;
}

namespace {

struct AstPrinter {
  std::string& out;
  int indent;

  void line(const std::string& text) const {
    out += std::string(indent, ' ') + text + "\n";
  }

  void operator()(const RegDecl& d) const {
    line(std::string(d.quantum ? "qreg" : "creg") + " " + d.name + "[" +
         std::to_string(d.size) + "]");
  }
  void operator()(const Include& inc) const { line("include \"" + inc.filename + "\""); }
  void operator()(const GateDecl& d) const {
    std::string head = "gate " + d.name;
    if (!d.params.empty()) head += " params(" + join(d.params) + ")";
    head += " qubits(" + join(d.qargs) + ")";
    line(head);
    for (const auto& b : d.body) std::visit(AstPrinter{out, indent + 2}, b.node);
  }
  void operator()(const OpaqueDecl& d) const {
    std::string head = "opaque " + d.name;
    if (!d.params.empty()) head += " params(" + join(d.params) + ")";
    line(head + " qubits(" + join(d.qargs) + ")");
  }
  void operator()(const BuiltinU& u) const {
    line("U(" + explist_text(u.params) + ") " + argument_text(u.target));
  }
  void operator()(const BuiltinCX& cx) const {
    line("CX " + argument_text(cx.control) + ", " + argument_text(cx.target));
  }
  void operator()(const Apply& a) const {
    std::string s = "apply " + a.name;
    if (!a.params.empty()) s += "(" + explist_text(a.params) + ")";
    line(s + " " + arglist_text(a.args));
  }
  void operator()(const Measure& m) const {
    line("measure " + argument_text(m.src) + " -> " + argument_text(m.dst));
  }
  void operator()(const Reset& r) const { line("reset " + argument_text(r.target)); }
  void operator()(const Barrier& b) const { line("barrier " + arglist_text(b.args)); }
  void operator()(const If& s) const {
    line("if " + s.creg + " == " + std::to_string(s.value));
    std::visit(AstPrinter{out, indent + 2}, s.op->node);
  }
};

bool args_equal(const std::vector<Argument>& a, const std::vector<Argument>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i].reg != b[i].reg || a[i].index != b[i].index) return false;
  return true;
}

bool exprs_equal(const std::vector<Expr>& a, const std::vector<Expr>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!expr_equal(*a[i], *b[i])) return false;
  return true;
}

bool statement_equal(const Statement& a, const Statement& b);

bool body_equal(const std::vector<Statement>& a, const std::vector<Statement>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!statement_equal(a[i], b[i])) return false;
  return true;
}

bool statement_equal(const Statement& a, const Statement& b) {
  if (a.node.index() != b.node.index()) return false;
  if (auto* x = stmt_as<RegDecl>(a)) {
    auto* y = stmt_as<RegDecl>(b);
    return x->quantum == y->quantum && x->name == y->name && x->size == y->size;
  }
  if (auto* x = stmt_as<Include>(a)) return x->filename == stmt_as<Include>(b)->filename;
  if (auto* x = stmt_as<GateDecl>(a)) {
    auto* y = stmt_as<GateDecl>(b);
    return x->name == y->name && x->params == y->params && x->qargs == y->qargs &&
           body_equal(x->body, y->body);
  }
  if (auto* x = stmt_as<OpaqueDecl>(a)) {
    auto* y = stmt_as<OpaqueDecl>(b);
    return x->name == y->name && x->params == y->params && x->qargs == y->qargs;
  }
  if (auto* x = stmt_as<BuiltinU>(a)) {
    auto* y = stmt_as<BuiltinU>(b);
    return exprs_equal(x->params, y->params) &&
           args_equal({x->target}, {y->target});
  }
  if (auto* x = stmt_as<BuiltinCX>(a)) {
    auto* y = stmt_as<BuiltinCX>(b);
    return args_equal({x->control, x->target}, {y->control, y->target});
  }
  if (auto* x = stmt_as<Apply>(a)) {
    auto* y = stmt_as<Apply>(b);
    return x->name == y->name && exprs_equal(x->params, y->params) &&
           args_equal(x->args, y->args);
  }
  if (auto* x = stmt_as<Measure>(a)) {
    auto* y = stmt_as<Measure>(b);
    return args_equal({x->src, x->dst}, {y->src, y->dst});
  }
  if (auto* x = stmt_as<Reset>(a)) {
    return args_equal({x->target}, {stmt_as<Reset>(b)->target});
  }
  if (auto* x = stmt_as<Barrier>(a)) return args_equal(x->args, stmt_as<Barrier>(b)->args);
  if (auto* x = stmt_as<If>(a)) {
    auto* y = stmt_as<If>(b);
    return x->creg == y->creg && x->value == y->value && statement_equal(*x->op, *y->op);
  }
  return false;
}

}  // namespace

std::string dump_ast(const Program& program) {
  std::string out = "program version " + std::to_string(program.version_major) + "." +
                    std::to_string(program.version_minor) + "\n";
  for (const auto& s : program.statements) std::visit(AstPrinter{out, 2}, s.node);
  return out;
}

bool program_equal(const Program& a, const Program& b) {
  if (a.version_major != b.version_major || a.version_minor != b.version_minor)
    return false;
  if (a.statements.size() != b.statements.size()) return false;
  for (std::size_t i = 0; i < a.statements.size(); ++i)
    if (!statement_equal(a.statements[i], b.statements[i])) return false;
  return true;
}

}  // namespace oq2
