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

#include "oq2/semantics.hpp"

#include <map>
#include <optional>
#include <set>
#include <string>

namespace oq2 {

namespace {

struct SymbolInfo {
  enum class Kind { Qreg, Creg, Gate, Opaque };
  Kind kind;
  std::uint64_t size = 0;     // registers
  std::uint32_t offset = 0;   // registers: global wire offset
  std::size_t nparams = 0;    // subroutines
  std::size_t nqargs = 0;
};

const char* kind_name(SymbolInfo::Kind k) {
  switch (k) {
    case SymbolInfo::Kind::Qreg: return "quantum register";
    case SymbolInfo::Kind::Creg: return "classical register";
    case SymbolInfo::Kind::Gate: return "gate";
    case SymbolInfo::Kind::Opaque: return "opaque gate";
  }
  return "symbol";
}

class Checker {
 public:
  explicit Checker(const Program& prog) : prog_(prog) {}

  std::vector<Diagnostic> run() {
    for (const auto& s : prog_.statements) check_top(s);
    return std::move(diags_);
  }

 private:
  const Program& prog_;
  std::vector<Diagnostic> diags_;
  std::map<std::string, SymbolInfo> symbols_;
  std::uint32_t next_qubit_ = 0;
  std::uint32_t next_clbit_ = 0;

  void error(const char* rule, SourcePos pos, std::string msg) {
    diags_.push_back({Severity::Error, rule, pos, std::move(msg)});
  }
  void warning(const char* rule, SourcePos pos, std::string msg) {
    diags_.push_back({Severity::Warning, rule, pos, std::move(msg)});
  }

  const SymbolInfo* lookup(const std::string& name) const {
    auto it = symbols_.find(name);
    return it == symbols_.end() ? nullptr : &it->second;
  }

  bool declare(const std::string& name, SourcePos pos, SymbolInfo info) {
    if (const SymbolInfo* prior = lookup(name)) {
      error("dup", pos,
            "'" + name + "' is already declared as a " + kind_name(prior->kind));
      return false;
    }
    symbols_.emplace(name, info);
    return true;
  }

  void check_top(const Statement& s) {
    if (stmt_as<Include>(s)) return;
    if (auto* d = stmt_as<RegDecl>(s)) {
      check_reg_decl(*d, s.pos);
    } else if (auto* g = stmt_as<GateDecl>(s)) {
      check_gate_decl(*g, s.pos);
    } else if (auto* o = stmt_as<OpaqueDecl>(s)) {
      check_opaque_decl(*o, s.pos);
    } else if (auto* f = stmt_as<If>(s)) {
      check_if(*f, s.pos);
    } else {
      check_qop(s);
    }
  }

  void check_reg_decl(const RegDecl& d, SourcePos pos) {
    if (d.size == 0)
      error("b", pos, "register '" + d.name + "' must have at least one bit");
    SymbolInfo info;
    info.kind = d.quantum ? SymbolInfo::Kind::Qreg : SymbolInfo::Kind::Creg;
    info.size = d.size;
    std::uint32_t& next = d.quantum ? next_qubit_ : next_clbit_;
    info.offset = next;
    if (declare(d.name, pos, info)) next += static_cast<std::uint32_t>(d.size);
  }

  void check_signature(const std::string& name, const std::vector<std::string>& params,
                       const std::vector<std::string>& qargs, SourcePos pos) {
    std::set<std::string> seen;
    for (const auto& p : params)
      if (!seen.insert(p).second)
        error("dup", pos, "duplicate parameter '" + p + "' in gate '" + name + "'");
    for (const auto& q : qargs)
      if (!seen.insert(q).second)
        error("dup", pos, "duplicate argument '" + q + "' in gate '" + name + "'");
  }

  void check_gate_decl(const GateDecl& g, SourcePos pos) {
    check_signature(g.name, g.params, g.qargs, pos);
    std::set<std::string> params(g.params.begin(), g.params.end());
    std::set<std::string> qargs(g.qargs.begin(), g.qargs.end());
    for (const auto& b : g.body) check_body_statement(g, b, params, qargs);
    SymbolInfo info;
    info.kind = SymbolInfo::Kind::Gate;
    info.nparams = g.params.size();
    info.nqargs = g.qargs.size();
    declare(g.name, pos, info);
  }

  void check_opaque_decl(const OpaqueDecl& o, SourcePos pos) {
    check_signature(o.name, o.params, o.qargs, pos);
    SymbolInfo info;
    info.kind = SymbolInfo::Kind::Opaque;
    info.nparams = o.params.size();
    info.nqargs = o.qargs.size();
    declare(o.name, pos, info);
  }

  // --- gate bodies: rule (d) plus (c) for calls and (h) for repeats ---

  void check_body_expr(const ParamExpr& e, const std::string& gate,
                       const std::set<std::string>& params) {
    if (e.kind == ParamExpr::Kind::Var && !params.count(e.var))
      error("d", e.pos, "'" + e.var + "' is not a parameter of gate '" + gate + "'");
    if (e.lhs) check_body_expr(*e.lhs, gate, params);
    if (e.rhs) check_body_expr(*e.rhs, gate, params);
  }

  void check_body_arg(const Argument& a, const std::string& gate,
                      const std::set<std::string>& qargs) {
    if (a.index)
      error("d", a.pos, "arguments inside a gate body cannot be indexed");
    if (!qargs.count(a.reg))
      error("d", a.pos, "'" + a.reg + "' is not an argument of gate '" + gate + "'");
  }

  void check_body_repeats(const std::vector<Argument>& args) {
    std::set<std::string> seen;
    for (const auto& a : args)
      if (!seen.insert(a.reg).second) {
        error("h", a.pos, "gate operates twice on '" + a.reg + "'");
        return;
      }
  }

  void check_body_statement(const GateDecl& g, const Statement& s,
                            const std::set<std::string>& params,
                            const std::set<std::string>& qargs) {
    if (auto* u = stmt_as<BuiltinU>(s)) {
      if (u->params.size() != 3)
        error("c", s.pos,
              "U expects 3 parameters, got " + std::to_string(u->params.size()));
      for (const auto& e : u->params) check_body_expr(*e, g.name, params);
      check_body_arg(u->target, g.name, qargs);
      return;
    }
    if (auto* cx = stmt_as<BuiltinCX>(s)) {
      check_body_arg(cx->control, g.name, qargs);
      check_body_arg(cx->target, g.name, qargs);
      check_body_repeats({cx->control, cx->target});
      return;
    }
    if (auto* a = stmt_as<Apply>(s)) {
      const SymbolInfo* callee = lookup(a->name);
      if (!callee) {
        error("c", s.pos,
              "gate '" + a->name + "' is not declared at this point"
              " (gates may only call earlier definitions, never themselves)");
      } else if (callee->kind != SymbolInfo::Kind::Gate &&
                 callee->kind != SymbolInfo::Kind::Opaque) {
        error("c", s.pos, "'" + a->name + "' is a " + kind_name(callee->kind) +
                              ", not a gate");
      } else {
        if (a->params.size() != callee->nparams)
          error("c", s.pos, "gate '" + a->name + "' expects " +
                                std::to_string(callee->nparams) + " parameter(s), got " +
                                std::to_string(a->params.size()));
        if (a->args.size() != callee->nqargs)
          error("c", s.pos, "gate '" + a->name + "' expects " +
                                std::to_string(callee->nqargs) + " argument(s), got " +
                                std::to_string(a->args.size()));
      }
      for (const auto& e : a->params) check_body_expr(*e, g.name, params);
      for (const auto& arg : a->args) check_body_arg(arg, g.name, qargs);
      check_body_repeats(a->args);
      return;
    }
    if (auto* b = stmt_as<Barrier>(s)) {
      for (const auto& arg : b->args) check_body_arg(arg, g.name, qargs);
      return;
    }
    // measure, reset and if parse but are not legal body content.
    error("d", s.pos, "only U, CX, gate calls and barrier may appear in a gate body");
  }

  // --- top-level operations ---

  // Emits (unbound) for any identifier: top-level expressions are closed.
  void check_closed_expr(const ParamExpr& e) {
    if (e.kind == ParamExpr::Kind::Var)
      error("unbound", e.pos,
            "'" + e.var + "' is not defined here; only gate bodies may use parameters");
    if (e.lhs) check_closed_expr(*e.lhs);
    if (e.rhs) check_closed_expr(*e.rhs);
  }

  // Resolves a top-level operand to a register of the wanted kind, checking
  // declaration (a), type (e) and index range (a).
  const SymbolInfo* resolve_operand(const Argument& a, bool want_quantum) {
    const SymbolInfo* sym = lookup(a.reg);
    if (!sym) {
      error("a", a.pos, "register '" + a.reg + "' is not declared at this point");
      return nullptr;
    }
    bool is_qreg = sym->kind == SymbolInfo::Kind::Qreg;
    bool is_creg = sym->kind == SymbolInfo::Kind::Creg;
    if (!is_qreg && !is_creg) {
      error("e", a.pos, "'" + a.reg + "' is a " + kind_name(sym->kind) +
                            ", expected a register");
      return nullptr;
    }
    if (want_quantum != is_qreg) {
      error("e", a.pos, want_quantum
                            ? "quantum operation applied to classical register '" +
                                  a.reg + "'"
                            : "expected a classical register, got quantum register '" +
                                  a.reg + "'");
      return nullptr;
    }
    if (a.index && *a.index >= sym->size) {
      error("a", a.pos, "index " + std::to_string(*a.index) + " is out of range for '" +
                            a.reg + "[" + std::to_string(sym->size) + "]'");
      return nullptr;
    }
    return sym;
  }

  // Rules (g) and (h) for one gate application: register operands must share
  // one size, and no expanded application may touch a qubit twice.
  void check_broadcast(const std::vector<const SymbolInfo*>& syms,
                       const std::vector<Argument>& args, SourcePos pos) {
    std::uint64_t reg_size = 0;
    for (std::size_t i = 0; i < args.size(); ++i) {
      if (!syms[i] || args[i].index) continue;
      if (reg_size == 0) {
        reg_size = syms[i]->size;
      } else if (syms[i]->size != reg_size) {
        error("g", pos,
              "broadcast over registers of different sizes (" +
                  std::to_string(reg_size) + " and " + std::to_string(syms[i]->size) +
                  ")");
        return;
      }
    }
    for (const auto* s : syms)
      if (!s) return;  // unresolved operand already diagnosed
    if (args.size() < 2) return;
    std::uint64_t n = reg_size == 0 ? 1 : reg_size;
    for (std::uint64_t j = 0; j < n; ++j) {
      std::set<std::uint64_t> seen;
      for (std::size_t i = 0; i < args.size(); ++i) {
        std::uint64_t wire = syms[i]->offset + (args[i].index ? *args[i].index : j);
        if (!seen.insert(wire).second) {
          error("h", pos, "gate application touches the same qubit twice");
          return;
        }
      }
    }
  }

  void check_if(const If& f, SourcePos pos) {
    const SymbolInfo* sym = lookup(f.creg);
    if (!sym) {
      error("i", f.creg_pos, "'" + f.creg + "' is not declared at this point");
    } else if (sym->kind != SymbolInfo::Kind::Creg) {
      error("i", f.creg_pos,
            "if condition must name a classical register, '" + f.creg + "' is a " +
                kind_name(sym->kind));
    } else if (sym->size < 64 && f.value >= (std::uint64_t{1} << sym->size)) {
      warning("j", pos, "comparison value " + std::to_string(f.value) +
                            " can never match a " + std::to_string(sym->size) +
                            "-bit register");
    }
    check_qop(*f.op);
  }

  void check_qop(const Statement& s) {
    if (auto* u = stmt_as<BuiltinU>(s)) {
      if (u->params.size() != 3)
        error("c", s.pos,
              "U expects 3 parameters, got " + std::to_string(u->params.size()));
      for (const auto& e : u->params) check_closed_expr(*e);
      resolve_operand(u->target, /*want_quantum=*/true);
      return;
    }
    if (auto* cx = stmt_as<BuiltinCX>(s)) {
      std::vector<Argument> args{cx->control, cx->target};
      std::vector<const SymbolInfo*> syms{resolve_operand(args[0], true),
                                          resolve_operand(args[1], true)};
      check_broadcast(syms, args, s.pos);
      return;
    }
    if (auto* a = stmt_as<Apply>(s)) {
      const SymbolInfo* callee = lookup(a->name);
      if (!callee) {
        error("c", s.pos, "gate '" + a->name + "' is not declared at this point");
      } else if (callee->kind != SymbolInfo::Kind::Gate &&
                 callee->kind != SymbolInfo::Kind::Opaque) {
        error("c", s.pos,
              "'" + a->name + "' is a " + kind_name(callee->kind) + ", not a gate");
        callee = nullptr;
      } else {
        if (a->params.size() != callee->nparams)
          error("c", s.pos, "gate '" + a->name + "' expects " +
                                std::to_string(callee->nparams) + " parameter(s), got " +
                                std::to_string(a->params.size()));
        if (a->args.size() != callee->nqargs)
          error("c", s.pos, "gate '" + a->name + "' expects " +
                                std::to_string(callee->nqargs) + " argument(s), got " +
                                std::to_string(a->args.size()));
      }
      for (const auto& e : a->params) check_closed_expr(*e);
      std::vector<const SymbolInfo*> syms;
      for (const auto& arg : a->args) syms.push_back(resolve_operand(arg, true));
      check_broadcast(syms, a->args, s.pos);
      return;
    }
    if (auto* m = stmt_as<Measure>(s)) {
      const SymbolInfo* src = resolve_operand(m->src, /*want_quantum=*/true);
      const SymbolInfo* dst = resolve_operand(m->dst, /*want_quantum=*/false);
      if (!src || !dst) return;
      if (m->src.index.has_value() != m->dst.index.has_value()) {
        error("f", s.pos, "measure must map bit to bit or register to register");
      } else if (!m->src.index && src->size != dst->size) {
        error("f", s.pos, "measure between registers of different sizes (" +
                              std::to_string(src->size) + " and " +
                              std::to_string(dst->size) + ")");
      }
      return;
    }
    if (auto* r = stmt_as<Reset>(s)) {
      resolve_operand(r->target, /*want_quantum=*/true);
      return;
    }
    if (auto* b = stmt_as<Barrier>(s)) {
      for (const auto& arg : b->args) resolve_operand(arg, /*want_quantum=*/true);
      return;
    }
    if (auto* f = stmt_as<If>(s)) {
      check_if(*f, s.pos);
      return;
    }
  }
};

}  // namespace

std::vector<Diagnostic> check(const Program& program) {
  return Checker(program).run();
}

bool has_errors(const std::vector<Diagnostic>& diags) {
  for (const auto& d : diags)
    if (d.severity == Severity::Error) return true;
  return false;
}

std::string render(const Diagnostic& d, const Program& program) {
  const char* sev = d.severity == Severity::Error ? "error" : "warning";
  return render_pos(d.pos, program.files) + ": " + sev + "[" + d.rule +
         "]: " + d.message;
}

}  // namespace oq2
