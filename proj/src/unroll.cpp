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

#include "oq2/unroll.hpp"

#include <map>
#include <string>

#include "oq2/format.hpp"

namespace oq2 {

bool operator==(const Condition& a, const Condition& b) {
  return a.creg == b.creg && a.value == b.value;
}

bool operator==(const FlatInstruction& a, const FlatInstruction& b) {
  return a.kind == b.kind && a.name == b.name && a.params == b.params &&
         a.qubits == b.qubits && a.clbit == b.clbit && a.cond == b.cond;
}

bool operator==(const FlatCircuit& a, const FlatCircuit& b) {
  auto slices_equal = [](const std::vector<RegSlice>& x, const std::vector<RegSlice>& y) {
    if (x.size() != y.size()) return false;
    for (std::size_t i = 0; i < x.size(); ++i)
      if (x[i].name != y[i].name || x[i].offset != y[i].offset || x[i].size != y[i].size)
        return false;
    return true;
  };
  return slices_equal(a.qregs, b.qregs) && slices_equal(a.cregs, b.cregs) &&
         a.instructions == b.instructions;
}

const RegSlice* FlatCircuit::find_creg(const std::string& name) const {
  for (const auto& r : cregs)
    if (r.name == name) return &r;
  return nullptr;
}

namespace {

[[noreturn]] void unroll_fail(SourcePos pos, const std::string& msg) {
  throw Error(ErrorKind::Unroll, pos, msg);
}

class Unroller {
 public:
  Unroller(const Program& prog, const std::set<std::string>& stop)
      : prog_(prog), stop_(stop) {}

  FlatCircuit run() {
    for (const auto& s : prog_.statements) top_statement(s);
    return std::move(out_);
  }

 private:
  const Program& prog_;
  const std::set<std::string>& stop_;
  FlatCircuit out_;
  std::map<std::string, const GateDecl*> gates_;
  std::map<std::string, const OpaqueDecl*> opaques_;
  std::map<std::string, RegSlice> qmap_, cmap_;

  void top_statement(const Statement& s) {
    if (stmt_as<Include>(s)) return;
    if (auto* d = stmt_as<RegDecl>(s)) {
      add_reg(*d, s.pos);
    } else if (auto* g = stmt_as<GateDecl>(s)) {
      gates_[g->name] = g;
    } else if (auto* o = stmt_as<OpaqueDecl>(s)) {
      opaques_[o->name] = o;
    } else if (auto* f = stmt_as<If>(s)) {
      emit_op(*f->op, Condition{f->creg, f->value});
    } else {
      emit_op(s, std::nullopt);
    }
  }

  void add_reg(const RegDecl& d, SourcePos pos) {
    auto& slices = d.quantum ? out_.qregs : out_.cregs;
    std::uint64_t offset = slices.empty() ? 0 : slices.back().offset + slices.back().size;
    if (offset + d.size > 0xFFFFFFFFull) unroll_fail(pos, "register space too large");
    RegSlice slice{d.name, static_cast<std::uint32_t>(offset),
                   static_cast<std::uint32_t>(d.size)};
    slices.push_back(slice);
    (d.quantum ? qmap_ : cmap_)[d.name] = slice;
  }

  const RegSlice& slice_of(const Argument& a, bool quantum) const {
    const auto& m = quantum ? qmap_ : cmap_;
    auto it = m.find(a.reg);
    if (it == m.end()) unroll_fail(a.pos, "use of undeclared register '" + a.reg + "'");
    return it->second;
  }

  // Common register size over the operands, 1 if all are single bits.
  std::uint32_t broadcast_width(const std::vector<const Argument*>& args,
                                bool quantum_last_classical) const {
    std::uint32_t width = 0;
    for (std::size_t i = 0; i < args.size(); ++i) {
      if (args[i]->index) continue;
      bool quantum = !(quantum_last_classical && i + 1 == args.size());
      std::uint32_t size = slice_of(*args[i], quantum).size;
      if (width == 0) width = size;
      else if (width != size)
        unroll_fail(args[i]->pos, "broadcast over registers of different sizes");
    }
    return width == 0 ? 1 : width;
  }

  std::uint32_t wire(const Argument& a, std::uint32_t j, bool quantum) const {
    const RegSlice& s = slice_of(a, quantum);
    return s.offset + (a.index ? *a.index : j);
  }

  std::vector<double> eval_params(const std::vector<Expr>& exprs,
                                  const std::map<std::string, double>& bindings) const {
    std::vector<double> vals;
    vals.reserve(exprs.size());
    for (const auto& e : exprs) vals.push_back(eval(*e, bindings));
    return vals;
  }

  void push(FlatInstruction instr, const std::optional<Condition>& cond) {
    if (cond && instr.kind != FlatInstruction::Kind::Barrier) instr.cond = *cond;
    out_.instructions.push_back(std::move(instr));
  }

  void emit_u(const std::vector<double>& params, std::uint32_t q,
              const std::optional<Condition>& cond) {
    FlatInstruction instr;
    instr.kind = FlatInstruction::Kind::U;
    instr.params = params;
    instr.qubits = {q};
    push(std::move(instr), cond);
  }

  void emit_cx(std::uint32_t c, std::uint32_t t, const std::optional<Condition>& cond) {
    FlatInstruction instr;
    instr.kind = FlatInstruction::Kind::CX;
    instr.qubits = {c, t};
    push(std::move(instr), cond);
  }

  void emit_named(const std::string& name, std::vector<double> params,
                  std::vector<std::uint32_t> qubits,
                  const std::optional<Condition>& cond) {
    FlatInstruction instr;
    instr.kind = FlatInstruction::Kind::Opaque;
    instr.name = name;
    instr.params = std::move(params);
    instr.qubits = std::move(qubits);
    push(std::move(instr), cond);
  }

  void emit_barrier(const std::vector<std::uint32_t>& qubits) {
    FlatInstruction instr;
    instr.kind = FlatInstruction::Kind::Barrier;
    for (std::uint32_t q : qubits) {
      bool dup = false;
      for (std::uint32_t seen : instr.qubits) dup = dup || seen == q;
      if (!dup) instr.qubits.push_back(q);
    }
    out_.instructions.push_back(std::move(instr));
  }

  void emit_op(const Statement& s, const std::optional<Condition>& cond) {
    static const std::map<std::string, double> no_bindings;
    if (auto* u = stmt_as<BuiltinU>(s)) {
      std::vector<double> params = eval_params(u->params, no_bindings);
      std::uint32_t n = broadcast_width({&u->target}, false);
      for (std::uint32_t j = 0; j < n; ++j) emit_u(params, wire(u->target, j, true), cond);
      return;
    }
    if (auto* cx = stmt_as<BuiltinCX>(s)) {
      std::uint32_t n = broadcast_width({&cx->control, &cx->target}, false);
      for (std::uint32_t j = 0; j < n; ++j)
        emit_cx(wire(cx->control, j, true), wire(cx->target, j, true), cond);
      return;
    }
    if (auto* a = stmt_as<Apply>(s)) {
      std::vector<double> params = eval_params(a->params, no_bindings);
      std::vector<const Argument*> args;
      for (const auto& arg : a->args) args.push_back(&arg);
      std::uint32_t n = broadcast_width(args, false);
      for (std::uint32_t j = 0; j < n; ++j) {
        std::vector<std::uint32_t> qubits;
        qubits.reserve(a->args.size());
        for (const auto& arg : a->args) qubits.push_back(wire(arg, j, true));
        expand_call(a->name, params, qubits, cond, s.pos);
      }
      return;
    }
    if (auto* m = stmt_as<Measure>(s)) {
      std::uint32_t n = broadcast_width({&m->src, &m->dst}, true);
      for (std::uint32_t j = 0; j < n; ++j) {
        FlatInstruction instr;
        instr.kind = FlatInstruction::Kind::Measure;
        instr.qubits = {wire(m->src, j, true)};
        instr.clbit = wire(m->dst, j, false);
        push(std::move(instr), cond);
      }
      return;
    }
    if (auto* r = stmt_as<Reset>(s)) {
      std::uint32_t n = broadcast_width({&r->target}, false);
      for (std::uint32_t j = 0; j < n; ++j) {
        FlatInstruction instr;
        instr.kind = FlatInstruction::Kind::Reset;
        instr.qubits = {wire(r->target, j, true)};
        push(std::move(instr), cond);
      }
      return;
    }
    if (auto* b = stmt_as<Barrier>(s)) {
      std::vector<std::uint32_t> qubits;
      for (const auto& arg : b->args) {
        const RegSlice& slice = slice_of(arg, true);
        if (arg.index) {
          qubits.push_back(slice.offset + *arg.index);
        } else {
          for (std::uint32_t k = 0; k < slice.size; ++k) qubits.push_back(slice.offset + k);
        }
      }
      emit_barrier(qubits);
      return;
    }
    unroll_fail(s.pos, "statement cannot be expanded");
  }

  // Inlines one fully indexed gate application, bottoming out at opaque
  // declarations and stop-basis names.
  void expand_call(const std::string& name, const std::vector<double>& params,
                   const std::vector<std::uint32_t>& qubits,
                   const std::optional<Condition>& cond, SourcePos pos) {
    if (stop_.count(name) || opaques_.count(name)) {
      emit_named(name, params, qubits, cond);
      return;
    }
    auto it = gates_.find(name);
    if (it == gates_.end()) unroll_fail(pos, "call of undeclared gate '" + name + "'");
    const GateDecl& g = *it->second;

    std::map<std::string, double> bindings;
    for (std::size_t i = 0; i < g.params.size(); ++i) bindings[g.params[i]] = params[i];
    std::map<std::string, std::uint32_t> wires;
    for (std::size_t i = 0; i < g.qargs.size(); ++i) wires[g.qargs[i]] = qubits[i];
    auto bound = [&](const Argument& a) { return wires.at(a.reg); };

    for (const auto& b : g.body) {
      if (auto* u = stmt_as<BuiltinU>(b)) {
        emit_u(eval_params(u->params, bindings), bound(u->target), cond);
      } else if (auto* cx = stmt_as<BuiltinCX>(b)) {
        emit_cx(bound(cx->control), bound(cx->target), cond);
      } else if (auto* a = stmt_as<Apply>(b)) {
        std::vector<std::uint32_t> inner;
        inner.reserve(a->args.size());
        for (const auto& arg : a->args) inner.push_back(bound(arg));
        expand_call(a->name, eval_params(a->params, bindings), inner, cond, b.pos);
      } else if (auto* bar = stmt_as<Barrier>(b)) {
        std::vector<std::uint32_t> qs;
        for (const auto& arg : bar->args) qs.push_back(bound(arg));
        emit_barrier(qs);
      } else {
        unroll_fail(b.pos, "unexpected statement inside gate body");
      }
    }
  }
};

std::string cond_text(const Condition& c) {
  return "if(" + c.creg + "==" + std::to_string(c.value) + ")";
}

std::string tight_params(const std::vector<double>& params) {
  std::string s;
  for (std::size_t i = 0; i < params.size(); ++i) {
    if (i) s += ",";
    s += format_double(params[i]);
  }
  return s;
}

// Global wire index -> "name[local]" using the register table.
std::string local_ref(const std::vector<RegSlice>& slices, std::uint32_t wire) {
  for (const auto& s : slices)
    if (wire >= s.offset && wire < s.offset + s.size)
      return s.name + "[" + std::to_string(wire - s.offset) + "]";
  return "?[" + std::to_string(wire) + "]";
}

}  // namespace

FlatCircuit unroll(const Program& program, const std::set<std::string>& stop_basis) {
  return Unroller(program, stop_basis).run();
}

std::string dump(const FlatCircuit& circuit) {
  std::string out;
  for (const auto& in : circuit.instructions) {
    std::string line;
    auto qlist = [&](const char* sep = ",") {
      std::string s;
      for (std::size_t i = 0; i < in.qubits.size(); ++i) {
        if (i) s += sep;
        s += "q" + std::to_string(in.qubits[i]);
      }
      return s;
    };
    switch (in.kind) {
      case FlatInstruction::Kind::U:
        line = "U(" + tight_params(in.params) + ") " + qlist();
        break;
      case FlatInstruction::Kind::CX:
        line = "CX " + qlist();
        break;
      case FlatInstruction::Kind::Measure:
        line = "measure " + qlist() + " -> c" + std::to_string(in.clbit);
        break;
      case FlatInstruction::Kind::Reset:
        line = "reset " + qlist();
        break;
      case FlatInstruction::Kind::Barrier:
        line = "barrier " + qlist();
        break;
      case FlatInstruction::Kind::Opaque:
        line = in.name;
        if (!in.params.empty()) line += "(" + tight_params(in.params) + ")";
        line += " " + qlist();
        break;
    }
    line += ";";
    if (in.cond) line += " " + cond_text(*in.cond);
    out += line + "\n";
  }
  return out;
}

std::string to_qasm(const FlatCircuit& circuit, const Program* decls) {
  std::string out = "OPENQASM 2.0;\n";
  for (const auto& r : circuit.qregs)
    out += "qreg " + r.name + "[" + std::to_string(r.size) + "];\n";
  for (const auto& r : circuit.cregs)
    out += "creg " + r.name + "[" + std::to_string(r.size) + "];\n";

  // Opaque instructions need their (transitively required) declarations,
  // re-emitted in source order, which is already call-before-use safe.
  std::set<std::string> needed;
  for (const auto& in : circuit.instructions)
    if (in.kind == FlatInstruction::Kind::Opaque) needed.insert(in.name);
  if (!needed.empty()) {
    if (!decls)
      throw Error(ErrorKind::Unroll, {},
                  "circuit contains named instructions but no declarations were given");
    std::vector<const Statement*> kept;
    for (auto it = decls->statements.rbegin(); it != decls->statements.rend(); ++it) {
      if (auto* g = stmt_as<GateDecl>(*it)) {
        if (!needed.count(g->name)) continue;
        kept.push_back(&*it);
        for (const auto& b : g->body)
          if (auto* a = stmt_as<Apply>(b)) needed.insert(a->name);
      } else if (auto* o = stmt_as<OpaqueDecl>(*it)) {
        if (needed.count(o->name)) kept.push_back(&*it);
      }
    }
    for (auto it = kept.rbegin(); it != kept.rend(); ++it)
      out += format_statement(**it, 0) + "\n";
  }

  for (const auto& in : circuit.instructions) {
    std::string line;
    if (in.cond) line += "if (" + in.cond->creg + " == " +
                         std::to_string(in.cond->value) + ") ";
    auto qubit_list = [&]() {
      std::string s;
      for (std::size_t i = 0; i < in.qubits.size(); ++i) {
        if (i) s += ", ";
        s += local_ref(circuit.qregs, in.qubits[i]);
      }
      return s;
    };
    switch (in.kind) {
      case FlatInstruction::Kind::U:
        line += "U(" + format_double(in.params[0]) + ", " + format_double(in.params[1]) +
                ", " + format_double(in.params[2]) + ") " + qubit_list() + ";";
        break;
      case FlatInstruction::Kind::CX:
        line += "CX " + qubit_list() + ";";
        break;
      case FlatInstruction::Kind::Measure:
        line += "measure " + qubit_list() + " -> " +
                local_ref(circuit.cregs, in.clbit) + ";";
        break;
      case FlatInstruction::Kind::Reset:
        line += "reset " + qubit_list() + ";";
        break;
      case FlatInstruction::Kind::Barrier:
        line += "barrier " + qubit_list() + ";";
        break;
      case FlatInstruction::Kind::Opaque: {
        line += in.name;
        if (!in.params.empty()) {
          line += "(";
          for (std::size_t i = 0; i < in.params.size(); ++i) {
            if (i) line += ", ";
            line += format_double(in.params[i]);
          }
          line += ")";
        }
        line += " " + qubit_list() + ";";
        break;
      }
    }
    out += line + "\n";
  }
  return out;
}

}  // namespace oq2
