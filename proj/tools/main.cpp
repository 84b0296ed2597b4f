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

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "oq2/format.hpp"
#include "oq2/frontend.hpp"
#include "oq2/semantics.hpp"
#include "oq2/sim.hpp"
#include "oq2/stdlib.hpp"
#include "oq2/unroll.hpp"

namespace {

// Exit codes: 0 success, 1 language-level error in the program text,
// 2 usage or I/O error.
constexpr int kLanguageError = 1;
constexpr int kUsageError = 2;

oq2::IncludeOptions include_options(const std::vector<std::string>& dirs) {
  oq2::IncludeOptions opts;
  opts.search_paths = dirs;
  if (const char* env = std::getenv("OQASM_PATH")) {
    std::string path(env);
    std::size_t start = 0;
    while (start <= path.size()) {
      std::size_t colon = path.find(':', start);
      if (colon == std::string::npos) colon = path.size();
      if (colon > start) opts.search_paths.push_back(path.substr(start, colon - start));
      start = colon + 1;
    }
  }
  return opts;
}

bool input_readable(const std::string& path) {
  return path == "-" || std::ifstream(path).good();
}

template <typename Fn>
int guarded(const oq2::SourceManager& sm, Fn&& fn) {
  try {
    return fn();
  } catch (const oq2::Error& e) {
    std::cerr << oq2::render_pos(e.pos(), sm.names()) << ": error: " << e.what()
              << "\n";
    return kLanguageError;
  }
}

// Prints diagnostics to stderr; true when the program may be used further.
bool report_check(const oq2::Program& prog, bool deny_warnings, int* exit_code) {
  auto diags = oq2::check(prog);
  for (const auto& d : diags) std::cerr << oq2::render(d, prog) << "\n";
  bool bad = oq2::has_errors(diags) || (deny_warnings && !diags.empty());
  if (bad) *exit_code = kLanguageError;
  return !bad;
}

struct Options {
  std::string input;
  std::vector<std::string> include_dirs;
  bool deny_warnings = false;
  std::string basis;
  bool dump_flat = false;
  std::uint64_t shots = 1024;
  std::optional<std::uint64_t> seed;
  bool exact = false;
  bool dump_state = false;
  bool write = false;
  bool check_only = false;
  std::string target_dir = ".";
};

int cmd_parse(const Options& o) {
  oq2::SourceManager sm;
  return guarded(sm, [&] {
    oq2::Program prog = oq2::parse_file(o.input, sm, include_options(o.include_dirs));
    std::cout << oq2::dump_ast(prog);
    return 0;
  });
}

int cmd_check(const Options& o) {
  oq2::SourceManager sm;
  return guarded(sm, [&] {
    oq2::Program prog = oq2::parse_file(o.input, sm, include_options(o.include_dirs));
    int code = 0;
    report_check(prog, o.deny_warnings, &code);
    return code;
  });
}

int cmd_unroll(const Options& o) {
  oq2::SourceManager sm;
  return guarded(sm, [&] {
    oq2::Program prog = oq2::parse_file(o.input, sm, include_options(o.include_dirs));
    int code = 0;
    if (!report_check(prog, false, &code)) return code;
    std::set<std::string> basis;
    std::size_t start = 0;
    while (start < o.basis.size()) {
      std::size_t comma = o.basis.find(',', start);
      if (comma == std::string::npos) comma = o.basis.size();
      if (comma > start) basis.insert(o.basis.substr(start, comma - start));
      start = comma + 1;
    }
    oq2::FlatCircuit flat = oq2::unroll(prog, basis);
    std::cout << (o.dump_flat ? oq2::dump(flat) : oq2::to_qasm(flat, &prog));
    return 0;
  });
}

int cmd_sim(const Options& o) {
  oq2::SourceManager sm;
  return guarded(sm, [&] {
    oq2::Program prog = oq2::parse_file(o.input, sm, include_options(o.include_dirs));
    int code = 0;
    if (!report_check(prog, false, &code)) return code;
    oq2::FlatCircuit flat = oq2::unroll(prog);
    if (o.exact) {
      std::cout << oq2::distribution_to_json(oq2::enumerate_branches(flat));
    } else if (o.dump_state) {
      std::cout << oq2::statevector_to_json(oq2::run_statevector(flat));
    } else {
      std::cout << oq2::counts_to_json(oq2::simulate(flat, o.shots, o.seed));
    }
    return 0;
  });
}

int cmd_fmt(const Options& o) {
  oq2::SourceManager sm;
  return guarded(sm, [&] {
    oq2::Program prog = oq2::parse_file(o.input, sm, include_options(o.include_dirs));
    std::string canonical = oq2::format(prog);
    if (o.check_only) {
      if (canonical != sm.files[0].text) {
        std::cerr << "would reformat " << sm.files[0].name << "\n";
        return kLanguageError;
      }
      return 0;
    }
    if (o.write) {
      std::ofstream out(o.input, std::ios::binary | std::ios::trunc);
      if (!out) {
        std::cerr << "cannot write '" << o.input << "'\n";
        return kUsageError;
      }
      out << canonical;
      return 0;
    }
    std::cout << canonical;
    return 0;
  });
}

int cmd_install_stdlib(const Options& o) {
  std::filesystem::path target = std::filesystem::path(o.target_dir) / "qelib1.inc";
  std::ofstream out(target, std::ios::binary | std::ios::trunc);
  if (!out) {
    std::cerr << "cannot write '" << target.string() << "'\n";
    return kUsageError;
  }
  out << oq2::qelib1_source();
  std::cerr << "wrote " << target.string() << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"OpenQASM 2.0 toolchain: parse, check, unroll, simulate, format"};
  app.require_subcommand(1);

  Options o;
  int (*action)(const Options&) = nullptr;

  auto add_input = [&](CLI::App* sub) {
    sub->add_option("input", o.input, "program file, or - for stdin")->required();
    sub->add_option("-I,--include-dir", o.include_dirs,
                    "directory searched for include files (repeatable; "
                    "OQASM_PATH adds more)");
  };

  CLI::App* parse = app.add_subcommand("parse", "parse and print the syntax tree");
  add_input(parse);
  parse->callback([&] { action = cmd_parse; });

  CLI::App* chk = app.add_subcommand("check", "parse and run all static checks");
  add_input(chk);
  chk->add_flag("--deny-warnings", o.deny_warnings, "treat warnings as errors");
  chk->callback([&] { action = cmd_check; });

  CLI::App* unroll = app.add_subcommand(
      "unroll", "expand gate calls and broadcasts into builtin operations");
  add_input(unroll);
  unroll->add_option("--basis", o.basis,
                     "comma-separated gate names to keep unexpanded");
  unroll->add_flag("--dump", o.dump_flat,
                   "print the flat wire-level listing instead of program text");
  unroll->callback([&] { action = cmd_unroll; });

  CLI::App* sim = app.add_subcommand("sim", "simulate and print JSON results");
  add_input(sim);
  sim->add_option("--shots", o.shots, "number of samples")
      ->default_val(std::uint64_t{1024})
      ->check(CLI::PositiveNumber);
  sim->add_option("--seed", o.seed, "seed for reproducible sampling");
  CLI::Option* exact =
      sim->add_flag("--exact", o.exact, "exact outcome distribution, no sampling");
  sim->add_flag("--dump-state", o.dump_state,
                "final statevector of a circuit without measurements")
      ->excludes(exact);
  sim->callback([&] { action = cmd_sim; });

  CLI::App* fmt = app.add_subcommand("fmt", "print the program in canonical form");
  add_input(fmt);
  CLI::Option* write = fmt->add_flag("--write", o.write, "rewrite the file in place");
  fmt->add_flag("--check", o.check_only, "exit 1 if the file is not canonical")
      ->excludes(write);
  fmt->callback([&] { action = cmd_fmt; });

  CLI::App* install = app.add_subcommand(
      "install-stdlib", "write the embedded qelib1.inc into a directory");
  install->add_option("dir", o.target_dir, "target directory (default: .)");
  install->callback([&] { action = cmd_install_stdlib; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kUsageError;
  }

  if (action != cmd_install_stdlib) {
    if (o.write && o.input == "-") {
      std::cerr << "--write needs a file, not stdin\n";
      return kUsageError;
    }
    if (!input_readable(o.input)) {
      std::cerr << "cannot open '" << o.input << "'\n";
      return kUsageError;
    }
  }
  return action(o);
}
