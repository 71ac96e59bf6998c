#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <variant>

#include "ifc/cg/eval.hpp"
#include "ifc/context.hpp"
#include "ifc/fg/eval.hpp"
#include "ifc/surface/syntax.hpp"
#include "ifc/surface/values.hpp"

namespace ifc::surface {

enum class Calculus { Fg, Cg };
const char* calculus_name(Calculus c);
std::optional<Calculus> calculus_from_path(std::string_view path);

// Per-input literal: evaluated at `at` (default: the program pc) in the store built so far, with
// earlier inputs in scope. Coarse-grained literals may be pure or LIO computations.
template <class Expr>
struct InputDecl {
  std::string name;
  Type type;
  Expr literal;
  std::optional<Label> at;
};

// File format, in order:
//   (calculus fg|cg)? (lattice SPEC)? (pc LABEL)? (input NAME TYPE EXPR LABEL?)* (main EXPR (: TYPE)?)
struct SourceProgram {
  Calculus calculus = Calculus::Fg;
  std::string lattice_spec = "two-point";
  Lattice lattice = Lattice::two_point();
  Label pc;
  std::vector<InputDecl<fg::Expr>> fg_inputs;
  std::vector<InputDecl<cg::Expr>> cg_inputs;
  fg::Expr fg_main;
  cg::Expr cg_main;
  std::optional<Type> declared;  // checked type of main (FG: τ, CG: the τ of LIO τ)

  std::vector<std::string> input_names() const;
  Context context() const;  // input types, latest input innermost
};

struct ProgramOptions {
  std::optional<Calculus> calculus;     // from the file extension; a header must agree
  std::optional<std::string> lattice;   // overrides the header
  std::optional<std::string> pc;        // overrides the header
};

SourceProgram parse_program(std::string_view text, const ProgramOptions& opts = {});
// Typechecks inputs and main; returns the type of main (CG: including LIO). Throws TypeError.
Type check_program(const SourceProgram& p);
std::string print_program(const SourceProgram& p);

struct FgSetup {
  fg::Store store;
  fg::Heap heap;
  fg::Env env;
};
struct CgSetup {
  cg::Store store;
  cg::Heap heap;
  cg::Env env;
};

class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

FgSetup build_fg_inputs(const SourceProgram& p, std::uint64_t fuel);
CgSetup build_cg_inputs(const SourceProgram& p, std::uint64_t fuel);

struct RunOptions {
  std::uint64_t fuel = 1'000'000;
  Mutation mutation = Mutation::None;
};

struct RunResult {
  Calculus calculus = Calculus::Fg;
  std::variant<fg::Outcome, cg::Outcome> outcome;
  Label pc;  // initial pc
  double duration = 0;
  Json to_json(const Lattice& lat) const;
  std::string to_text(const Lattice& lat) const;
  bool aborted() const;
};

RunResult run_program(const SourceProgram& p, const RunOptions& opts = {});

// Translated program in the other calculus: inputs and main are translated term by term. A
// coarse-grained main becomes the fine-grained application of its suspension to unit.
SourceProgram translate_program(const SourceProgram& p);

}  // namespace ifc::surface
