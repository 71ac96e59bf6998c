#pragma once

#include "ifc/cg/expr.hpp"
#include "ifc/context.hpp"
#include "ifc/fg/expr.hpp"
#include "ifc/harness/rng.hpp"

namespace ifc::harness {

struct GenConfig {
  Lattice lattice = Lattice::two_point();
  Label attacker = lattice.at("L");
  int size = 20;                 // node budget of generated programs
  int type_depth = 2;
  double secret_bias = 0.5;      // share of labels drawn above the attacker
  double sensitive_refs = 0.5;   // share of references that are flow-sensitive
  int input_count_max = 3;

  std::vector<Label> public_labels() const;
  std::vector<Label> secret_labels() const;
};

// Random label, above the attacker with probability secret_bias when possible.
Label pick_label(Rng& rng, const GenConfig& cfg);
Label pick_label(Rng& rng, const GenConfig& cfg, bool secret);

class FgGen {
 public:
  FgGen(Rng& rng, const GenConfig& cfg) : rng_(rng), cfg_(cfg) {}

  Type type(int depth);
  // Input types lean towards booleans and references so programs have something to leak.
  Type input_type();
  fg::Expr expr(const Context& ctx, const Type& t, int budget);
  // Closed inhabitant of smallest shape.
  fg::Expr canonical(const Type& t);
  // expr() retried until its size fits max_size.
  fg::Expr program(const Context& ctx, const Type& t, int max_size);

 private:
  fg::Expr leaf(const Context& ctx, const Type& t);
  fg::Expr intro(const Context& ctx, const Type& t, int budget);
  fg::Expr label_expr(const Context& ctx, int budget);
  fg::Expr scrutinee(const Context& ctx, const Type& t, int budget);
  // Unit-typed side effect: writes, possibly under secret branches or taint.
  fg::Expr effect(const Context& ctx, int budget);
  fg::Expr write_to_scope(const Context& ctx, int budget);
  // A fresh cell of type t, an effect that may overwrite it, then a read of it.
  fg::Expr cell(const Context& ctx, const Type& t, int budget);
  std::vector<std::uint32_t> vars_of(const Context& ctx, const Type& t) const;
  std::vector<int> split(int budget, int parts);

  Rng& rng_;
  const GenConfig& cfg_;
};

class CgGen {
 public:
  CgGen(Rng& rng, const GenConfig& cfg) : rng_(rng), cfg_(cfg) {}

  Type type(int depth);
  Type input_type();
  // Pure expression of type t, or nothing when t has no pure inhabitant in ctx.
  std::optional<cg::Expr> pure(const Context& ctx, const Type& t, int budget);
  // Expression of type LIO t.
  cg::Expr lio(const Context& ctx, const Type& t, int budget);
  std::optional<cg::Expr> canonical_pure(const Type& t);
  cg::Expr canonical_lio(const Type& t);
  cg::Expr program(const Context& ctx, const Type& t, int max_size);

  static bool pure_inhabited(const Type& t);

 private:
  struct Operand {
    std::optional<cg::Expr> producer;  // bound before use when the value is not pure
    cg::Expr value;
  };
  Operand operand(Context& ctx, const Type& t, int budget);
  static cg::Expr lift(const Operand& later, cg::Expr e);
  static cg::Expr close(const Operand& op, cg::Expr body);

  std::optional<cg::Expr> pure_step(const Context& ctx, const Type& t, int budget);
  cg::Expr lio_step(const Context& ctx, const Type& t, int budget);
  cg::Expr label_operand(const Context& ctx, int budget);
  cg::Expr effect(const Context& ctx, int budget);
  // Unlabels a secret boolean from scope and branches on it; nothing when none is in scope.
  std::optional<cg::Expr> secret_branch(const Context& ctx, int budget);
  cg::Expr write_to_scope(const Context& ctx, int budget);
  cg::Expr cell(const Context& ctx, const Type& t, int budget);
  std::vector<std::uint32_t> vars_of(const Context& ctx, const Type& t) const;
  std::vector<int> split(int budget, int parts);

  Rng& rng_;
  const GenConfig& cfg_;
};

}  // namespace ifc::harness
