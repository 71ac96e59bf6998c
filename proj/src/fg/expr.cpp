#include "ifc/fg/expr.hpp"

#include <algorithm>

namespace ifc::fg {

namespace {
Expr mk(Op op, std::vector<Expr> kids = {}) {
  Expr::Node n;
  n.op = op;
  n.kids = std::move(kids);
  return Expr(std::move(n));
}
}  // namespace

Expr var(std::uint32_t i) {
  Expr::Node n;
  n.op = Op::Var;
  n.index = i;
  return Expr(std::move(n));
}

Expr lam(std::optional<Type> param, Expr body) {
  Expr::Node n;
  n.op = Op::Lam;
  n.annot = std::move(param);
  n.kids = {std::move(body)};
  return Expr(std::move(n));
}

Expr app(Expr f, Expr a) { return mk(Op::App, {std::move(f), std::move(a)}); }
Expr unit() { return mk(Op::Unit); }

Expr lbl(Label l) {
  Expr::Node n;
  n.op = Op::Lbl;
  n.label = l;
  return Expr(std::move(n));
}

Expr pair(Expr a, Expr b) { return mk(Op::Pair, {std::move(a), std::move(b)}); }
Expr fst(Expr e) { return mk(Op::Fst, {std::move(e)}); }
Expr snd(Expr e) { return mk(Op::Snd, {std::move(e)}); }

Expr inl(Expr e, std::optional<Type> right) {
  Expr::Node n;
  n.op = Op::Inl;
  n.annot = std::move(right);
  n.kids = {std::move(e)};
  return Expr(std::move(n));
}

Expr inr(Expr e, std::optional<Type> left) {
  Expr::Node n;
  n.op = Op::Inr;
  n.annot = std::move(left);
  n.kids = {std::move(e)};
  return Expr(std::move(n));
}

Expr case_of(Expr s, Expr l, Expr r) { return mk(Op::Case, {std::move(s), std::move(l), std::move(r)}); }
Expr get_label() { return mk(Op::GetLabel); }
Expr label_of(Expr e) { return mk(Op::LabelOf, {std::move(e)}); }
Expr flows_to(Expr a, Expr b) { return mk(Op::FlowsTo, {std::move(a), std::move(b)}); }
Expr taint(Expr l, Expr body) { return mk(Op::Taint, {std::move(l), std::move(body)}); }

Expr new_ref(RefMode m, Expr e) {
  Expr::Node n;
  n.op = Op::New;
  n.mode = m;
  n.kids = {std::move(e)};
  return Expr(std::move(n));
}

Expr read(Expr e) { return mk(Op::Read, {std::move(e)}); }
Expr write(Expr r, Expr v) { return mk(Op::Write, {std::move(r), std::move(v)}); }
Expr label_of_ref(Expr e) { return mk(Op::LabelOfRef, {std::move(e)}); }

Expr wken(std::vector<std::uint32_t> drops, Expr e) {
  std::sort(drops.begin(), drops.end());
  drops.erase(std::unique(drops.begin(), drops.end()), drops.end());
  Expr::Node n;
  n.op = Op::Wken;
  n.drops = std::move(drops);
  n.kids = {std::move(e)};
  return Expr(std::move(n));
}

Expr let_in(Expr bound, Expr body) { return app(lam(std::nullopt, std::move(body)), std::move(bound)); }
Expr seq(Expr first, Expr second) { return let_in(std::move(first), wken({0}, std::move(second))); }
Expr tt() { return inl(unit(), Type::unit()); }
Expr ff() { return inr(unit(), Type::unit()); }
Expr if_then_else(Expr c, Expr a, Expr b) {
  return case_of(std::move(c), wken({0}, std::move(a)), wken({0}, std::move(b)));
}

int binds(Op op, std::size_t child) {
  switch (op) {
    case Op::Lam: return 1;
    case Op::Case: return child == 0 ? 0 : 1;
    default: return 0;
  }
}

const char* op_name(Op op) {
  switch (op) {
    case Op::Var: return "var";
    case Op::Lam: return "lam";
    case Op::App: return "app";
    case Op::Unit: return "unit";
    case Op::Lbl: return "label";
    case Op::Pair: return "pair";
    case Op::Fst: return "fst";
    case Op::Snd: return "snd";
    case Op::Inl: return "inl";
    case Op::Inr: return "inr";
    case Op::Case: return "case";
    case Op::GetLabel: return "get-label";
    case Op::LabelOf: return "label-of";
    case Op::FlowsTo: return "flows";
    case Op::Taint: return "taint";
    case Op::New: return "new";
    case Op::Read: return "!";
    case Op::Write: return ":=";
    case Op::LabelOfRef: return "label-of-ref";
    case Op::Wken: return "wken";
  }
  return "?";
}

}  // namespace ifc::fg
