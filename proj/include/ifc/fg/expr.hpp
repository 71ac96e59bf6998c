#pragma once

#include <optional>
#include <vector>

#include "ifc/term.hpp"

namespace ifc::fg {

enum class Op : std::uint8_t {
  Var, Lam, App, Unit, Lbl, Pair, Fst, Snd, Inl, Inr, Case,
  GetLabel, LabelOf, FlowsTo, Taint, New, Read, Write, LabelOfRef, Wken,
};

using Expr = Term<Op>;

Expr var(std::uint32_t i);
Expr lam(std::optional<Type> param, Expr body);
Expr app(Expr f, Expr a);
Expr unit();
Expr lbl(Label l);
Expr pair(Expr a, Expr b);
Expr fst(Expr e);
Expr snd(Expr e);
Expr inl(Expr e, std::optional<Type> right = std::nullopt);
Expr inr(Expr e, std::optional<Type> left = std::nullopt);
Expr case_of(Expr scrutinee, Expr left, Expr right);
Expr get_label();
Expr label_of(Expr e);
Expr flows_to(Expr a, Expr b);
Expr taint(Expr label, Expr body);
Expr new_ref(RefMode m, Expr e);
Expr read(Expr e);
Expr write(Expr ref, Expr value);
Expr label_of_ref(Expr e);
Expr wken(std::vector<std::uint32_t> drops, Expr e);

// Sugar.
Expr let_in(Expr bound, Expr body);  // (λx.body) bound, binder unannotated
Expr seq(Expr first, Expr second);   // let _ = first in second
Expr tt();
Expr ff();
Expr if_then_else(Expr c, Expr a, Expr b);

// Number of variables bound by child i of an operator.
int binds(Op op, std::size_t child);

const char* op_name(Op op);

}  // namespace ifc::fg
