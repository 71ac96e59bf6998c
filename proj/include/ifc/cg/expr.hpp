#pragma once

#include <optional>
#include <vector>

#include "ifc/term.hpp"

namespace ifc::cg {

enum class Op : std::uint8_t {
  // pure expressions
  Var, Lam, App, Unit, Lbl, Pair, Fst, Snd, Inl, Inr, Case, FlowsTo, Wken,
  // thunks
  Return, Bind, Unlabel, ToLabeled, LabelOf, GetLabel, Taint, New, Read, Write, LabelOfRef,
};

using Expr = Term<Op>;

bool is_thunk(Op op);

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
Expr flows_to(Expr a, Expr b);
Expr wken(std::vector<std::uint32_t> drops, Expr e);

Expr ret(Expr e);
Expr bind(Expr first, Expr rest);  // rest binds the result of first
Expr unlabel(Expr e);
Expr to_labeled(Expr e);
Expr label_of(Expr e);
Expr get_label();
Expr taint(Expr label);
Expr new_ref(RefMode m, Expr e);
Expr read(Expr e);
Expr write(Expr ref, Expr value);
Expr label_of_ref(Expr e);

// Sugar.
Expr seq(Expr first, Expr second);  // bind(first, _. second)
Expr tt();
Expr ff();
Expr if_then_else(Expr c, Expr a, Expr b);

int binds(Op op, std::size_t child);
const char* op_name(Op op);

}  // namespace ifc::cg
