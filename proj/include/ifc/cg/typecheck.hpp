#pragma once

#include "ifc/cg/expr.hpp"
#include "ifc/context.hpp"

namespace ifc::cg {

Type typecheck(const Context& ctx, const Expr& e);
void check(const Context& ctx, const Expr& e, const Type& expected);

}  // namespace ifc::cg
