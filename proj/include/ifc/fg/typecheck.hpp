#pragma once

#include "ifc/context.hpp"
#include "ifc/fg/expr.hpp"

namespace ifc::fg {

// Unique type of e under ctx. Throws TypeError.
Type typecheck(const Context& ctx, const Expr& e);
// Checking mode: also accepts unannotated lambdas and injections.
void check(const Context& ctx, const Expr& e, const Type& expected);

}  // namespace ifc::fg
