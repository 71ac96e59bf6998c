#pragma once

#include "ifc/cg/value.hpp"
#include "ifc/context.hpp"
#include "ifc/fg/value.hpp"

namespace ifc::translate {

// Labeled τ becomes label × ⟦τ⟧ and LIO τ becomes unit → ⟦τ⟧.
Type cg2fg_type(const Type& t);
Context cg2fg_context(const Context& ctx);


fg::Expr cg2fg_expr(const cg::Expr& e);
// Fine-grained term a coarse-grained thunk computes, run by applying it to unit.
fg::Expr cg2fg_thunk_body(const cg::Expr& t);
// Suspension λ_:unit. wken{0} body that a thunk expression becomes.
fg::Expr cg2fg_suspension(const cg::Expr& t);
fg::Expr cg2fg_lambda(const cg::Expr& lam);

// Values are translated at the label of their context.
fg::Value cg2fg_value(const cg::Value& v, Label at);
fg::Env cg2fg_env(const cg::Env& env, Label pc);
fg::Store cg2fg_store(const cg::Store& s);
fg::Heap cg2fg_heap(const cg::Heap& h);

}  // namespace ifc::translate
