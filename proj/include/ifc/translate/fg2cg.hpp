#pragma once

#include "ifc/cg/value.hpp"
#include "ifc/context.hpp"
#include "ifc/fg/value.hpp"

namespace ifc::translate {

// Every fine-grained type becomes Labeled of its raw translation.
Type fg2cg_type(const Type& t);
Type fg2cg_raw_type(const Type& t);
Context fg2cg_context(const Context& ctx);

// Result has type LIO ⟨⟨τ⟩⟩ and leaves pc unchanged.
cg::Expr fg2cg_expr(const fg::Expr& e);
// The coarse-grained function a fine-grained Lam node becomes.
cg::Expr fg2cg_lambda(const fg::Expr& lam);

cg::Value fg2cg_value(const fg::Value& v);
cg::Value fg2cg_raw(const fg::RawPtr& r);
cg::Env fg2cg_env(const fg::Env& env);
cg::Store fg2cg_store(const fg::Store& s);
cg::Heap fg2cg_heap(const fg::Heap& h);
cg::Final fg2cg_final(const fg::Final& c, Label pc);

}  // namespace ifc::translate
