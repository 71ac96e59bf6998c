#pragma once

#include <variant>

#include "ifc/cg/value.hpp"
#include "ifc/monitor.hpp"

namespace ifc::cg {

struct Outcome {
  std::variant<Final, SecurityAbort, Timeout, Stuck> result;
  std::uint64_t fuel_used = 0;

  const Final* final() const { return std::get_if<Final>(&result); }
  const SecurityAbort* abort() const { return std::get_if<SecurityAbort>(&result); }
  bool timed_out() const { return std::holds_alternative<Timeout>(result); }
  const Stuck* stuck() const { return std::get_if<Stuck>(&result); }
};

struct PureOutcome {
  std::variant<Value, Timeout, Stuck> result;
  std::uint64_t fuel_used = 0;
  const Value* value() const { return std::get_if<Value>(&result); }
};

// Label-free call-by-value evaluation; thunks suspend into thunk closures. No store, heap or pc.
PureOutcome eval_pure(const Lattice& lat, const Expr& e, const Env& env, std::uint64_t fuel);

// Force: evaluate e to a thunk closure, then run it.
Outcome eval_force(const Lattice& lat, Store store, Heap heap, Label pc, const Expr& e, const Env& env,
                   std::uint64_t fuel, Mutation mutation = Mutation::None);

// Run thunk t directly in env.
Outcome eval_thunk(const Lattice& lat, Store store, Heap heap, Label pc, const Expr& t, const Env& env,
                   std::uint64_t fuel, Mutation mutation = Mutation::None);

}  // namespace ifc::cg
