#pragma once

#include <variant>

#include "ifc/fg/value.hpp"
#include "ifc/monitor.hpp"

namespace ifc::fg {

struct Outcome {
  std::variant<Final, SecurityAbort, Timeout, Stuck> result;
  std::uint64_t fuel_used = 0;

  const Final* final() const { return std::get_if<Final>(&result); }
  const SecurityAbort* abort() const { return std::get_if<SecurityAbort>(&result); }
  bool timed_out() const { return std::holds_alternative<Timeout>(result); }
  const Stuck* stuck() const { return std::get_if<Stuck>(&result); }
};

// ⟨Σ, μ, e⟩ ⇓θ_pc with a step budget. Each rule application costs one unit of fuel.
Outcome eval(const Lattice& lat, Store store, Heap heap, const Expr& e, const Env& env, Label pc,
             std::uint64_t fuel, Mutation mutation = Mutation::None);

}  // namespace ifc::fg
