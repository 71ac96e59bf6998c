#pragma once

#include "ifc/cg/value.hpp"
#include "ifc/fg/value.hpp"
#include "ifc/harness/gen.hpp"
#include "ifc/security/bijection.hpp"

namespace ifc::harness {

struct FgWorld {
  fg::Store store;
  fg::Heap heap;
  fg::Env env;
};

struct CgWorld {
  cg::Store store;
  cg::Heap heap;
  cg::Env env;
};

// k worlds where side i ≈ side i+1 under links[i] at the configured attacker.
// Public positions are shared; secret positions are drawn per side.
template <class World>
struct Inputs {
  std::vector<World> sides;
  std::vector<Bijection> links;
};

using FgInputs = Inputs<FgWorld>;
using CgInputs = Inputs<CgWorld>;

// `types` is innermost first, matching Context::from_innermost_first. Throws std::logic_error if the
// result fails its own equivalence or validity re-check.
FgInputs gen_fg_inputs(Rng& rng, const GenConfig& cfg, const std::vector<Type>& types, int k);
CgInputs gen_cg_inputs(Rng& rng, const GenConfig& cfg, const std::vector<Type>& types, int k);

// Structural typing of runtime values. Closures are checked against their code when the types of
// their captured environment can be recovered, and only by annotation otherwise.
bool fg_value_has_type(const fg::Value& v, const Type& t, const fg::Store& s, const fg::Heap& h);
bool cg_value_has_type(const cg::Value& v, const Type& t, const cg::Store& s, const cg::Heap& h);

}  // namespace ifc::harness
