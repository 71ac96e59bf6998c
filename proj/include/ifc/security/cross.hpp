#pragma once

#include "ifc/cg/value.hpp"
#include "ifc/fg/value.hpp"

namespace ifc::cross {

// Fine-grained data related to coarse-grained data at level pc, ignoring extra label annotations.
bool ceq(const Lattice& lat, Label pc, const fg::Value& x, const cg::Value& y);
bool ceq(const Lattice& lat, Label pc, const fg::RawPtr& x, const cg::Value& y);
bool ceq(const Lattice& lat, Label pc, const fg::Env& x, const cg::Env& y);

bool state_rel(const Lattice& lat, const fg::Store& s1, const cg::Store& s2);
bool state_rel(const Lattice& lat, const fg::Heap& h1, const cg::Heap& h2);
// The fine-grained result label must equal the coarse-grained final pc.
bool config_rel(const Lattice& lat, const fg::Final& x, const cg::Final& y);

}  // namespace ifc::cross
