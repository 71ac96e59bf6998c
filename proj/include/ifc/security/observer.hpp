#pragma once

#include "ifc/lattice.hpp"

namespace ifc {

// The attacker level A that parameterizes every L-equivalence.
struct Observer {
  Lattice lattice;
  Label attacker;
  bool sees(Label l) const { return lattice.leq(l, attacker); }
};

}  // namespace ifc
