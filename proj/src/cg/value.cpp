#include "ifc/cg/value.hpp"

namespace ifc::cg {

Value unit_value() { return make(UnitV{}); }
Value bool_value(bool b) { return b ? make(InlV{unit_value()}) : make(InrV{unit_value()}); }
Value labeled(Label l, Value v) { return make(LabeledV{l, std::move(v)}); }

}  // namespace ifc::cg
