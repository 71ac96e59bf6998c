#include "ifc/fg/value.hpp"

namespace ifc::fg {

Value unit_value(Label l) { return labeled(make_raw(UnitV{}), l); }

Value bool_value(bool b, Label inner, Label outer) {
  Value u = unit_value(inner);
  return b ? labeled(make_raw(InlV{u}), outer) : labeled(make_raw(InrV{u}), outer);
}

}  // namespace ifc::fg
