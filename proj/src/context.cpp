#include "ifc/context.hpp"

#include <algorithm>

namespace ifc {

namespace {
std::string describe(TypeError::Kind k, const std::string& loc, const std::string& exp, const std::string& found) {
  switch (k) {
    case TypeError::Kind::UnboundVariable: return "unbound variable at " + loc + ": " + found;
    case TypeError::Kind::CannotInfer: return "cannot infer a type at " + loc + " (" + exp + ")";
    case TypeError::Kind::Mismatch: break;
  }
  return "type mismatch at " + loc + ": expected " + exp + ", found " + found;
}
}  // namespace

TypeError::TypeError(Kind kind, std::string location, std::string expected, std::string found)
    : std::runtime_error(describe(kind, location, expected, found)),
      kind_(kind),
      location_(std::move(location)),
      expected_(std::move(expected)),
      found_(std::move(found)) {}

Context Context::from_innermost_first(const std::vector<Type>& types) {
  Context c;
  c.types_.assign(types.rbegin(), types.rend());
  return c;
}

Context Context::push(Type t) const {
  Context c = *this;
  c.types_.push_back(std::move(t));
  return c;
}

Context Context::drop(const std::vector<std::uint32_t>& positions) const {
  Context c;
  for (std::size_t k = 0; k < types_.size(); ++k) {
    auto pos = static_cast<std::uint32_t>(types_.size() - 1 - k);
    if (std::find(positions.begin(), positions.end(), pos) == positions.end()) c.types_.push_back(types_[k]);
  }
  return c;
}

std::vector<Type> Context::innermost_first() const { return {types_.rbegin(), types_.rend()}; }

}  // namespace ifc
