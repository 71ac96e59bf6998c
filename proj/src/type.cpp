#include "ifc/type.hpp"

#include <stdexcept>

namespace ifc {

struct Type::Node {
  Kind kind;
  RefMode mode;
  int arity;
  Type a, b;
  Node(Kind k, RefMode m, int n, Type x, Type y) : kind(k), mode(m), arity(n), a(std::move(x)), b(std::move(y)) {}
};

Type Type::make(Kind k, RefMode m, Type a, Type b, int arity) {
  return Type(std::make_shared<const Node>(k, m, arity, std::move(a), std::move(b)));
}

Type::Type() : node_(nullptr) {}  // null node encodes unit

Type Type::unit() { return Type(); }
Type Type::label() {
  static const Type t = make(Kind::Label, RefMode::Insensitive, Type(), Type(), 0);
  return t;
}
Type Type::boolean() { return sum(unit(), unit()); }
Type Type::fun(Type from, Type to) { return make(Kind::Fun, RefMode::Insensitive, std::move(from), std::move(to), 2); }
Type Type::sum(Type l, Type r) { return make(Kind::Sum, RefMode::Insensitive, std::move(l), std::move(r), 2); }
Type Type::prod(Type f, Type s) { return make(Kind::Prod, RefMode::Insensitive, std::move(f), std::move(s), 2); }
Type Type::ref(RefMode m, Type c) { return make(Kind::Ref, m, std::move(c), Type(), 1); }
Type Type::lio(Type r) { return make(Kind::Lio, RefMode::Insensitive, std::move(r), Type(), 1); }
Type Type::labeled(Type c) { return make(Kind::Labeled, RefMode::Insensitive, std::move(c), Type(), 1); }

Type::Kind Type::kind() const { return node_ ? node_->kind : Kind::Unit; }
RefMode Type::mode() const { return node_ ? node_->mode : RefMode::Insensitive; }

const Type& Type::arg(std::size_t i) const {
  if (!node_ || static_cast<int>(i) >= node_->arity) throw std::out_of_range("type has no such component");
  return i == 0 ? node_->a : node_->b;
}

bool Type::is_bool() const {
  return kind() == Kind::Sum && arg(0).is(Kind::Unit) && arg(1).is(Kind::Unit);
}

bool Type::fg_only() const {
  switch (kind()) {
    case Kind::Unit:
    case Kind::Label: return true;
    case Kind::Lio:
    case Kind::Labeled: return false;
    case Kind::Ref: return arg(0).fg_only();
    default: return arg(0).fg_only() && arg(1).fg_only();
  }
}

std::size_t Type::size() const {
  if (!node_) return 1;
  std::size_t s = 1;
  if (node_->arity >= 1) s += node_->a.size();
  if (node_->arity >= 2) s += node_->b.size();
  return s;
}

bool operator==(const Type& x, const Type& y) {
  if (x.node_ == y.node_) return true;
  if (x.kind() != y.kind() || x.mode() != y.mode()) return false;
  if (!x.node_ || !y.node_) return x.kind() == y.kind();
  if (x.node_->arity >= 1 && !(x.node_->a == y.node_->a)) return false;
  if (x.node_->arity >= 2 && !(x.node_->b == y.node_->b)) return false;
  return true;
}

std::string Type::to_string() const {
  switch (kind()) {
    case Kind::Unit: return "unit";
    case Kind::Label: return "label";
    case Kind::Fun: return "(-> " + arg(0).to_string() + " " + arg(1).to_string() + ")";
    case Kind::Sum:
      if (is_bool()) return "bool";
      return "(+ " + arg(0).to_string() + " " + arg(1).to_string() + ")";
    case Kind::Prod: return "(* " + arg(0).to_string() + " " + arg(1).to_string() + ")";
    case Kind::Ref: return std::string("(ref ") + ref_mode_tag(mode()) + " " + arg(0).to_string() + ")";
    case Kind::Lio: return "(lio " + arg(0).to_string() + ")";
    case Kind::Labeled: return "(labeled " + arg(0).to_string() + ")";
  }
  return "?";
}

}  // namespace ifc
