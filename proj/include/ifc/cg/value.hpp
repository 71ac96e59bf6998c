#pragma once

#include <memory>
#include <variant>
#include <vector>

#include "ifc/cg/expr.hpp"
#include "ifc/env.hpp"
#include "ifc/store.hpp"

namespace ifc::cg {

class Node;

// Shared handle to an immutable value; equality is structural.
class Value {
 public:
  Value() = default;
  explicit Value(std::shared_ptr<const Node> n) : n_(std::move(n)) {}
  const Node& operator*() const { return *n_; }
  const Node* operator->() const { return n_.get(); }
  explicit operator bool() const { return n_ != nullptr; }
  template <class T>
  const T* get() const;
  template <class T>
  bool is() const { return get<T>() != nullptr; }
  friend bool operator==(const Value& a, const Value& b);

 private:
  std::shared_ptr<const Node> n_;
};

using Env = ifc::Env<Value>;

struct UnitV {
  friend bool operator==(const UnitV&, const UnitV&) = default;
};
struct LabelV {
  Label label;
  friend bool operator==(const LabelV&, const LabelV&) = default;
};
struct FunClosure {
  Expr fn;  // Lam node
  Env env;
  friend bool operator==(const FunClosure&, const FunClosure&) = default;
};
struct ThunkClosure {
  Expr thunk;
  Env env;
  friend bool operator==(const ThunkClosure&, const ThunkClosure&) = default;
};
struct InlV {
  Value v;
  friend bool operator==(const InlV&, const InlV&) = default;
};
struct InrV {
  Value v;
  friend bool operator==(const InrV&, const InrV&) = default;
};
struct PairV {
  Value first, second;
  friend bool operator==(const PairV&, const PairV&) = default;
};
struct LabeledV {
  Label label;
  Value v;
  friend bool operator==(const LabeledV&, const LabeledV&) = default;
};
struct FiRef {
  std::uint32_t index;
  Label memory;
  friend bool operator==(const FiRef&, const FiRef&) = default;
};
struct FsRef {
  std::uint32_t address;
  friend bool operator==(const FsRef&, const FsRef&) = default;
};

class Node {
 public:
  using Variant = std::variant<UnitV, LabelV, FunClosure, ThunkClosure, InlV, InrV, PairV, LabeledV, FiRef, FsRef>;
  explicit Node(Variant v) : v_(std::move(v)) {}
  const Variant& variant() const { return v_; }
  friend bool operator==(const Node& a, const Node& b) { return a.v_ == b.v_; }

 private:
  Variant v_;
};

template <class T>
const T* Value::get() const {
  return n_ ? std::get_if<T>(&n_->variant()) : nullptr;
}

inline bool operator==(const Value& a, const Value& b) {
  return a.n_ == b.n_ || (a.n_ && b.n_ && *a.n_ == *b.n_);
}

template <class T>
Value make(T t) { return Value(std::make_shared<const Node>(Node::Variant(std::move(t)))); }

Value unit_value();
Value bool_value(bool b);
Value labeled(Label l, Value v);

// Heap cells are explicitly labeled values.
struct HeapCell {
  Label label;
  Value v;
  friend bool operator==(const HeapCell&, const HeapCell&) = default;
};

using Store = ifc::Store<Value>;
using Heap = std::vector<HeapCell>;

struct Final {
  Store store;
  Heap heap;
  Label pc;
  Value value;
  friend bool operator==(const Final&, const Final&) = default;
};

}  // namespace ifc::cg
