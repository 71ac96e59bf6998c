#pragma once

#include <memory>
#include <variant>
#include <vector>

#include "ifc/env.hpp"
#include "ifc/fg/expr.hpp"
#include "ifc/store.hpp"

namespace ifc::fg {

class Raw;

// Shared handle to an immutable raw value; equality is structural.
class RawPtr {
 public:
  RawPtr() = default;
  RawPtr(std::shared_ptr<const Raw> p) : p_(std::move(p)) {}
  const Raw& operator*() const { return *p_; }
  const Raw* operator->() const { return p_.get(); }
  const Raw* get() const { return p_.get(); }
  explicit operator bool() const { return p_ != nullptr; }
  friend bool operator==(const RawPtr& a, const RawPtr& b);

 private:
  std::shared_ptr<const Raw> p_;
};

// An intrinsically labeled value r^ℓ.
struct Value {
  RawPtr raw;
  Label label;
  friend bool operator==(const Value&, const Value&) = default;
};

using Env = ifc::Env<Value>;

struct UnitV {
  friend bool operator==(const UnitV&, const UnitV&) = default;
};
struct LabelV {
  Label label;
  friend bool operator==(const LabelV&, const LabelV&) = default;
};
struct Closure {
  Expr fn;  // the Lam node
  Env env;
  friend bool operator==(const Closure&, const Closure&) = default;
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
struct FiRef {  // n_ℓ
  std::uint32_t index;
  Label memory;
  friend bool operator==(const FiRef&, const FiRef&) = default;
};
struct FsRef {  // heap address n
  std::uint32_t address;
  friend bool operator==(const FsRef&, const FsRef&) = default;
};

class Raw {
 public:
  using Variant = std::variant<UnitV, LabelV, Closure, InlV, InrV, PairV, FiRef, FsRef>;
  explicit Raw(Variant v) : v_(std::move(v)) {}
  const Variant& variant() const { return v_; }
  template <class T>
  const T* get() const { return std::get_if<T>(&v_); }
  template <class T>
  bool is() const { return std::holds_alternative<T>(v_); }
  friend bool operator==(const Raw& a, const Raw& b) { return a.v_ == b.v_; }

 private:
  Variant v_;
};

inline bool operator==(const RawPtr& a, const RawPtr& b) {
  return a.p_ == b.p_ || (a.p_ && b.p_ && *a.p_ == *b.p_);
}

template <class T>
RawPtr make_raw(T t) { return RawPtr(std::make_shared<const Raw>(Raw::Variant(std::move(t)))); }

inline Value labeled(RawPtr r, Label l) { return Value{std::move(r), l}; }
Value unit_value(Label l);
Value bool_value(bool b, Label inner, Label outer);

// Σ maps labels to memories of raw values; μ holds labeled cells.
using Store = ifc::Store<RawPtr>;
using Heap = std::vector<Value>;

struct Final {
  Store store;
  Heap heap;
  Value value;
  friend bool operator==(const Final&, const Final&) = default;
};

}  // namespace ifc::fg
