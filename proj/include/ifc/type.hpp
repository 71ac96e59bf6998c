#pragma once

#include <memory>
#include <cstdint>
#include <string>

namespace ifc {

enum class RefMode : std::uint8_t { Insensitive, Sensitive };

inline const char* ref_mode_tag(RefMode m) { return m == RefMode::Insensitive ? "I" : "S"; }

// Shared type language. FG uses the subset without Lio/Labeled.
class Type {
 public:
  enum class Kind : std::uint8_t { Unit, Label, Fun, Sum, Prod, Ref, Lio, Labeled };

  Type();  // unit
  static Type unit();
  static Type label();
  static Type boolean();  // unit + unit
  static Type fun(Type from, Type to);
  static Type sum(Type left, Type right);
  static Type prod(Type first, Type second);
  static Type ref(RefMode mode, Type content);
  static Type lio(Type result);
  static Type labeled(Type content);

  Kind kind() const;
  RefMode mode() const;
  const Type& arg(std::size_t i) const;  // components in constructor order
  const Type& content() const { return arg(0); }

  bool is(Kind k) const { return kind() == k; }
  bool is_bool() const;
  bool fg_only() const;  // contains no Lio/Labeled
  std::size_t size() const;

  friend bool operator==(const Type& a, const Type& b);
  std::string to_string() const;

 private:
  struct Node;
  static Type make(Kind k, RefMode m, Type a, Type b, int arity);
  explicit Type(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

}  // namespace ifc
