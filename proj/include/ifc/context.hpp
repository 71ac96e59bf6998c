#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "ifc/type.hpp"

namespace ifc {

class TypeError : public std::runtime_error {
 public:
  enum class Kind { Mismatch, UnboundVariable, CannotInfer };
  TypeError(Kind kind, std::string location, std::string expected, std::string found);
  Kind kind() const { return kind_; }
  const std::string& location() const { return location_; }
  const std::string& expected() const { return expected_; }
  const std::string& found() const { return found_; }

 private:
  Kind kind_;
  std::string location_, expected_, found_;
};

// Typing context; position 0 is the most recent binding, matching De Bruijn indices.
class Context {
 public:
  Context() = default;
  static Context from_innermost_first(const std::vector<Type>& types);

  std::size_t size() const { return types_.size(); }
  bool empty() const { return types_.empty(); }
  const Type& at(std::size_t i) const { return types_.at(types_.size() - 1 - i); }
  Context push(Type t) const;
  Context drop(const std::vector<std::uint32_t>& positions) const;
  std::vector<Type> innermost_first() const;

 private:
  std::vector<Type> types_;  // back() is position 0
};

}  // namespace ifc
