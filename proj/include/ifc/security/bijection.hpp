#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

namespace ifc {

class NotInjective : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Finite partial bijection between heap addresses.
class Bijection {
 public:
  using Addr = std::uint32_t;

  Bijection() = default;
  static Bijection from_pairs(const std::vector<std::pair<Addr, Addr>>& pairs);  // throws NotInjective
  static Bijection identity(Addr n);

  std::optional<Addr> forward(Addr a) const;
  std::optional<Addr> backward(Addr b) const;
  bool contains(Addr a, Addr b) const;
  // Adds (a,b); false if it conflicts with an existing pair.
  bool insert(Addr a, Addr b);

  Bijection inverse() const;
  bool extends(const Bijection& smaller) const;  // *this ⊇ smaller
  std::vector<std::pair<Addr, Addr>> pairs() const;
  std::size_t size() const { return fwd_.size(); }
  bool empty() const { return fwd_.empty(); }
  // dom ⊆ [0, n1) and rng ⊆ [0, n2)
  bool within(std::size_t n1, std::size_t n2) const;

  friend bool operator==(const Bijection&, const Bijection&) = default;

 private:
  std::map<Addr, Addr> fwd_, bwd_;
};

// outer ∘ inner = {(a, c) | (a, b) ∈ inner, (b, c) ∈ outer}
Bijection compose(const Bijection& outer, const Bijection& inner);

}  // namespace ifc
