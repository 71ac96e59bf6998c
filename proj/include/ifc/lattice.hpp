#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace ifc {

class LatticeError : public std::runtime_error {
 public:
  enum class Kind { NotAPartialOrder, NoJoinExists, DuplicatePoint, UnknownPoint, CrossLattice, BadSpec };
  LatticeError(Kind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

// A point of some lattice. Default-constructed labels belong to no lattice.
class Label {
 public:
  constexpr Label() = default;
  std::uint32_t lattice_id() const { return lattice_; }
  std::uint32_t index() const { return index_; }
  bool valid() const { return lattice_ != 0; }

  friend bool operator==(Label, Label) = default;
  friend auto operator<=>(Label a, Label b) {
    return std::pair(a.lattice_, a.index_) <=> std::pair(b.lattice_, b.index_);
  }

 private:
  friend class Lattice;
  constexpr Label(std::uint32_t lat, std::uint32_t idx) : lattice_(lat), index_(idx) {}
  std::uint32_t lattice_ = 0;
  std::uint32_t index_ = 0;
};

// Finite join-semilattice, fully tabulated. Immutable and cheap to copy.
class Lattice {
 public:
  static constexpr std::size_t kMaxPoints = 64;

  static Lattice two_point();
  static Lattice powerset(int principals);
  // Reflexive-transitive closure of `order` is taken before validation.
  static Lattice from_order(const std::vector<std::string>& points,
                            const std::vector<std::pair<std::string, std::string>>& order);
  static Lattice from_json(std::string_view text);
  // Builtin name ("two-point", "powerset:k"), inline JSON, or a path to a JSON file.
  static Lattice load(const std::string& spec);

  bool leq(Label a, Label b) const;
  Label join(Label a, Label b) const;

  std::size_t size() const;
  Label point(std::size_t i) const;
  std::vector<Label> points() const;
  const std::string& name(Label l) const;
  std::optional<Label> find(std::string_view name) const;
  Label at(std::string_view name) const;  // throws UnknownPoint
  std::optional<Label> bottom() const;
  std::optional<Label> top() const;
  bool owns(Label l) const;
  const std::string& description() const;

  friend bool operator==(const Lattice& a, const Lattice& b) { return a.impl_ == b.impl_; }

 private:
  struct Impl;
  explicit Lattice(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}
  void check(Label l) const;
  static Lattice build_powerset(int k);
  std::shared_ptr<const Impl> impl_;
};

}  // namespace ifc
