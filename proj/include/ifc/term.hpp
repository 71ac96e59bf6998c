#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

#include "ifc/lattice.hpp"
#include "ifc/type.hpp"

namespace ifc {

// Immutable De Bruijn syntax tree shared by both calculi; Op is the calculus' operator set.
template <class Op>
class Term {
 public:
  struct Node {
    Op op;
    std::vector<Term> kids;
    std::optional<Type> annot;  // binder type (lam) or the other summand (inl/inr)
    Label label;                // label literal
    std::uint32_t index = 0;    // variable
    RefMode mode = RefMode::Insensitive;
    std::vector<std::uint32_t> drops;  // wken, sorted ascending
  };

  Term() = default;
  explicit Term(Node n) : node_(std::make_shared<const Node>(std::move(n))) {}

  Op op() const { return node_->op; }
  std::size_t arity() const { return node_->kids.size(); }
  const Term& operator[](std::size_t i) const { return node_->kids.at(i); }
  const std::vector<Term>& kids() const { return node_->kids; }
  const std::optional<Type>& annot() const { return node_->annot; }
  Label label() const { return node_->label; }
  std::uint32_t index() const { return node_->index; }
  RefMode mode() const { return node_->mode; }
  const std::vector<std::uint32_t>& drops() const { return node_->drops; }
  const Node& node() const { return *node_; }
  bool null() const { return !node_; }
  const void* identity() const { return node_.get(); }

  // Same operator and payload, new children.
  Term with_kids(std::vector<Term> kids) const {
    Node n = *node_;
    n.kids = std::move(kids);
    return Term(std::move(n));
  }

  std::size_t size() const {
    std::size_t s = 1;
    for (const auto& k : node_->kids) s += k.size();
    return s;
  }

  friend bool operator==(const Term& a, const Term& b) {
    if (a.node_ == b.node_) return true;
    if (!a.node_ || !b.node_) return false;
    const Node& x = *a.node_;
    const Node& y = *b.node_;
    if (x.op != y.op || x.index != y.index || x.mode != y.mode || x.label != y.label || x.drops != y.drops ||
        x.annot != y.annot || x.kids.size() != y.kids.size())
      return false;
    for (std::size_t i = 0; i < x.kids.size(); ++i)
      if (!(x.kids[i] == y.kids[i])) return false;
    return true;
  }

 private:
  std::shared_ptr<const Node> node_;
};

}  // namespace ifc
