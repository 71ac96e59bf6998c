#pragma once

#include <cstdint>
#include <memory>
#include <stdexcept>
#include <vector>

namespace ifc {

// Persistent environment indexed by De Bruijn position (0 = most recent binding).
template <class V>
class Env {
 public:
  Env() = default;

  Env push(V v) const {
    Env e;
    e.top_ = std::make_shared<const Cell>(Cell{std::move(v), top_});
    e.size_ = size_ + 1;
    return e;
  }

  std::size_t size() const { return size_; }
  bool empty() const { return size_ == 0; }

  const V& at(std::size_t i) const {
    if (i >= size_) throw std::out_of_range("unbound variable");
    const Cell* c = top_.get();
    while (i-- > 0) c = c->tail.get();
    return c->head;
  }

  // Removes the listed positions (any order, duplicates ignored). Cost is linear in the largest index.
  Env drop(const std::vector<std::uint32_t>& positions) const {
    if (positions.empty()) return *this;
    std::uint32_t deepest = 0;
    for (auto p : positions) deepest = std::max(deepest, p);
    if (deepest >= size_) throw std::out_of_range("wken drops an unbound variable");
    std::vector<const V*> keep;
    std::shared_ptr<const Cell> rest = top_;
    for (std::uint32_t i = 0; i <= deepest; ++i) {
      bool dropped = false;
      for (auto p : positions) dropped = dropped || p == i;
      if (!dropped) keep.push_back(&rest->head);
      rest = rest->tail;
    }
    Env e;
    e.top_ = rest;
    e.size_ = size_ - (deepest + 1);
    for (auto it = keep.rbegin(); it != keep.rend(); ++it) e = e.push(**it);
    return e;
  }

  // Index 0 first.
  std::vector<V> to_vector() const {
    std::vector<V> out;
    out.reserve(size_);
    for (const Cell* c = top_.get(); c; c = c->tail.get()) out.push_back(c->head);
    return out;
  }

  static Env from_vector(const std::vector<V>& innermost_first) {
    Env e;
    for (auto it = innermost_first.rbegin(); it != innermost_first.rend(); ++it) e = e.push(*it);
    return e;
  }

  template <class F>
  void for_each(F&& f) const {
    for (const Cell* c = top_.get(); c; c = c->tail.get()) f(c->head);
  }

  friend bool operator==(const Env& a, const Env& b) {
    if (a.size_ != b.size_) return false;
    const Cell* x = a.top_.get();
    const Cell* y = b.top_.get();
    while (x && x != y) {
      if (!(x->head == y->head)) return false;
      x = x->tail.get();
      y = y->tail.get();
    }
    return true;
  }

 private:
  struct Cell {
    V head;
    std::shared_ptr<const Cell> tail;
  };
  std::shared_ptr<const Cell> top_;
  std::size_t size_ = 0;
};

}  // namespace ifc
