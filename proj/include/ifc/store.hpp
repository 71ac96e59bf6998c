#pragma once

#include <map>
#include <stdexcept>
#include <vector>

#include "ifc/lattice.hpp"

namespace ifc {

// Label-partitioned store; an absent memory is the empty memory.
template <class Cell>
class Store {
 public:
  using Memory = std::vector<Cell>;

  std::size_t size_of(Label l) const {
    auto it = mems_.find(l);
    return it == mems_.end() ? 0 : it->second.size();
  }

  const Memory& memory(Label l) const {
    static const Memory empty;
    auto it = mems_.find(l);
    return it == mems_.end() ? empty : it->second;
  }

  bool contains(Label l, std::size_t n) const { return n < size_of(l); }

  const Cell& at(Label l, std::size_t n) const {
    if (!contains(l, n)) throw std::out_of_range("dangling flow-insensitive reference");
    return mems_.find(l)->second[n];
  }

  std::size_t append(Label l, Cell c) {
    auto& m = mems_[l];
    m.push_back(std::move(c));
    return m.size() - 1;
  }

  void set(Label l, std::size_t n, Cell c) {
    if (!contains(l, n)) throw std::out_of_range("dangling flow-insensitive reference");
    mems_[l][n] = std::move(c);
  }

  // Labels with a non-empty memory, in label order.
  std::vector<Label> labels() const {
    std::vector<Label> out;
    for (const auto& [l, m] : mems_)
      if (!m.empty()) out.push_back(l);
    return out;
  }

  friend bool operator==(const Store& a, const Store& b) {
    auto la = a.labels();
    if (la != b.labels()) return false;
    for (Label l : la)
      if (!(a.memory(l) == b.memory(l))) return false;
    return true;
  }

 private:
  std::map<Label, Memory> mems_;
};

}  // namespace ifc
