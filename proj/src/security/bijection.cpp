#include "ifc/security/bijection.hpp"

#include <string>

namespace ifc {

Bijection Bijection::from_pairs(const std::vector<std::pair<Addr, Addr>>& pairs) {
  Bijection b;
  for (auto [x, y] : pairs)
    if (!b.insert(x, y))
      throw NotInjective("pair (" + std::to_string(x) + "," + std::to_string(y) + ") breaks injectivity");
  return b;
}

Bijection Bijection::identity(Addr n) {
  Bijection b;
  for (Addr i = 0; i < n; ++i) b.insert(i, i);
  return b;
}

std::optional<Bijection::Addr> Bijection::forward(Addr a) const {
  auto it = fwd_.find(a);
  if (it == fwd_.end()) return std::nullopt;
  return it->second;
}

std::optional<Bijection::Addr> Bijection::backward(Addr b) const {
  auto it = bwd_.find(b);
  if (it == bwd_.end()) return std::nullopt;
  return it->second;
}

bool Bijection::contains(Addr a, Addr b) const {
  auto f = forward(a);
  return f && *f == b;
}

bool Bijection::insert(Addr a, Addr b) {
  auto f = forward(a);
  auto g = backward(b);
  if (f || g) return f && g && *f == b;
  fwd_[a] = b;
  bwd_[b] = a;
  return true;
}

Bijection Bijection::inverse() const {
  Bijection r;
  r.fwd_ = bwd_;
  r.bwd_ = fwd_;
  return r;
}

bool Bijection::extends(const Bijection& smaller) const {
  for (auto [a, b] : smaller.fwd_)
    if (!contains(a, b)) return false;
  return true;
}

std::vector<std::pair<Bijection::Addr, Bijection::Addr>> Bijection::pairs() const { return {fwd_.begin(), fwd_.end()}; }

bool Bijection::within(std::size_t n1, std::size_t n2) const {
  return (fwd_.empty() || fwd_.rbegin()->first < n1) && (bwd_.empty() || bwd_.rbegin()->first < n2);
}

Bijection compose(const Bijection& outer, const Bijection& inner) {
  Bijection r;
  for (auto [a, b] : inner.pairs())
    if (auto c = outer.forward(b)) r.insert(a, *c);
  return r;
}

}  // namespace ifc
