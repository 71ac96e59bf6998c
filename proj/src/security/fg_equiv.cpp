#include "ifc/security/fg_equiv.hpp"

#include <deque>

namespace ifc::fg {

namespace {

// One traversal serves both checking (fixed β) and witness search (β grows on demand).
class Relater {
 public:
  Relater(const Observer& o, Bijection& b, bool grow) : o_(o), b_(b), grow_(grow) {}

  bool value(const Value& x, const Value& y) {
    bool sx = o_.sees(x.label), sy = o_.sees(y.label);
    if (sx && sy) return x.label == y.label && raw(x.raw, y.raw);
    return !sx && !sy;
  }

  bool raw(const RawPtr& x, const RawPtr& y) {
    const auto& vx = x->variant();
    const auto& vy = y->variant();
    if (vx.index() != vy.index()) return false;
    if (x->is<UnitV>()) return true;
    if (const auto* l = x->get<LabelV>()) return l->label == y->get<LabelV>()->label;
    if (const auto* c = x->get<Closure>()) {
      const auto* d = y->get<Closure>();
      return c->fn == d->fn && env(c->env, d->env);
    }
    if (const auto* l = x->get<InlV>()) return value(l->v, y->get<InlV>()->v);
    if (const auto* r = x->get<InrV>()) return value(r->v, y->get<InrV>()->v);
    if (const auto* p = x->get<PairV>()) {
      const auto* q = y->get<PairV>();
      return value(p->first, q->first) && value(p->second, q->second);
    }
    if (const auto* f = x->get<FiRef>()) {
      const auto* g = y->get<FiRef>();
      bool sx = o_.sees(f->memory), sy = o_.sees(g->memory);
      if (sx && sy) return f->index == g->index && f->memory == g->memory;
      return !sx && !sy;
    }
    return address(x->get<FsRef>()->address, y->get<FsRef>()->address);
  }

  bool env(const Env& x, const Env& y) {
    if (x.size() != y.size()) return false;
    auto vx = x.to_vector(), vy = y.to_vector();
    for (std::size_t i = 0; i < vx.size(); ++i)
      if (!value(vx[i], vy[i])) return false;
    return true;
  }

  bool memory(Label l, const Store::Memory& x, const Store::Memory& y) {
    if (!o_.sees(l)) return true;
    if (x.size() != y.size()) return false;
    for (std::size_t i = 0; i < x.size(); ++i)
      if (!raw(x[i], y[i])) return false;
    return true;
  }

  bool store(const Store& x, const Store& y) {
    for (Label l : x.labels())
      if (!memory(l, x.memory(l), y.memory(l))) return false;
    for (Label l : y.labels())
      if (!memory(l, x.memory(l), y.memory(l))) return false;
    return true;
  }

  // Check mode: every β pair within bounds with related cells.
  bool heap(const Heap& x, const Heap& y) {
    if (!b_.within(x.size(), y.size())) return false;
    for (auto [a, c] : b_.pairs())
      if (!value(x[a], y[c])) return false;
    return true;
  }

  // Search mode: relate cells reachable through β until no new pairs appear.
  bool close_heap(const Heap& x, const Heap& y) {
    for (auto pr : b_.pairs()) pending_.push_back(pr);
    while (!pending_.empty()) {
      auto [a, c] = pending_.front();
      pending_.pop_front();
      if (a >= x.size() || c >= y.size()) return false;
      if (!value(x[a], y[c])) return false;
    }
    return true;
  }

 private:
  bool address(std::uint32_t a, std::uint32_t c) {
    if (!grow_) return b_.contains(a, c);
    if (b_.contains(a, c)) return true;
    if (!b_.insert(a, c)) return false;
    pending_.emplace_back(a, c);
    return true;
  }

  const Observer& o_;
  Bijection& b_;
  bool grow_;
  std::deque<std::pair<std::uint32_t, std::uint32_t>> pending_;
};

Relater checker(const Observer& o, const Bijection& b) { return Relater(o, const_cast<Bijection&>(b), false); }

}  // namespace

bool low_equiv(const Observer& o, const Bijection& b, const Value& x, const Value& y) {
  return checker(o, b).value(x, y);
}
bool low_equiv(const Observer& o, const Bijection& b, const RawPtr& x, const RawPtr& y) {
  return checker(o, b).raw(x, y);
}
bool low_equiv(const Observer& o, const Bijection& b, const Env& x, const Env& y) { return checker(o, b).env(x, y); }
bool low_equiv_memory(const Observer& o, const Bijection& b, Label l, const Store::Memory& x, const Store::Memory& y) {
  return checker(o, b).memory(l, x, y);
}
bool low_equiv(const Observer& o, const Bijection& b, const Store& x, const Store& y) {
  return checker(o, b).store(x, y);
}
bool low_equiv(const Observer& o, const Bijection& b, const Heap& x, const Heap& y) {
  return checker(o, b).heap(x, y);
}
bool low_equiv_initial(const Observer& o, const Bijection& b, const Store& s1, const Heap& h1, const Expr& e1,
                       const Store& s2, const Heap& h2, const Expr& e2) {
  return e1 == e2 && low_equiv(o, b, s1, s2) && low_equiv(o, b, h1, h2);
}
bool low_equiv(const Observer& o, const Bijection& b, const Final& x, const Final& y) {
  return low_equiv(o, b, x.store, y.store) && low_equiv(o, b, x.heap, y.heap) && low_equiv(o, b, x.value, y.value);
}

namespace {
bool valid_raw(std::size_t n, const Raw& r) {
  if (const auto* c = r.get<Closure>()) return valid(n, c->env);
  if (const auto* l = r.get<InlV>()) return valid(n, l->v);
  if (const auto* l = r.get<InrV>()) return valid(n, l->v);
  if (const auto* p = r.get<PairV>()) return valid(n, p->first) && valid(n, p->second);
  if (const auto* f = r.get<FsRef>()) return f->address < n;
  return true;
}
}  // namespace

bool valid(std::size_t n, const Value& v) { return valid_raw(n, *v.raw); }
bool valid(std::size_t n, const RawPtr& r) { return valid_raw(n, *r); }
bool valid(std::size_t n, const Env& env) {
  bool ok = true;
  env.for_each([&](const Value& v) { ok = ok && valid(n, v); });
  return ok;
}
bool valid(std::size_t n, const Store& s) {
  for (Label l : s.labels())
    for (const auto& r : s.memory(l))
      if (!valid(n, r)) return false;
  return true;
}
bool valid(std::size_t n, const Heap& h) {
  for (const auto& v : h)
    if (!valid(n, v)) return false;
  return true;
}
bool valid_inputs(const Store& s, const Heap& h, const Env& env) {
  return valid(h.size(), s) && valid(h.size(), h) && valid(h.size(), env);
}
bool valid_outputs(const Final& c) {
  return valid(c.heap.size(), c.store) && valid(c.heap.size(), c.heap) && valid(c.heap.size(), c.value);
}

std::optional<Bijection> find_bijection(const Observer& o, const Bijection& base, const Final& c1, const Final& c2) {
  Bijection b = base;
  Relater r(o, b, true);
  if (!r.value(c1.value, c2.value)) return std::nullopt;
  if (!r.store(c1.store, c2.store)) return std::nullopt;
  if (!r.close_heap(c1.heap, c2.heap)) return std::nullopt;
  if (!low_equiv(o, b, c1, c2)) return std::nullopt;
  return b;
}

}  // namespace ifc::fg
