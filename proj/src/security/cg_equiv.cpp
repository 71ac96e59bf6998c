#include "ifc/security/cg_equiv.hpp"

#include <deque>

namespace ifc::cg {

namespace {

class Relater {
 public:
  Relater(const Observer& o, Bijection& b, bool grow) : o_(o), b_(b), grow_(grow) {}

  bool value(const Value& x, const Value& y) {
    if (x->variant().index() != y->variant().index()) return false;
    if (x.is<UnitV>()) return true;
    if (const auto* l = x.get<LabelV>()) return l->label == y.get<LabelV>()->label;
    if (const auto* f = x.get<FunClosure>()) {
      const auto* g = y.get<FunClosure>();
      return f->fn == g->fn && env(f->env, g->env);
    }
    if (const auto* f = x.get<ThunkClosure>()) {
      const auto* g = y.get<ThunkClosure>();
      return f->thunk == g->thunk && env(f->env, g->env);
    }
    if (const auto* l = x.get<InlV>()) return value(l->v, y.get<InlV>()->v);
    if (const auto* r = x.get<InrV>()) return value(r->v, y.get<InrV>()->v);
    if (const auto* p = x.get<PairV>()) {
      const auto* q = y.get<PairV>();
      return value(p->first, q->first) && value(p->second, q->second);
    }
    if (const auto* l = x.get<LabeledV>()) return labeled(l->label, l->v, y.get<LabeledV>()->label, y.get<LabeledV>()->v);
    if (const auto* f = x.get<FiRef>()) {
      const auto* g = y.get<FiRef>();
      bool sx = o_.sees(f->memory), sy = o_.sees(g->memory);
      if (sx && sy) return f->index == g->index && f->memory == g->memory;
      return !sx && !sy;
    }
    return address(x.get<FsRef>()->address, y.get<FsRef>()->address);
  }

  bool labeled(Label lx, const Value& x, Label ly, const Value& y) {
    bool sx = o_.sees(lx), sy = o_.sees(ly);
    if (sx && sy) return lx == ly && value(x, y);
    return !sx && !sy;
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
      if (!value(x[i], y[i])) return false;
    return true;
  }

  bool store(const Store& x, const Store& y) {
    for (Label l : x.labels())
      if (!memory(l, x.memory(l), y.memory(l))) return false;
    for (Label l : y.labels())
      if (!memory(l, x.memory(l), y.memory(l))) return false;
    return true;
  }

  bool cell(const HeapCell& x, const HeapCell& y) { return labeled(x.label, x.v, y.label, y.v); }

  bool heap(const Heap& x, const Heap& y) {
    if (!b_.within(x.size(), y.size())) return false;
    for (auto [a, c] : b_.pairs())
      if (!cell(x[a], y[c])) return false;
    return true;
  }

  bool close_heap(const Heap& x, const Heap& y) {
    for (auto pr : b_.pairs()) pending_.push_back(pr);
    while (!pending_.empty()) {
      auto [a, c] = pending_.front();
      pending_.pop_front();
      if (a >= x.size() || c >= y.size()) return false;
      if (!cell(x[a], y[c])) return false;
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

// Pc_L needs equal observable pcs and related values; Pc_H relates any two secret pcs.
bool final_value(Relater& r, const Observer& o, const Final& x, const Final& y) {
  bool sx = o.sees(x.pc), sy = o.sees(y.pc);
  if (sx && sy) return x.pc == y.pc && r.value(x.value, y.value);
  return !sx && !sy;
}

}  // namespace

bool low_equiv(const Observer& o, const Bijection& b, const Value& x, const Value& y) {
  return checker(o, b).value(x, y);
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
bool low_equiv_initial(const Observer& o, const Bijection& b, const Store& s1, const Heap& h1, Label pc1,
                       const Expr& e1, const Store& s2, const Heap& h2, Label pc2, const Expr& e2) {
  return pc1 == pc2 && e1 == e2 && low_equiv(o, b, s1, s2) && low_equiv(o, b, h1, h2);
}
bool low_equiv(const Observer& o, const Bijection& b, const Final& x, const Final& y) {
  Relater r = checker(o, b);
  return r.store(x.store, y.store) && r.heap(x.heap, y.heap) && final_value(r, o, x, y);
}

bool valid(std::size_t n, const Value& v) {
  if (const auto* f = v.get<FunClosure>()) return valid(n, f->env);
  if (const auto* t = v.get<ThunkClosure>()) return valid(n, t->env);
  if (const auto* l = v.get<InlV>()) return valid(n, l->v);
  if (const auto* l = v.get<InrV>()) return valid(n, l->v);
  if (const auto* p = v.get<PairV>()) return valid(n, p->first) && valid(n, p->second);
  if (const auto* l = v.get<LabeledV>()) return valid(n, l->v);
  if (const auto* f = v.get<FsRef>()) return f->address < n;
  return true;
}
bool valid(std::size_t n, const Env& env) {
  bool ok = true;
  env.for_each([&](const Value& v) { ok = ok && valid(n, v); });
  return ok;
}
bool valid(std::size_t n, const Store& s) {
  for (Label l : s.labels())
    for (const auto& v : s.memory(l))
      if (!valid(n, v)) return false;
  return true;
}
bool valid(std::size_t n, const Heap& h) {
  for (const auto& c : h)
    if (!valid(n, c.v)) return false;
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
  if (!final_value(r, o, c1, c2)) return std::nullopt;
  if (!r.store(c1.store, c2.store)) return std::nullopt;
  if (!r.close_heap(c1.heap, c2.heap)) return std::nullopt;
  if (!low_equiv(o, b, c1, c2)) return std::nullopt;
  return b;
}

}  // namespace ifc::cg
