#include "ifc/security/cross.hpp"

#include "ifc/translate/cg2fg.hpp"

namespace ifc::cross {

bool ceq(const Lattice& lat, Label pc, const fg::Value& x, const cg::Value& y) {
  return lat.leq(x.label, pc) && ceq(lat, pc, x.raw, y);
}

bool ceq(const Lattice& lat, Label pc, const fg::RawPtr& x, const cg::Value& y) {
  if (const auto* l = y.get<cg::LabeledV>()) {
    const auto* p = x->get<fg::PairV>();
    if (!p) return false;
    const auto* tag = p->first.raw->get<fg::LabelV>();
    return tag && tag->label == l->label && p->first.label == l->label && ceq(lat, l->label, p->second, l->v);
  }
  if (x->is<fg::UnitV>()) return y.is<cg::UnitV>();
  if (const auto* a = x->get<fg::LabelV>()) {
    const auto* b = y.get<cg::LabelV>();
    return b && a->label == b->label;
  }
  if (const auto* a = x->get<fg::FiRef>()) {
    const auto* b = y.get<cg::FiRef>();
    return b && a->index == b->index && a->memory == b->memory;
  }
  if (const auto* a = x->get<fg::FsRef>()) {
    const auto* b = y.get<cg::FsRef>();
    return b && a->address == b->address;
  }
  if (const auto* a = x->get<fg::InlV>()) {
    const auto* b = y.get<cg::InlV>();
    return b && ceq(lat, pc, a->v, b->v);
  }
  if (const auto* a = x->get<fg::InrV>()) {
    const auto* b = y.get<cg::InrV>();
    return b && ceq(lat, pc, a->v, b->v);
  }
  if (const auto* a = x->get<fg::PairV>()) {
    const auto* b = y.get<cg::PairV>();
    return b && ceq(lat, pc, a->first, b->first) && ceq(lat, pc, a->second, b->second);
  }
  const auto& c = *x->get<fg::Closure>();
  if (const auto* f = y.get<cg::FunClosure>())
    return c.fn == translate::cg2fg_lambda(f->fn) && ceq(lat, pc, c.env, f->env);
  if (const auto* t = y.get<cg::ThunkClosure>())
    return c.fn == translate::cg2fg_suspension(t->thunk) && ceq(lat, pc, c.env, t->env);
  return false;
}

bool ceq(const Lattice& lat, Label pc, const fg::Env& x, const cg::Env& y) {
  if (x.size() != y.size()) return false;
  auto xs = x.to_vector();
  auto ys = y.to_vector();
  for (std::size_t i = 0; i < xs.size(); ++i)
    if (!ceq(lat, pc, xs[i], ys[i])) return false;
  return true;
}

bool state_rel(const Lattice& lat, const fg::Store& s1, const cg::Store& s2) {
  auto labels = s1.labels();
  if (labels != s2.labels()) return false;
  for (Label l : labels) {
    const auto& m1 = s1.memory(l);
    const auto& m2 = s2.memory(l);
    if (m1.size() != m2.size()) return false;
    for (std::size_t i = 0; i < m1.size(); ++i)
      if (!ceq(lat, l, m1[i], m2[i])) return false;
  }
  return true;
}

bool state_rel(const Lattice& lat, const fg::Heap& h1, const cg::Heap& h2) {
  if (h1.size() != h2.size()) return false;
  for (std::size_t i = 0; i < h1.size(); ++i)
    if (h1[i].label != h2[i].label || !ceq(lat, h2[i].label, h1[i].raw, h2[i].v)) return false;
  return true;
}

bool config_rel(const Lattice& lat, const fg::Final& x, const cg::Final& y) {
  return x.value.label == y.pc && ceq(lat, y.pc, x.value.raw, y.value) && state_rel(lat, x.store, y.store) &&
         state_rel(lat, x.heap, y.heap);
}

}  // namespace ifc::cross
