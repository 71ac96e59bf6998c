#include "ifc/cg/typecheck.hpp"
#include "ifc/fg/typecheck.hpp"
#include "ifc/harness/inputs.hpp"

namespace ifc::harness {

using K = Type::Kind;

namespace {

constexpr int kDepth = 12;

// Types of captured values are only recovered for shapes that determine them.
std::optional<Type> fg_infer(const fg::RawPtr& r, const fg::Store& s, const fg::Heap& h, int depth);

std::optional<Context> fg_env_context(const fg::Env& env, const fg::Store& s, const fg::Heap& h, int depth) {
  std::vector<Type> types;
  bool ok = true;
  env.for_each([&](const fg::Value& v) {
    if (!ok) return;
    auto t = fg_infer(v.raw, s, h, depth);
    if (t) types.push_back(*t);
    else ok = false;
  });
  if (!ok) return std::nullopt;
  return Context::from_innermost_first(types);
}

std::optional<Type> fg_infer(const fg::RawPtr& r, const fg::Store& s, const fg::Heap& h, int depth) {
  if (depth <= 0) return std::nullopt;
  if (r->is<fg::UnitV>()) return Type::unit();
  if (r->is<fg::LabelV>()) return Type::label();
  if (const auto* p = r->get<fg::PairV>()) {
    auto a = fg_infer(p->first.raw, s, h, depth - 1);
    auto b = fg_infer(p->second.raw, s, h, depth - 1);
    if (a && b) return Type::prod(*a, *b);
    return std::nullopt;
  }
  if (const auto* c = r->get<fg::Closure>()) {
    if (!c->fn.annot()) return std::nullopt;
    auto ctx = fg_env_context(c->env, s, h, depth - 1);
    if (!ctx) return std::nullopt;
    try {
      return Type::fun(*c->fn.annot(), fg::typecheck(ctx->push(*c->fn.annot()), c->fn[0]));
    } catch (const TypeError&) {
      return std::nullopt;
    }
  }
  if (const auto* f = r->get<fg::FiRef>()) {
    if (!s.contains(f->memory, f->index)) return std::nullopt;
    auto t = fg_infer(s.at(f->memory, f->index), s, h, depth - 1);
    if (t) return Type::ref(RefMode::Insensitive, *t);
    return std::nullopt;
  }
  if (const auto* f = r->get<fg::FsRef>()) {
    if (f->address >= h.size()) return std::nullopt;
    auto t = fg_infer(h[f->address].raw, s, h, depth - 1);
    if (t) return Type::ref(RefMode::Sensitive, *t);
  }
  return std::nullopt;
}

bool fg_raw_has_type(const fg::RawPtr& r, const Type& t, const fg::Store& s, const fg::Heap& h, int depth) {
  if (depth <= 0) return true;
  switch (t.kind()) {
    case K::Unit: return r->is<fg::UnitV>();
    case K::Label: return r->is<fg::LabelV>();
    case K::Sum:
      if (const auto* l = r->get<fg::InlV>()) return fg_raw_has_type(l->v.raw, t.arg(0), s, h, depth - 1);
      if (const auto* x = r->get<fg::InrV>()) return fg_raw_has_type(x->v.raw, t.arg(1), s, h, depth - 1);
      return false;
    case K::Prod: {
      const auto* p = r->get<fg::PairV>();
      return p && fg_raw_has_type(p->first.raw, t.arg(0), s, h, depth - 1) &&
             fg_raw_has_type(p->second.raw, t.arg(1), s, h, depth - 1);
    }
    case K::Fun: {
      const auto* c = r->get<fg::Closure>();
      if (!c) return false;
      if (c->fn.annot() && !(*c->fn.annot() == t.arg(0))) return false;
      auto ctx = fg_env_context(c->env, s, h, depth - 1);
      if (!ctx) return true;
      try {
        fg::check(ctx->push(t.arg(0)), c->fn[0], t.arg(1));
        return true;
      } catch (const TypeError&) {
        return false;
      }
    }
    case K::Ref:
      if (t.mode() == RefMode::Insensitive) {
        const auto* f = r->get<fg::FiRef>();
        return f && s.contains(f->memory, f->index) &&
               fg_raw_has_type(s.at(f->memory, f->index), t.arg(0), s, h, depth - 1);
      } else {
        const auto* f = r->get<fg::FsRef>();
        return f && f->address < h.size() && fg_raw_has_type(h[f->address].raw, t.arg(0), s, h, depth - 1);
      }
    default: return false;
  }
}

std::optional<Type> cg_infer(const cg::Value& v, const cg::Store& s, const cg::Heap& h, int depth);

std::optional<Context> cg_env_context(const cg::Env& env, const cg::Store& s, const cg::Heap& h, int depth) {
  std::vector<Type> types;
  bool ok = true;
  env.for_each([&](const cg::Value& v) {
    if (!ok) return;
    auto t = cg_infer(v, s, h, depth);
    if (t) types.push_back(*t);
    else ok = false;
  });
  if (!ok) return std::nullopt;
  return Context::from_innermost_first(types);
}

std::optional<Type> cg_infer(const cg::Value& v, const cg::Store& s, const cg::Heap& h, int depth) {
  if (depth <= 0) return std::nullopt;
  if (v.is<cg::UnitV>()) return Type::unit();
  if (v.is<cg::LabelV>()) return Type::label();
  if (const auto* p = v.get<cg::PairV>()) {
    auto a = cg_infer(p->first, s, h, depth - 1);
    auto b = cg_infer(p->second, s, h, depth - 1);
    if (a && b) return Type::prod(*a, *b);
    return std::nullopt;
  }
  if (const auto* l = v.get<cg::LabeledV>()) {
    auto a = cg_infer(l->v, s, h, depth - 1);
    if (a) return Type::labeled(*a);
    return std::nullopt;
  }
  try {
    if (const auto* c = v.get<cg::FunClosure>()) {
      if (!c->fn.annot()) return std::nullopt;
      auto ctx = cg_env_context(c->env, s, h, depth - 1);
      if (!ctx) return std::nullopt;
      return Type::fun(*c->fn.annot(), cg::typecheck(ctx->push(*c->fn.annot()), c->fn[0]));
    }
    if (const auto* c = v.get<cg::ThunkClosure>()) {
      auto ctx = cg_env_context(c->env, s, h, depth - 1);
      if (!ctx) return std::nullopt;
      return cg::typecheck(*ctx, c->thunk);
    }
  } catch (const TypeError&) {
    return std::nullopt;
  }
  if (const auto* f = v.get<cg::FiRef>()) {
    if (!s.contains(f->memory, f->index)) return std::nullopt;
    auto t = cg_infer(s.at(f->memory, f->index), s, h, depth - 1);
    if (t) return Type::ref(RefMode::Insensitive, *t);
    return std::nullopt;
  }
  if (const auto* f = v.get<cg::FsRef>()) {
    if (f->address >= h.size()) return std::nullopt;
    auto t = cg_infer(h[f->address].v, s, h, depth - 1);
    if (t) return Type::ref(RefMode::Sensitive, *t);
  }
  return std::nullopt;
}

bool cg_has_type(const cg::Value& v, const Type& t, const cg::Store& s, const cg::Heap& h, int depth) {
  if (depth <= 0) return true;
  switch (t.kind()) {
    case K::Unit: return v.is<cg::UnitV>();
    case K::Label: return v.is<cg::LabelV>();
    case K::Sum:
      if (const auto* l = v.get<cg::InlV>()) return cg_has_type(l->v, t.arg(0), s, h, depth - 1);
      if (const auto* x = v.get<cg::InrV>()) return cg_has_type(x->v, t.arg(1), s, h, depth - 1);
      return false;
    case K::Prod: {
      const auto* p = v.get<cg::PairV>();
      return p && cg_has_type(p->first, t.arg(0), s, h, depth - 1) && cg_has_type(p->second, t.arg(1), s, h, depth - 1);
    }
    case K::Labeled: {
      const auto* l = v.get<cg::LabeledV>();
      return l && cg_has_type(l->v, t.arg(0), s, h, depth - 1);
    }
    case K::Fun: {
      const auto* c = v.get<cg::FunClosure>();
      if (!c) return false;
      if (c->fn.annot() && !(*c->fn.annot() == t.arg(0))) return false;
      auto ctx = cg_env_context(c->env, s, h, depth - 1);
      if (!ctx) return true;
      try {
        cg::check(ctx->push(t.arg(0)), c->fn[0], t.arg(1));
        return true;
      } catch (const TypeError&) {
        return false;
      }
    }
    case K::Lio: {
      const auto* c = v.get<cg::ThunkClosure>();
      if (!c) return false;
      auto ctx = cg_env_context(c->env, s, h, depth - 1);
      if (!ctx) return true;
      try {
        cg::check(*ctx, c->thunk, t);
        return true;
      } catch (const TypeError&) {
        return false;
      }
    }
    case K::Ref:
      if (t.mode() == RefMode::Insensitive) {
        const auto* f = v.get<cg::FiRef>();
        return f && s.contains(f->memory, f->index) && cg_has_type(s.at(f->memory, f->index), t.arg(0), s, h, depth - 1);
      } else {
        const auto* f = v.get<cg::FsRef>();
        return f && f->address < h.size() && cg_has_type(h[f->address].v, t.arg(0), s, h, depth - 1);
      }
  }
  return false;
}

}  // namespace

bool fg_value_has_type(const fg::Value& v, const Type& t, const fg::Store& s, const fg::Heap& h) {
  return fg_raw_has_type(v.raw, t, s, h, kDepth);
}

bool cg_value_has_type(const cg::Value& v, const Type& t, const cg::Store& s, const cg::Heap& h) {
  return cg_has_type(v, t, s, h, kDepth);
}

}  // namespace ifc::harness
