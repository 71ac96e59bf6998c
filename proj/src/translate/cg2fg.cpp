#include "ifc/translate/cg2fg.hpp"

namespace ifc::translate {

using K = Type::Kind;

Type cg2fg_type(const Type& t) {
  switch (t.kind()) {
    case K::Unit:
    case K::Label: return t;
    case K::Fun: return Type::fun(cg2fg_type(t.arg(0)), cg2fg_type(t.arg(1)));
    case K::Sum: return Type::sum(cg2fg_type(t.arg(0)), cg2fg_type(t.arg(1)));
    case K::Prod: return Type::prod(cg2fg_type(t.arg(0)), cg2fg_type(t.arg(1)));
    case K::Ref: return Type::ref(t.mode(), cg2fg_type(t.arg(0)));
    case K::Lio: return Type::fun(Type::unit(), cg2fg_type(t.arg(0)));
    case K::Labeled: return Type::prod(Type::label(), cg2fg_type(t.arg(0)));
  }
  throw std::invalid_argument("unknown type");
}

Context cg2fg_context(const Context& ctx) {
  std::vector<Type> out;
  for (const auto& t : ctx.innermost_first()) out.push_back(cg2fg_type(t));
  return Context::from_innermost_first(out);
}

namespace {

std::optional<Type> opt_type(const std::optional<Type>& t) {
  if (!t) return std::nullopt;
  return cg2fg_type(*t);
}

// let x = e in taint(fst x, snd x)
fg::Expr open_labeled(fg::Expr e) {
  using namespace fg;
  return let_in(std::move(e), taint(fst(var(0)), snd(var(0))));
}

fg::Expr run(fg::Expr suspended) { return fg::app(std::move(suspended), fg::unit()); }

}  // namespace

fg::Expr cg2fg_lambda(const cg::Expr& lam) { return fg::lam(opt_type(lam.annot()), cg2fg_expr(lam[0])); }

fg::Expr cg2fg_suspension(const cg::Expr& t) {
  return fg::lam(Type::unit(), fg::wken({0}, cg2fg_thunk_body(t)));
}

fg::Expr cg2fg_expr(const cg::Expr& e) {
  using cg::Op;
  if (cg::is_thunk(e.op())) return cg2fg_suspension(e);
  auto k = [&](std::size_t i) { return cg2fg_expr(e[i]); };
  switch (e.op()) {
    case Op::Var: return fg::var(e.index());
    case Op::Lam: return cg2fg_lambda(e);
    case Op::App: return fg::app(k(0), k(1));
    case Op::Unit: return fg::unit();
    case Op::Lbl: return fg::lbl(e.label());
    case Op::Pair: return fg::pair(k(0), k(1));
    case Op::Fst: return fg::fst(k(0));
    case Op::Snd: return fg::snd(k(0));
    case Op::Inl: return fg::inl(k(0), opt_type(e.annot()));
    case Op::Inr: return fg::inr(k(0), opt_type(e.annot()));
    case Op::Case: return fg::case_of(k(0), k(1), k(2));
    case Op::FlowsTo: return fg::flows_to(k(0), k(1));
    case Op::Wken: return fg::wken(e.drops(), k(0));
    default: break;
  }
  throw std::invalid_argument("unknown coarse-grained operator");
}

fg::Expr cg2fg_thunk_body(const cg::Expr& t) {
  using namespace fg;
  using cg::Op;
  auto k = [&](std::size_t i) { return cg2fg_expr(t[i]); };
  switch (t.op()) {
    case Op::Return: return k(0);
    case Op::Bind: return let_in(run(k(0)), taint(label_of(var(0)), run(k(1))));
    case Op::Unlabel: return open_labeled(k(0));
    case Op::ToLabeled: return let_in(run(k(0)), pair(label_of(var(0)), var(0)));
    case Op::LabelOf: return fst(k(0));
    case Op::GetLabel: return get_label();
    case Op::Taint: return taint(k(0), unit());
    case Op::New: return new_ref(t.mode(), open_labeled(k(0)));
    case Op::Read: return read(k(0));
    case Op::Write: return write(k(0), open_labeled(k(1)));
    case Op::LabelOfRef: return label_of_ref(k(0));
    default: break;
  }
  throw std::invalid_argument("not a thunk");
}

fg::Value cg2fg_value(const cg::Value& v, Label at) {
  auto wrap = [&](auto raw) { return fg::labeled(fg::make_raw(std::move(raw)), at); };
  if (v.is<cg::UnitV>()) return wrap(fg::UnitV{});
  if (const auto* l = v.get<cg::LabelV>()) return wrap(fg::LabelV{l->label});
  if (const auto* c = v.get<cg::FunClosure>()) return wrap(fg::Closure{cg2fg_lambda(c->fn), cg2fg_env(c->env, at)});
  if (const auto* c = v.get<cg::ThunkClosure>())
    return wrap(fg::Closure{cg2fg_suspension(c->thunk), cg2fg_env(c->env, at)});
  if (const auto* l = v.get<cg::InlV>()) return wrap(fg::InlV{cg2fg_value(l->v, at)});
  if (const auto* l = v.get<cg::InrV>()) return wrap(fg::InrV{cg2fg_value(l->v, at)});
  if (const auto* p = v.get<cg::PairV>()) return wrap(fg::PairV{cg2fg_value(p->first, at), cg2fg_value(p->second, at)});
  if (const auto* l = v.get<cg::LabeledV>())
    return wrap(fg::PairV{fg::labeled(fg::make_raw(fg::LabelV{l->label}), l->label), cg2fg_value(l->v, l->label)});
  if (const auto* f = v.get<cg::FiRef>()) return wrap(fg::FiRef{f->index, f->memory});
  return wrap(fg::FsRef{v.get<cg::FsRef>()->address});
}

fg::Env cg2fg_env(const cg::Env& env, Label pc) {
  std::vector<fg::Value> out;
  env.for_each([&](const cg::Value& v) { out.push_back(cg2fg_value(v, pc)); });
  return fg::Env::from_vector(out);
}

fg::Store cg2fg_store(const cg::Store& s) {
  fg::Store out;
  for (Label l : s.labels())
    for (const auto& v : s.memory(l)) out.append(l, cg2fg_value(v, l).raw);
  return out;
}

fg::Heap cg2fg_heap(const cg::Heap& h) {
  fg::Heap out;
  for (const auto& c : h) out.push_back(cg2fg_value(c.v, c.label));
  return out;
}

}  // namespace ifc::translate
