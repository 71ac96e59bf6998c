#include "ifc/translate/fg2cg.hpp"

namespace ifc::translate {

using K = Type::Kind;

Type fg2cg_raw_type(const Type& t) {
  switch (t.kind()) {
    case K::Unit:
    case K::Label: return t;
    case K::Fun: return Type::fun(fg2cg_type(t.arg(0)), Type::lio(fg2cg_type(t.arg(1))));
    case K::Sum: return Type::sum(fg2cg_type(t.arg(0)), fg2cg_type(t.arg(1)));
    case K::Prod: return Type::prod(fg2cg_type(t.arg(0)), fg2cg_type(t.arg(1)));
    case K::Ref: return Type::ref(t.mode(), fg2cg_raw_type(t.arg(0)));
    default: break;
  }
  throw std::invalid_argument("not a fine-grained type: " + t.to_string());
}

Type fg2cg_type(const Type& t) { return Type::labeled(fg2cg_raw_type(t)); }

Context fg2cg_context(const Context& ctx) {
  std::vector<Type> out;
  for (const auto& t : ctx.innermost_first()) out.push_back(fg2cg_type(t));
  return Context::from_innermost_first(out);
}

namespace {

std::optional<Type> opt_type(const std::optional<Type>& t) {
  if (!t) return std::nullopt;
  return fg2cg_type(*t);
}

// Sub-translations evaluated under n temporaries drop them so their environment is the source one.
cg::Expr under(std::uint32_t temporaries, cg::Expr e) {
  if (temporaries == 0) return e;
  std::vector<std::uint32_t> drops;
  for (std::uint32_t i = 0; i < temporaries; ++i) drops.push_back(i);
  return cg::wken(std::move(drops), std::move(e));
}

cg::Expr tr(const fg::Expr& e) {
  using namespace cg;
  using fg::Op;
  switch (e.op()) {
    case Op::Var: return to_labeled(unlabel(var(e.index())));
    case Op::Lam: return to_labeled(ret(fg2cg_lambda(e)));
    case Op::App:
      if (e[0].op() == Op::Lam && !e[0].annot()) return bind(tr(e[1]), tr(e[0][0]));  // let-form
      return to_labeled(bind(tr(e[0]),
                             bind(under(1, tr(e[1])),
                                  bind(unlabel(var(1)), bind(app(var(0), var(1)), unlabel(var(0)))))));
    case Op::Unit: return to_labeled(ret(unit()));
    case Op::Lbl: return to_labeled(ret(lbl(e.label())));
    case Op::Pair: return to_labeled(bind(tr(e[0]), bind(under(1, tr(e[1])), ret(pair(var(1), var(0))))));
    case Op::Fst:
    case Op::Snd: {
      Expr proj = e.op() == Op::Fst ? fst(var(0)) : snd(var(0));
      return to_labeled(bind(tr(e[0]), bind(unlabel(var(0)), unlabel(proj))));
    }
    case Op::Inl: return to_labeled(bind(tr(e[0]), ret(inl(var(0), opt_type(e.annot())))));
    case Op::Inr: return to_labeled(bind(tr(e[0]), ret(inr(var(0), opt_type(e.annot())))));
    case Op::Case: {
      auto branch = [](const fg::Expr& b) { return wken({1, 2}, tr(b)); };
      return to_labeled(bind(tr(e[0]), bind(unlabel(var(0)), bind(case_of(var(0), branch(e[1]), branch(e[2])),
                                                                    unlabel(var(0))))));
    }
    case Op::GetLabel: return to_labeled(get_label());
    case Op::LabelOf: return to_labeled(bind(tr(e[0]), label_of(var(0))));
    case Op::FlowsTo: {
      Type lu = Type::labeled(Type::unit());
      Expr pick = case_of(flows_to(var(1), var(0)), inl(var(3), lu), inr(var(3), lu));
      return to_labeled(bind(
          tr(e[0]),
          bind(under(1, tr(e[1])),
               bind(to_labeled(ret(unit())), bind(unlabel(var(2)), bind(unlabel(var(2)), ret(pick)))))));
    }
    case Op::Taint:
      return to_labeled(bind(
          tr(e[0]), bind(unlabel(var(0)), bind(taint(var(0)), bind(under(3, tr(e[1])), unlabel(var(0)))))));
    case Op::New: return to_labeled(bind(tr(e[0]), new_ref(e.mode(), var(0))));
    case Op::Read: return to_labeled(bind(tr(e[0]), bind(unlabel(var(0)), read(var(0)))));
    case Op::Write:
      return seq(to_labeled(bind(tr(e[0]), bind(under(1, tr(e[1])), bind(unlabel(var(1)), write(var(0), var(1)))))),
                 to_labeled(ret(unit())));
    case Op::LabelOfRef: return to_labeled(bind(tr(e[0]), bind(unlabel(var(0)), label_of_ref(var(0)))));
    case Op::Wken: return wken(e.drops(), tr(e[0]));
  }
  throw std::invalid_argument("unknown fine-grained operator");
}

}  // namespace

cg::Expr fg2cg_lambda(const fg::Expr& lam) { return cg::lam(opt_type(lam.annot()), tr(lam[0])); }

cg::Expr fg2cg_expr(const fg::Expr& e) { return tr(e); }

cg::Value fg2cg_raw(const fg::RawPtr& r) {
  if (r->is<fg::UnitV>()) return cg::unit_value();
  if (const auto* l = r->get<fg::LabelV>()) return cg::make(cg::LabelV{l->label});
  if (const auto* c = r->get<fg::Closure>()) return cg::make(cg::FunClosure{fg2cg_lambda(c->fn), fg2cg_env(c->env)});
  if (const auto* l = r->get<fg::InlV>()) return cg::make(cg::InlV{fg2cg_value(l->v)});
  if (const auto* l = r->get<fg::InrV>()) return cg::make(cg::InrV{fg2cg_value(l->v)});
  if (const auto* p = r->get<fg::PairV>()) return cg::make(cg::PairV{fg2cg_value(p->first), fg2cg_value(p->second)});
  if (const auto* f = r->get<fg::FiRef>()) return cg::make(cg::FiRef{f->index, f->memory});
  return cg::make(cg::FsRef{r->get<fg::FsRef>()->address});
}

cg::Value fg2cg_value(const fg::Value& v) { return cg::labeled(v.label, fg2cg_raw(v.raw)); }

cg::Env fg2cg_env(const fg::Env& env) {
  std::vector<cg::Value> out;
  env.for_each([&](const fg::Value& v) { out.push_back(fg2cg_value(v)); });
  return cg::Env::from_vector(out);
}

cg::Store fg2cg_store(const fg::Store& s) {
  cg::Store out;
  for (Label l : s.labels())
    for (const auto& r : s.memory(l)) out.append(l, fg2cg_raw(r));
  return out;
}

cg::Heap fg2cg_heap(const fg::Heap& h) {
  cg::Heap out;
  for (const auto& v : h) out.push_back(cg::HeapCell{v.label, fg2cg_raw(v.raw)});
  return out;
}

cg::Final fg2cg_final(const fg::Final& c, Label pc) {
  return cg::Final{fg2cg_store(c.store), fg2cg_heap(c.heap), pc, fg2cg_value(c.value)};
}

}  // namespace ifc::translate
