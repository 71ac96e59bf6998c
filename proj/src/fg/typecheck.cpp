#include "ifc/fg/typecheck.hpp"

namespace ifc::fg {

namespace {

using K = Type::Kind;

class Checker {
 public:
  Type infer(const Context& ctx, const Expr& e, const std::string& at) {
    switch (e.op()) {
      case Op::Var:
        if (e.index() >= ctx.size())
          throw TypeError(TypeError::Kind::UnboundVariable, at, "bound variable", "#" + std::to_string(e.index()));
        return ctx.at(e.index());
      case Op::Lam: {
        if (!e.annot()) throw TypeError(TypeError::Kind::CannotInfer, at, "binder annotation", "none");
        annotation(*e.annot(), at);
        return Type::fun(*e.annot(), infer(ctx.push(*e.annot()), e[0], at + "/lam"));
      }
      case Op::App: {
        if (e[0].op() == Op::Lam && !e[0].annot()) {
          Type a = infer(ctx, e[1], at + "/app.1");
          return infer(ctx.push(a), e[0][0], at + "/app.0/lam");
        }
        Type f = infer(ctx, e[0], at + "/app.0");
        expect_kind(f, K::Fun, "function", at + "/app.0");
        check(ctx, e[1], f.arg(0), at + "/app.1");
        return f.arg(1);
      }
      case Op::Unit: return Type::unit();
      case Op::Lbl: return Type::label();
      case Op::Pair: return Type::prod(infer(ctx, e[0], at + "/pair.0"), infer(ctx, e[1], at + "/pair.1"));
      case Op::Fst:
      case Op::Snd: {
        Type p = infer(ctx, e[0], at + "/" + op_name(e.op()));
        expect_kind(p, K::Prod, "pair", at + "/" + op_name(e.op()));
        return p.arg(e.op() == Op::Fst ? 0 : 1);
      }
      case Op::Inl:
      case Op::Inr: {
        if (!e.annot()) throw TypeError(TypeError::Kind::CannotInfer, at, "other summand annotation", "none");
        annotation(*e.annot(), at);
        Type t = infer(ctx, e[0], at + "/" + op_name(e.op()));
        return e.op() == Op::Inl ? Type::sum(t, *e.annot()) : Type::sum(*e.annot(), t);
      }
      case Op::Case: {
        Type s = infer(ctx, e[0], at + "/case.0");
        expect_kind(s, K::Sum, "sum", at + "/case.0");
        Type t = infer(ctx.push(s.arg(0)), e[1], at + "/case.1");
        check(ctx.push(s.arg(1)), e[2], t, at + "/case.2");
        return t;
      }
      case Op::GetLabel: return Type::label();
      case Op::LabelOf:
        infer(ctx, e[0], at + "/label-of");
        return Type::label();
      case Op::FlowsTo:
        check(ctx, e[0], Type::label(), at + "/flows.0");
        check(ctx, e[1], Type::label(), at + "/flows.1");
        return Type::boolean();
      case Op::Taint:
        check(ctx, e[0], Type::label(), at + "/taint.0");
        return infer(ctx, e[1], at + "/taint.1");
      case Op::New: return Type::ref(e.mode(), infer(ctx, e[0], at + "/new"));
      case Op::Read: return ref_of(ctx, e[0], at + "/!").content();
      case Op::Write: {
        Type r = ref_of(ctx, e[0], at + "/:=.0");
        check(ctx, e[1], r.content(), at + "/:=.1");
        return Type::unit();
      }
      case Op::LabelOfRef:
        ref_of(ctx, e[0], at + "/label-of-ref");
        return Type::label();
      case Op::Wken: return infer(weakened(ctx, e, at), e[0], at + "/wken");
    }
    throw TypeError(TypeError::Kind::Mismatch, at, "expression", "unknown operator");
  }

  void check(const Context& ctx, const Expr& e, const Type& want, const std::string& at) {
    switch (e.op()) {
      case Op::Lam:
        if (!e.annot()) {
          expect_kind(want, K::Fun, "function", at);
          check(ctx.push(want.arg(0)), e[0], want.arg(1), at + "/lam");
          return;
        }
        break;
      case Op::Inl:
      case Op::Inr:
        if (!e.annot()) {
          expect_kind(want, K::Sum, "sum", at);
          check(ctx, e[0], want.arg(e.op() == Op::Inl ? 0 : 1), at + "/" + op_name(e.op()));
          return;
        }
        break;
      case Op::App:
        if (e[0].op() == Op::Lam && !e[0].annot()) {
          Type a = infer(ctx, e[1], at + "/app.1");
          check(ctx.push(a), e[0][0], want, at + "/app.0/lam");
          return;
        }
        break;
      case Op::Case: {
        Type s = infer(ctx, e[0], at + "/case.0");
        expect_kind(s, K::Sum, "sum", at + "/case.0");
        check(ctx.push(s.arg(0)), e[1], want, at + "/case.1");
        check(ctx.push(s.arg(1)), e[2], want, at + "/case.2");
        return;
      }
      case Op::Pair:
        if (want.is(K::Prod)) {
          check(ctx, e[0], want.arg(0), at + "/pair.0");
          check(ctx, e[1], want.arg(1), at + "/pair.1");
          return;
        }
        break;
      case Op::Taint:
        check(ctx, e[0], Type::label(), at + "/taint.0");
        check(ctx, e[1], want, at + "/taint.1");
        return;
      case Op::Wken: check(weakened(ctx, e, at), e[0], want, at + "/wken"); return;
      default: break;
    }
    Type got = infer(ctx, e, at);
    if (!(got == want)) throw TypeError(TypeError::Kind::Mismatch, at, want.to_string(), got.to_string());
  }

 private:
  static void expect_kind(const Type& t, K k, const char* what, const std::string& at) {
    if (!t.is(k)) throw TypeError(TypeError::Kind::Mismatch, at, what, t.to_string());
  }
  static void annotation(const Type& t, const std::string& at) {
    if (!t.fg_only()) throw TypeError(TypeError::Kind::Mismatch, at, "fine-grained type", t.to_string());
  }
  Type ref_of(const Context& ctx, const Expr& e, const std::string& at) {
    Type r = infer(ctx, e, at);
    expect_kind(r, K::Ref, "reference", at);
    return r;
  }
  static Context weakened(const Context& ctx, const Expr& e, const std::string& at) {
    for (auto d : e.drops())
      if (d >= ctx.size())
        throw TypeError(TypeError::Kind::UnboundVariable, at, "bound variable", "#" + std::to_string(d));
    return ctx.drop(e.drops());
  }
};

}  // namespace

Type typecheck(const Context& ctx, const Expr& e) { return Checker().infer(ctx, e, "root"); }

void check(const Context& ctx, const Expr& e, const Type& expected) { Checker().check(ctx, e, expected, "root"); }

}  // namespace ifc::fg
