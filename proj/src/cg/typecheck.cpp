#include "ifc/cg/typecheck.hpp"

namespace ifc::cg {

namespace {

using K = Type::Kind;

class Checker {
 public:
  Type infer(const Context& ctx, const Expr& e, const std::string& at) {
    const std::string here = at + "/" + op_name(e.op());
    switch (e.op()) {
      case Op::Var:
        if (e.index() >= ctx.size())
          throw TypeError(TypeError::Kind::UnboundVariable, at, "bound variable", "#" + std::to_string(e.index()));
        return ctx.at(e.index());
      case Op::Lam:
        if (!e.annot()) throw TypeError(TypeError::Kind::CannotInfer, at, "binder annotation", "none");
        return Type::fun(*e.annot(), infer(ctx.push(*e.annot()), e[0], here));
      case Op::App: {
        if (e[0].op() == Op::Lam && !e[0].annot()) {
          Type a = infer(ctx, e[1], here + ".1");
          return infer(ctx.push(a), e[0][0], here + ".0");
        }
        Type f = expect(infer(ctx, e[0], here + ".0"), K::Fun, "function", here + ".0");
        check(ctx, e[1], f.arg(0), here + ".1");
        return f.arg(1);
      }
      case Op::Unit: return Type::unit();
      case Op::Lbl: return Type::label();
      case Op::Pair: return Type::prod(infer(ctx, e[0], here + ".0"), infer(ctx, e[1], here + ".1"));
      case Op::Fst:
      case Op::Snd: {
        Type p = expect(infer(ctx, e[0], here), K::Prod, "pair", here);
        return p.arg(e.op() == Op::Fst ? 0 : 1);
      }
      case Op::Inl:
      case Op::Inr: {
        if (!e.annot()) throw TypeError(TypeError::Kind::CannotInfer, at, "other summand annotation", "none");
        Type t = infer(ctx, e[0], here);
        return e.op() == Op::Inl ? Type::sum(t, *e.annot()) : Type::sum(*e.annot(), t);
      }
      case Op::Case: {
        Type s = expect(infer(ctx, e[0], here + ".0"), K::Sum, "sum", here + ".0");
        Type t = infer(ctx.push(s.arg(0)), e[1], here + ".1");
        check(ctx.push(s.arg(1)), e[2], t, here + ".2");
        return t;
      }
      case Op::FlowsTo:
        check(ctx, e[0], Type::label(), here + ".0");
        check(ctx, e[1], Type::label(), here + ".1");
        return Type::boolean();
      case Op::Wken: return infer(weakened(ctx, e, at), e[0], here);
      case Op::Return: return Type::lio(infer(ctx, e[0], here));
      case Op::Bind: {
        Type a = expect(infer(ctx, e[0], here + ".0"), K::Lio, "computation", here + ".0");
        return expect(infer(ctx.push(a.arg(0)), e[1], here + ".1"), K::Lio, "computation", here + ".1");
      }
      case Op::Unlabel:
        return Type::lio(expect(infer(ctx, e[0], here), K::Labeled, "labeled value", here).arg(0));
      case Op::ToLabeled:
        return Type::lio(Type::labeled(expect(infer(ctx, e[0], here), K::Lio, "computation", here).arg(0)));
      case Op::LabelOf:
        expect(infer(ctx, e[0], here), K::Labeled, "labeled value", here);
        return Type::lio(Type::label());
      case Op::GetLabel: return Type::lio(Type::label());
      case Op::Taint:
        check(ctx, e[0], Type::label(), here);
        return Type::lio(Type::unit());
      case Op::New: {
        Type v = expect(infer(ctx, e[0], here), K::Labeled, "labeled value", here);
        return Type::lio(Type::ref(e.mode(), v.arg(0)));
      }
      case Op::Read: return Type::lio(expect(infer(ctx, e[0], here), K::Ref, "reference", here).arg(0));
      case Op::Write: {
        Type r = expect(infer(ctx, e[0], here + ".0"), K::Ref, "reference", here + ".0");
        check(ctx, e[1], Type::labeled(r.arg(0)), here + ".1");
        return Type::lio(Type::unit());
      }
      case Op::LabelOfRef:
        expect(infer(ctx, e[0], here), K::Ref, "reference", here);
        return Type::lio(Type::label());
    }
    throw TypeError(TypeError::Kind::Mismatch, at, "expression", "unknown operator");
  }

  void check(const Context& ctx, const Expr& e, const Type& want, const std::string& at) {
    const std::string here = at + "/" + op_name(e.op());
    switch (e.op()) {
      case Op::Lam:
        if (!e.annot()) {
          expect(want, K::Fun, "function", at);
          check(ctx.push(want.arg(0)), e[0], want.arg(1), here);
          return;
        }
        break;
      case Op::Inl:
      case Op::Inr:
        if (!e.annot()) {
          expect(want, K::Sum, "sum", at);
          check(ctx, e[0], want.arg(e.op() == Op::Inl ? 0 : 1), here);
          return;
        }
        break;
      case Op::App:
        if (e[0].op() == Op::Lam && !e[0].annot()) {
          Type a = infer(ctx, e[1], here + ".1");
          check(ctx.push(a), e[0][0], want, here + ".0");
          return;
        }
        break;
      case Op::Case: {
        Type s = expect(infer(ctx, e[0], here + ".0"), K::Sum, "sum", here + ".0");
        check(ctx.push(s.arg(0)), e[1], want, here + ".1");
        check(ctx.push(s.arg(1)), e[2], want, here + ".2");
        return;
      }
      case Op::Pair:
        if (want.is(K::Prod)) {
          check(ctx, e[0], want.arg(0), here + ".0");
          check(ctx, e[1], want.arg(1), here + ".1");
          return;
        }
        break;
      case Op::Wken: check(weakened(ctx, e, at), e[0], want, here); return;
      case Op::Return:
        if (want.is(K::Lio)) {
          check(ctx, e[0], want.arg(0), here);
          return;
        }
        break;
      case Op::Bind: {
        Type a = expect(infer(ctx, e[0], here + ".0"), K::Lio, "computation", here + ".0");
        check(ctx.push(a.arg(0)), e[1], want, here + ".1");
        return;
      }
      default: break;
    }
    Type got = infer(ctx, e, at);
    if (!(got == want)) throw TypeError(TypeError::Kind::Mismatch, at, want.to_string(), got.to_string());
  }

 private:
  static const Type& expect(const Type& t, K k, const char* what, const std::string& at) {
    if (!t.is(k)) throw TypeError(TypeError::Kind::Mismatch, at, what, t.to_string());
    return t;
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

}  // namespace ifc::cg
