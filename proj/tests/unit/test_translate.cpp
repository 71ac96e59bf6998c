#include "doctest.h"
#include "ifc/cg/eval.hpp"
#include "ifc/cg/typecheck.hpp"
#include "ifc/fg/eval.hpp"
#include "ifc/fg/typecheck.hpp"
#include "ifc/security/cross.hpp"
#include "ifc/translate/cg2fg.hpp"
#include "ifc/translate/fg2cg.hpp"

using ifc::Context;
using ifc::Label;
using ifc::Lattice;
using ifc::RefMode;
using ifc::Type;
using namespace ifc::translate;
namespace fg = ifc::fg;
namespace cg = ifc::cg;

namespace {

struct Two {
  Lattice lat = Lattice::two_point();
  Label L = lat.at("L"), H = lat.at("H");
};

// Runs e in FG and its translation in CG; both must agree exactly.
void check_fg2cg(const Two& t, const fg::Expr& e, const std::vector<fg::Value>& env, Label pc) {
  auto src = fg::eval(t.lat, fg::Store{}, fg::Heap{}, e, fg::Env::from_vector(env), pc, 100'000);
  auto tgt = cg::eval_force(t.lat, cg::Store{}, cg::Heap{}, pc, fg2cg_expr(e), fg2cg_env(fg::Env::from_vector(env)),
                            1'000'000);
  if (src.final()) {
    REQUIRE(tgt.final());
    CHECK(*tgt.final() == fg2cg_final(*src.final(), pc));
  } else {
    CHECK_FALSE(tgt.final());
  }
}

fg::Expr upgrade(RefMode mode) {
  using namespace fg;
  return let_in(new_ref(mode, var(1)), seq(write(var(0), var(1)), read(var(0))));
}

}  // namespace

TEST_SUITE("translate") {
  TEST_CASE("fg2cg types") {
    CHECK(fg2cg_type(Type::unit()) == Type::labeled(Type::unit()));
    auto f = Type::fun(Type::unit(), Type::label());
    CHECK(fg2cg_type(f) == Type::labeled(Type::fun(Type::labeled(Type::unit()), Type::lio(Type::labeled(Type::label())))));
    CHECK(fg2cg_type(Type::ref(RefMode::Sensitive, Type::unit())) ==
          Type::labeled(Type::ref(RefMode::Sensitive, Type::unit())));
  }

  TEST_CASE("fg2cg values") {
    Two t;
    CHECK(fg2cg_value(fg::bool_value(true, t.L, t.H)) ==
          cg::labeled(t.H, cg::make(cg::InlV{cg::labeled(t.L, cg::unit_value())})));
    auto ref = fg::labeled(fg::make_raw(fg::FiRef{0, t.H}), t.L);
    CHECK(fg2cg_value(ref) == cg::labeled(t.L, cg::make(cg::FiRef{0, t.H})));
  }

  TEST_CASE("fg2cg variable") { CHECK(fg2cg_expr(fg::var(0)) == cg::to_labeled(cg::unlabel(cg::var(0)))); }

  TEST_CASE("fg2cg pair reduces to nested labeled values") {
    Two t;
    auto out = cg::eval_force(t.lat, cg::Store{}, cg::Heap{}, t.L, fg2cg_expr(fg::pair(fg::unit(), fg::unit())),
                              cg::Env{}, 1000);
    REQUIRE(out.final());
    auto lu = cg::labeled(t.L, cg::unit_value());
    CHECK(out.final()->value == cg::labeled(t.L, cg::make(cg::PairV{lu, lu})));
    CHECK(out.final()->pc == t.L);
  }

  TEST_CASE("fg2cg preserves semantics on hand-written programs") {
    Two t;
    using namespace fg;
    auto sH = bool_value(false, t.H, t.H), pL = bool_value(true, t.L, t.L);
    check_fg2cg(t, upgrade(RefMode::Sensitive), {sH, pL}, t.L);
    check_fg2cg(t, upgrade(RefMode::Insensitive), {sH, pL}, t.L);
    check_fg2cg(t, upgrade(RefMode::Insensitive), {pL, pL}, t.L);
    check_fg2cg(t, app(lam(Type::boolean(), pair(var(0), get_label())), var(0)), {sH}, t.L);
    check_fg2cg(t, case_of(var(0), var(1), var(1)), {pL, sH}, t.L);
    check_fg2cg(t, taint(lbl(t.H), flows_to(label_of(var(0)), get_label())), {pL}, t.L);
    check_fg2cg(t, label_of_ref(new_ref(RefMode::Sensitive, var(0))), {sH}, t.L);
    check_fg2cg(t, fst(pair(var(0), unit())), {sH}, t.H);
  }

  TEST_CASE("fg2cg preserves types") {
    using namespace fg;
    auto ctx = Context::from_innermost_first({Type::boolean(), Type::boolean()});
    for (auto mode : {RefMode::Sensitive, RefMode::Insensitive}) {
      auto e = upgrade(mode);
      auto ty = typecheck(ctx, e);
      CHECK(cg::typecheck(fg2cg_context(ctx), fg2cg_expr(e)) == Type::lio(fg2cg_type(ty)));
    }
    auto f = lam(Type::unit(), flows_to(get_label(), label_of(var(0))));
    CHECK(cg::typecheck(Context{}, fg2cg_expr(f)) == Type::lio(fg2cg_type(typecheck(Context{}, f))));
  }

  TEST_CASE("cg2fg types") {
    CHECK(cg2fg_type(Type::labeled(Type::unit())) == Type::prod(Type::label(), Type::unit()));
    CHECK(cg2fg_type(Type::lio(Type::label())) == Type::fun(Type::unit(), Type::label()));
  }

  TEST_CASE("cg2fg values") {
    Two t;
    CHECK(cg2fg_value(cg::bool_value(true), t.L) == fg::bool_value(true, t.L, t.L));
    auto lab = fg::labeled(fg::make_raw(fg::LabelV{t.H}), t.H);
    CHECK(cg2fg_value(cg::labeled(t.H, cg::unit_value()), t.L) ==
          fg::labeled(fg::make_raw(fg::PairV{lab, fg::unit_value(t.H)}), t.L));
  }

  TEST_CASE("cg2fg of taint-then-return is a let over taint") {
    Two t;
    auto e = cg::seq(cg::taint(cg::lbl(t.H)), cg::ret(cg::var(0)));
    auto body = cg2fg_thunk_body(e);
    REQUIRE(body.op() == fg::Op::App);  // let y = ... in ...
    CHECK(body[1] == fg::app(cg2fg_expr(cg::taint(cg::lbl(t.H))), fg::unit()));
    CHECK(body[0][0].op() == fg::Op::Taint);
    CHECK(body[0][0][0] == fg::label_of(fg::var(0)));
  }

  TEST_CASE("cg2fg forced translation relates to the source run") {
    Two t;
    auto e = cg::seq(cg::taint(cg::lbl(t.H)), cg::ret(cg::var(0)));
    auto env = cg::Env::from_vector({cg::bool_value(true)});
    auto src = cg::eval_force(t.lat, cg::Store{}, cg::Heap{}, t.L, e, env, 1000);
    REQUIRE(src.final());
    auto tgt = fg::eval(t.lat, fg::Store{}, fg::Heap{}, fg::app(cg2fg_expr(e), fg::unit()), cg2fg_env(env, t.L), t.L,
                        10'000);
    REQUIRE(tgt.final());
    auto expected = fg::bool_value(true, t.L, t.H);
    CHECK(tgt.final()->value == expected);
    CHECK(tgt.final()->value != cg2fg_value(cg::bool_value(true), t.H));
    CHECK(ifc::cross::config_rel(t.lat, *tgt.final(), *src.final()));
  }

  TEST_CASE("cg2fg preserves types") {
    using namespace cg;
    auto ctx = Context::from_innermost_first({Type::labeled(Type::boolean()), Type::labeled(Type::boolean())});
    auto e = bind(new_ref(RefMode::Sensitive, var(1)),
                  seq(write(var(0), var(1)), bind(to_labeled(read(var(0))), label_of(var(0)))));
    auto ty = typecheck(ctx, e);
    CHECK(fg::typecheck(cg2fg_context(ctx), cg2fg_expr(e)) == cg2fg_type(ty));
  }
}
