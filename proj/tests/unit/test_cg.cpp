#include "doctest.h"
#include "ifc/cg/eval.hpp"
#include "ifc/cg/typecheck.hpp"

using ifc::Context;
using ifc::Label;
using ifc::Lattice;
using ifc::Mutation;
using ifc::RefMode;
using ifc::Type;
using ifc::TypeError;
using namespace ifc::cg;

namespace {

struct Two {
  Lattice lat = Lattice::two_point();
  Label L = lat.at("L"), H = lat.at("H");
};

Outcome force(const Two& t, const Expr& e, const std::vector<Value>& env, Label pc, Mutation m = Mutation::None) {
  return eval_force(t.lat, Store{}, Heap{}, pc, e, Env::from_vector(env), 10'000, m);
}

}  // namespace

TEST_SUITE("cg") {
  TEST_CASE("pure evaluation") {
    Two t;
    auto th = eval_pure(t.lat, ret(var(0)), Env::from_vector({unit_value()}), 100);
    REQUIRE(th.value());
    REQUIRE(th.value()->is<ThunkClosure>());
    CHECK(th.value()->get<ThunkClosure>()->thunk == ret(var(0)));
    auto c = eval_pure(t.lat, case_of(inl(unit(), Type::unit()), var(0), unit()), Env{}, 100);
    REQUIRE(c.value());
    CHECK(*c.value() == unit_value());
    auto a = eval_pure(t.lat, app(lam(Type::label(), var(0)), lbl(t.H)), Env{}, 100);
    REQUIRE(a.value());
    CHECK(*a.value() == make(LabelV{t.H}));
  }

  TEST_CASE("taint then return") {
    Two t;
    auto out = force(t, seq(taint(lbl(t.H)), ret(var(0))), {bool_value(true)}, t.L);
    REQUIRE(out.final());
    CHECK(out.final()->pc == t.H);
    CHECK(out.final()->value == bool_value(true));
  }

  TEST_CASE("unlabel raises pc, toLabeled restores it") {
    Two t;
    std::vector<Value> env{labeled(t.H, unit_value())};
    auto u = force(t, unlabel(var(0)), env, t.L);
    REQUIRE(u.final());
    CHECK(u.final()->pc == t.H);
    CHECK(u.final()->value == unit_value());
    auto tl = force(t, to_labeled(unlabel(var(0))), env, t.L);
    REQUIRE(tl.final());
    CHECK(tl.final()->pc == t.L);
    CHECK(tl.final()->value == labeled(t.H, unit_value()));
  }

  TEST_CASE("no write-down on new") {
    Two t;
    std::vector<Value> env{labeled(t.L, unit_value())};
    auto out = force(t, new_ref(RefMode::Insensitive, var(0)), env, t.H);
    REQUIRE(out.abort());
    CHECK(out.abort()->rule == "New");
    auto mutant = force(t, new_ref(RefMode::Insensitive, var(0)), env, t.H, Mutation::DropNewPc);
    CHECK(mutant.final());
  }

  TEST_CASE("flow-sensitive upgrade") {
    Two t;
    // r <- new p; r := s; !r   with env [s, p]
    auto e = bind(new_ref(RefMode::Sensitive, var(1)), seq(write(var(0), var(1)), read(var(0))));
    auto out = force(t, e, {labeled(t.H, bool_value(false)), labeled(t.L, bool_value(true))}, t.L);
    REQUIRE(out.final());
    CHECK(out.final()->pc == t.H);
    CHECK(out.final()->value == bool_value(false));
    REQUIRE(out.final()->heap.size() == 1);
    CHECK(out.final()->heap[0] == HeapCell{t.H, bool_value(false)});
  }

  TEST_CASE("typing of thunks") {
    Context empty;
    CHECK(typecheck(empty, ret(unit())) == Type::lio(Type::unit()));
    auto ctx = Context::from_innermost_first({Type::labeled(Type::unit())});
    CHECK(typecheck(ctx, unlabel(var(0))) == Type::lio(Type::unit()));
    CHECK(typecheck(empty, to_labeled(ret(unit()))) == Type::lio(Type::labeled(Type::unit())));
    CHECK_THROWS_AS(typecheck(empty, unlabel(unit())), TypeError);
  }
}
