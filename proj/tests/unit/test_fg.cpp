#include "doctest.h"
#include "ifc/fg/eval.hpp"
#include "ifc/fg/typecheck.hpp"

using ifc::Context;
using ifc::Label;
using ifc::Lattice;
using ifc::Mutation;
using ifc::RefMode;
using ifc::Type;
using ifc::TypeError;
using namespace ifc::fg;

namespace {

struct Two {
  Lattice lat = Lattice::two_point();
  Label L = lat.at("L"), H = lat.at("H");
};

Outcome run(const Two& t, const Expr& e, const std::vector<Value>& env, Label pc,
            Mutation m = Mutation::None) {
  return eval(t.lat, Store{}, Heap{}, e, Env::from_vector(env), pc, 10'000, m);
}

// let r = new p in r := s; !r   with env [s, p]
Expr upgrade_program(RefMode mode) {
  return let_in(new_ref(mode, var(1)), seq(write(var(0), var(1)), read(var(0))));
}

// let r = new p in (if s then r := s else ()); !r
Expr nsu_program() {
  return let_in(new_ref(RefMode::Sensitive, var(1)),
                seq(if_then_else(var(1), write(var(0), var(1)), unit()), read(var(0))));
}

}  // namespace

TEST_SUITE("fg") {
  TEST_CASE("variable lookup taints with pc") {
    Two t;
    auto out = run(t, var(0), {unit_value(t.L)}, t.H);
    REQUIRE(out.final());
    CHECK(out.final()->value == unit_value(t.H));
  }

  TEST_CASE("unused secret argument does not taint") {
    Two t;
    auto e = app(lam(Type::boolean(), unit()), var(0));
    auto out = run(t, e, {bool_value(true, t.H, t.H)}, t.L);
    REQUIRE(out.final());
    CHECK(out.final()->value == unit_value(t.L));
  }

  TEST_CASE("pairs label every layer") {
    Two t;
    auto out = run(t, pair(unit(), unit()), {}, t.L);
    REQUIRE(out.final());
    CHECK(out.final()->value == labeled(make_raw(PairV{unit_value(t.L), unit_value(t.L)}), t.L));
  }

  TEST_CASE("getLabel and labelOf") {
    Two t;
    auto g = run(t, get_label(), {}, t.H);
    REQUIRE(g.final());
    CHECK(g.final()->value == labeled(make_raw(LabelV{t.H}), t.H));
    auto l = run(t, label_of(var(0)), {unit_value(t.H)}, t.L);
    REQUIRE(l.final());
    CHECK(l.final()->value == labeled(make_raw(LabelV{t.H}), t.H));
  }

  TEST_CASE("taint raises the label of the body") {
    Two t;
    auto out = run(t, taint(lbl(t.H), var(0)), {unit_value(t.L)}, t.L);
    REQUIRE(out.final());
    CHECK(out.final()->value == unit_value(t.H));
  }

  TEST_CASE("flows-to test") {
    Two t;
    auto yes = run(t, flows_to(lbl(t.L), lbl(t.H)), {}, t.L);
    REQUIRE(yes.final());
    CHECK(yes.final()->value == bool_value(true, t.L, t.L));
    auto no = run(t, flows_to(lbl(t.H), lbl(t.L)), {}, t.L);
    REQUIRE(no.final());
    CHECK(no.final()->value == bool_value(false, t.L, t.L));
  }

  TEST_CASE("flow-sensitive upgrade succeeds, flow-insensitive twin aborts at Write") {
    Two t;
    std::vector<Value> env{bool_value(false, t.H, t.H), bool_value(true, t.L, t.L)};
    auto fs = run(t, upgrade_program(RefMode::Sensitive), env, t.L);
    REQUIRE(fs.final());
    CHECK(fs.final()->value == bool_value(false, t.H, t.H));
    REQUIRE(fs.final()->heap.size() == 1);
    CHECK(fs.final()->heap[0] == bool_value(false, t.H, t.H));
    auto fi = run(t, upgrade_program(RefMode::Insensitive), env, t.L);
    REQUIRE(fi.abort());
    CHECK(fi.abort()->rule == "Write");
  }

  TEST_CASE("no-sensitive-upgrade") {
    Two t;
    auto p = bool_value(true, t.L, t.L);
    auto out1 = run(t, nsu_program(), {bool_value(false, t.H, t.H), p}, t.L);
    REQUIRE(out1.final());
    CHECK(out1.final()->value == p);
    auto out2 = run(t, nsu_program(), {bool_value(true, t.H, t.H), p}, t.L);
    REQUIRE(out2.abort());
    CHECK(out2.abort()->rule == "Write-FS");
    auto leak = run(t, nsu_program(), {bool_value(true, t.H, t.H), p}, t.L, Mutation::DropNsu);
    REQUIRE(leak.final());
    CHECK(leak.final()->value.label == t.H);
  }

  TEST_CASE("fuel exhaustion is a timeout, more fuel gives the same final") {
    Two t;
    auto e = pair(unit(), pair(unit(), unit()));
    auto starved = eval(t.lat, Store{}, Heap{}, e, Env{}, t.L, 2);
    CHECK(starved.timed_out());
    auto a = eval(t.lat, Store{}, Heap{}, e, Env{}, t.L, 5);
    auto b = eval(t.lat, Store{}, Heap{}, e, Env{}, t.L, 500);
    REQUIRE(a.final());
    REQUIRE(b.final());
    CHECK(*a.final() == *b.final());
    CHECK(a.fuel_used == 5);
  }

  TEST_CASE("typechecking") {
    Context empty;
    CHECK(typecheck(empty, lam(Type::unit(), var(0))) == Type::fun(Type::unit(), Type::unit()));
    CHECK(typecheck(empty, new_ref(RefMode::Insensitive, unit())) == Type::ref(RefMode::Insensitive, Type::unit()));
    CHECK_THROWS_AS(typecheck(empty, fst(unit())), TypeError);
    CHECK_THROWS_AS(typecheck(empty, var(0)), TypeError);
    auto ctx = Context::from_innermost_first({Type::boolean(), Type::boolean()});
    CHECK(typecheck(ctx, upgrade_program(RefMode::Sensitive)) == Type::boolean());
    CHECK(typecheck(ctx, nsu_program()) == Type::boolean());
  }
}
