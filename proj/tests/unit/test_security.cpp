#include "doctest.h"
#include "ifc/security/bijection.hpp"
#include "ifc/security/cg_equiv.hpp"
#include "ifc/security/cross.hpp"
#include "ifc/security/fg_equiv.hpp"

using ifc::Bijection;
using ifc::Label;
using ifc::Lattice;
using ifc::NotInjective;
using ifc::Observer;
namespace fg = ifc::fg;
namespace cg = ifc::cg;

namespace {

struct Two {
  Lattice lat = Lattice::two_point();
  Label L = lat.at("L"), H = lat.at("H");
  Observer obs{lat, L};
};

fg::Value fs(std::uint32_t n, Label l) { return fg::labeled(fg::make_raw(fg::FsRef{n}), l); }

}  // namespace

TEST_SUITE("security") {
  TEST_CASE("bijection basics") {
    CHECK(Bijection::identity(3).inverse() == Bijection::identity(3));
    auto one = Bijection::from_pairs({{0, 1}});
    CHECK(compose(Bijection::identity(2), one) == one);
    CHECK(Bijection::from_pairs({{0, 1}, {2, 0}}).inverse() == Bijection::from_pairs({{1, 0}, {0, 2}}));
    CHECK_THROWS_AS(Bijection::from_pairs({{0, 1}, {0, 2}}), NotInjective);
    CHECK_THROWS_AS(Bijection::from_pairs({{0, 1}, {2, 1}}), NotInjective);
    CHECK(one.extends(Bijection{}));
    CHECK_FALSE(Bijection{}.extends(one));
  }

  TEST_CASE("fg value equivalence") {
    Two t;
    Bijection none;
    CHECK(fg::low_equiv(t.obs, none, fg::unit_value(t.L), fg::unit_value(t.L)));
    CHECK(fg::low_equiv(t.obs, none, fg::bool_value(true, t.L, t.H), fg::bool_value(false, t.L, t.H)));
    CHECK_FALSE(fg::low_equiv(t.obs, none, fg::bool_value(true, t.L, t.L), fg::bool_value(false, t.L, t.L)));
    CHECK_FALSE(fg::low_equiv(t.obs, none, fg::unit_value(t.L), fg::unit_value(t.H)));
    CHECK(fg::low_equiv(t.obs, Bijection::from_pairs({{0, 1}}), fs(0, t.L), fs(1, t.L)));
    CHECK_FALSE(fg::low_equiv(t.obs, Bijection::identity(1), fs(0, t.L), fs(1, t.L)));
  }

  TEST_CASE("fg validity") {
    Two t;
    CHECK(fg::valid(0, fg::labeled(fg::make_raw(fg::FiRef{3, t.H}), t.L)));
    CHECK(fg::valid(1, fs(0, t.L)));
    CHECK_FALSE(fg::valid(1, fs(1, t.L)));
    CHECK_FALSE(fg::valid_outputs(fg::Final{fg::Store{}, fg::Heap{fs(1, t.L)}, fg::unit_value(t.L)}));
  }

  TEST_CASE("fg bijection search") {
    Two t;
    fg::Final c1{fg::Store{}, fg::Heap{fg::unit_value(t.L)}, fs(0, t.L)};
    fg::Final c2{fg::Store{}, fg::Heap{fg::unit_value(t.H), fg::unit_value(t.L)}, fs(1, t.L)};
    auto b = fg::find_bijection(t.obs, Bijection{}, c1, c2);
    REQUIRE(b);
    CHECK(*b == Bijection::from_pairs({{0, 1}}));
    CHECK(fg::find_bijection(t.obs, Bijection::identity(1), c1, c1) == Bijection::identity(1));
    fg::Final d1{fg::Store{}, fg::Heap{}, fg::bool_value(true, t.L, t.L)};
    fg::Final d2{fg::Store{}, fg::Heap{}, fg::bool_value(false, t.L, t.L)};
    CHECK_FALSE(fg::find_bijection(t.obs, Bijection{}, d1, d2));
  }

  TEST_CASE("cg equivalence") {
    Two t;
    Bijection none;
    auto x = cg::labeled(t.H, cg::unit_value());
    auto y = cg::labeled(t.L, cg::unit_value());
    CHECK_FALSE(cg::low_equiv(t.obs, none, x, y));
    CHECK(cg::low_equiv(t.obs, none, cg::labeled(t.H, cg::bool_value(true)), cg::labeled(t.H, cg::bool_value(false))));
    cg::Final a{cg::Store{}, cg::Heap{}, t.H, cg::bool_value(true)};
    cg::Final b{cg::Store{}, cg::Heap{}, t.H, cg::unit_value()};
    CHECK(cg::low_equiv(t.obs, none, a, b));
    cg::Final c{cg::Store{}, cg::Heap{}, t.L, cg::bool_value(true)};
    cg::Final d{cg::Store{}, cg::Heap{}, t.L, cg::bool_value(false)};
    CHECK_FALSE(cg::low_equiv(t.obs, none, c, d));
    auto th = cg::make(cg::ThunkClosure{cg::ret(cg::var(0)), cg::Env::from_vector({cg::unit_value()})});
    CHECK(cg::low_equiv(t.obs, none, th, th));
  }

  TEST_CASE("cross-language relation") {
    Two t;
    using ifc::cross::ceq;
    CHECK(ceq(t.lat, t.H, fg::bool_value(true, t.L, t.H), cg::bool_value(true)));
    auto lab = fg::labeled(fg::make_raw(fg::LabelV{t.H}), t.H);
    auto pair = fg::labeled(fg::make_raw(fg::PairV{lab, fg::unit_value(t.H)}), t.L);
    CHECK(ceq(t.lat, t.L, pair, cg::labeled(t.H, cg::unit_value())));
    CHECK_FALSE(ceq(t.lat, t.L, fg::unit_value(t.H), cg::unit_value()));
  }
}
