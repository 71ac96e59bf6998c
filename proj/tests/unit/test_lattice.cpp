#include "doctest.h"
#include "ifc/lattice.hpp"

using ifc::Lattice;
using ifc::LatticeError;

TEST_SUITE("lattice") {
  TEST_CASE("two-point order and join") {
    auto lat = Lattice::load("two-point");
    auto L = lat.at("L"), H = lat.at("H");
    CHECK(lat.size() == 2);
    CHECK(lat.leq(L, H));
    CHECK_FALSE(lat.leq(H, L));
    CHECK(lat.leq(H, H));
    CHECK(lat.join(L, H) == H);
    CHECK(lat.join(L, L) == L);
  }

  TEST_CASE("one-principal powerset is two-point") {
    auto lat = Lattice::load("powerset:1");
    REQUIRE(lat.size() == 2);
    auto bot = *lat.bottom(), top = *lat.top();
    CHECK(bot != top);
    CHECK(lat.leq(bot, top));
    CHECK_FALSE(lat.leq(top, bot));
  }

  TEST_CASE("diamond from JSON") {
    auto lat = Lattice::load(R"({"points":["bot","A","B","top"],
      "order":[["bot","A"],["bot","B"],["A","top"],["B","top"]]})");
    auto A = lat.at("A"), B = lat.at("B");
    CHECK_FALSE(lat.leq(A, B));
    CHECK_FALSE(lat.leq(B, A));
    CHECK(lat.join(A, B) == lat.at("top"));
    CHECK(lat.leq(lat.at("bot"), lat.at("top")));  // transitive closure
  }

  TEST_CASE("lub laws hold exhaustively on builtins") {
    for (const char* spec : {"two-point", "powerset:2", "powerset:3"}) {
      auto lat = Lattice::load(spec);
      auto pts = lat.points();
      for (auto a : pts)
        for (auto b : pts) {
          auto j = lat.join(a, b);
          CHECK(lat.leq(a, j));
          CHECK(lat.leq(b, j));
          CHECK(j == lat.join(b, a));
          for (auto c : pts) {
            if (lat.leq(a, c) && lat.leq(b, c)) CHECK(lat.leq(j, c));
            CHECK(lat.join(a, lat.join(b, c)) == lat.join(lat.join(a, b), c));
          }
        }
    }
  }

  TEST_CASE("invalid lattices are rejected") {
    auto kind_of = [](const std::string& spec) {
      try {
        Lattice::load(spec);
      } catch (const LatticeError& e) {
        return static_cast<int>(e.kind());
      }
      return -1;
    };
    CHECK(kind_of(R"({"points":["a","b"],"order":[["a","b"],["b","a"]]})") ==
          static_cast<int>(LatticeError::Kind::NotAPartialOrder));
    CHECK(kind_of(R"({"points":["a","b"],"order":[]})") == static_cast<int>(LatticeError::Kind::NoJoinExists));
    CHECK(kind_of(R"({"points":["a","a"],"order":[]})") == static_cast<int>(LatticeError::Kind::DuplicatePoint));
  }

  TEST_CASE("labels of different lattices do not mix") {
    auto a = Lattice::from_order({"L", "H"}, {{"L", "H"}});
    auto b = Lattice::from_order({"L", "H"}, {{"L", "H"}});
    CHECK_THROWS_AS(a.leq(a.at("L"), b.at("H")), LatticeError);
    CHECK_THROWS_AS(a.leq(a.at("L"), Lattice::two_point().at("H")), LatticeError);
  }

  TEST_CASE("builtin lattices are shared") {
    CHECK(Lattice::two_point() == Lattice::load("two-point"));
    CHECK(Lattice::powerset(2) == Lattice::load("powerset:2"));
    CHECK(Lattice::two_point().leq(Lattice::two_point().at("L"), Lattice::load("two-point").at("H")));
  }
}
