#include <fstream>
#include <sstream>

#include "doctest.h"
#include "ifc/harness/gen.hpp"
#include "ifc/harness/inputs.hpp"
#include "ifc/surface/program.hpp"

using ifc::Context;
using ifc::Lattice;
using ifc::Type;
using ifc::TypeError;
using namespace ifc::surface;
namespace harness = ifc::harness;

namespace {

std::string slurp(const std::string& name) {
  std::ifstream in(std::string(IFC_CORPUS_DIR) + "/" + name);
  REQUIRE(in.good());
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

RunResult run_file(const std::string& name, ifc::Mutation m = ifc::Mutation::None) {
  auto p = parse_program(slurp(name), {calculus_from_path(name), std::nullopt, std::nullopt});
  check_program(p);
  return run_program(p, {100'000, m});
}

std::string value_of(const RunResult& r, const Lattice& lat) {
  auto j = r.to_json(lat);
  return j["value"].is_null() ? "<none>" : j["value"].get<std::string>();
}

}  // namespace

TEST_SUITE("surface") {
  TEST_CASE("types parse and print") {
    for (const char* t : {"unit", "label", "bool", "(-> unit (+ label unit))", "(* (ref I bool) (ref S unit))",
                          "(lio (labeled unit))"})
      CHECK(parse_type(t).to_string() == t);
    CHECK_THROWS_AS(parse_type("(ref X unit)"), ParseError);
  }

  TEST_CASE("parse errors carry a position") {
    Lattice lat = Lattice::two_point();
    try {
      parse_fg("(pair unit\n  (fst))", lat);
      FAIL("no error");
    } catch (const ParseError& e) {
      CHECK(e.line() == 2);
      CHECK(e.col() == 3);
    }
    CHECK_THROWS_AS(parse_fg("(pair unit", lat), ParseError);
    CHECK_THROWS_AS(parse_fg("nope", lat), ParseError);
    CHECK_THROWS_AS(parse_cg("(let x unit x)", lat), ParseError);
  }

  TEST_CASE("scrutinising unit is a type error") {
    auto p = parse_program("(main (case unit x x x x))");
    CHECK_THROWS_AS(check_program(p), TypeError);
  }

  TEST_CASE("names resolve to variables before lattice points") {
    Lattice lat = Lattice::two_point();
    CHECK(parse_fg("(lam H : unit H)", lat) == ifc::fg::lam(Type::unit(), ifc::fg::var(0)));
    CHECK(parse_fg("(lam x : unit H)", lat) == ifc::fg::lam(Type::unit(), ifc::fg::lbl(lat.at("H"))));
  }

  TEST_CASE("sugar desugars to the core forms") {
    Lattice lat = Lattice::two_point();
    using namespace ifc::fg;
    CHECK(parse_fg("(if true unit unit)", lat) == if_then_else(tt(), unit(), unit()));
    CHECK(parse_fg("(seq unit unit)", lat) == seq(unit(), unit()));
    CHECK(parse_fg("(let x unit x)", lat) == let_in(unit(), var(0)));
    namespace cg = ifc::cg;
    CHECK(parse_cg("(do (<- x (get-label)) (taint x) (return x))", lat) ==
          cg::bind(cg::get_label(), cg::seq(cg::taint(cg::var(0)), cg::ret(cg::var(0)))));
  }

  TEST_CASE("powerset labels read as single atoms") {
    Lattice lat = Lattice::powerset(2);
    auto e = parse_fg("(taint {p0,p1} unit)", lat);
    CHECK(print_fg(e, lat) == "(taint {p0,p1} unit)");
  }

  TEST_CASE("print then parse is the identity on generated terms") {
    harness::GenConfig cfg;
    Lattice lat = cfg.lattice;
    for (std::uint64_t i = 0; i < 2'000; ++i) {
      harness::Rng rng(harness::trial_seed(21, i));
      harness::FgGen fg(rng, cfg);
      harness::CgGen cg(rng, cfg);
      std::vector<Type> in;
      for (int k = rng.range(0, 3); k > 0; --k) in.push_back(fg.input_type());
      auto ctx = Context::from_innermost_first(in);
      auto e = fg.program(ctx, fg.type(2), 20);
      auto text = print_fg(e, lat, ctx.size());
      auto back = parse_fg(text, lat, default_scope(ctx.size(), lat));
      CHECK_MESSAGE(back == e, text);
      auto c = cg.program(ctx, cg.type(2), 20);
      auto ctext = print_cg(c, lat, ctx.size());
      CHECK_MESSAGE(parse_cg(ctext, lat, default_scope(ctx.size(), lat)) == c, ctext);
    }
  }

  TEST_CASE("value JSON round-trips") {
    harness::GenConfig cfg;
    Lattice lat = cfg.lattice;
    for (std::uint64_t i = 0; i < 500; ++i) {
      harness::Rng rng(harness::trial_seed(22, i));
      harness::FgGen fg(rng, cfg);
      harness::CgGen cg(rng, cfg);
      std::vector<Type> ft{fg.input_type(), fg.input_type()}, ct{cg.input_type(), cg.input_type()};
      auto a = harness::gen_fg_inputs(rng, cfg, ft, 2).sides[0];
      auto b = harness::gen_cg_inputs(rng, cfg, ct, 2).sides[0];
      ifc::fg::Final fc{a.store, a.heap, a.env.at(0)};
      CHECK(fg_final_from_json(to_json(fc, lat), lat) == fc);
      ifc::cg::Final cc{b.store, b.heap, lat.at("H"), b.env.at(1)};
      CHECK(cg_final_from_json(to_json(cc, lat), lat) == cc);
    }
  }

  TEST_CASE("value printing") {
    Lattice lat = Lattice::two_point();
    auto L = lat.at("L"), H = lat.at("H");
    using namespace ifc::fg;
    CHECK(show(unit_value(H), lat) == "()^H");
    CHECK(show(bool_value(false, H, H), lat) == "false^H");
    CHECK(show(bool_value(true, L, H), lat) == "(inl ()^L)^H");
    CHECK(show(labeled(make_raw(PairV{unit_value(L), unit_value(L)}), L), lat) == "((()^L, ()^L))^L");
    CHECK(show(ifc::cg::labeled(L, ifc::cg::bool_value(true)), lat) == "Labeled L true");
  }

  TEST_CASE("corpus programs reproduce their documented results") {
    Lattice lat = Lattice::two_point();
    CHECK(value_of(run_file("var.fg"), lat) == "()^H");
    CHECK(value_of(run_file("app.fg"), lat) == "()^L");
    CHECK(value_of(run_file("fs_upgrade.fg"), lat) == "false^H");
    auto fi = run_file("fs_upgrade_fi.fg").to_json(lat);
    CHECK(fi["outcome"] == "abort");
    CHECK(fi["abort"]["rule"] == "Write");
    auto nsu = run_file("nsu.fg").to_json(lat);
    CHECK(nsu["outcome"] == "abort");
    CHECK(nsu["abort"]["rule"] == "Write-FS");
    CHECK(value_of(run_file("nsu.fg", ifc::Mutation::DropNsu), lat) == "true^H");
    CHECK(value_of(run_file("pair.fg"), lat) == "((()^L, ()^L))^L");
    auto t = run_file("taint.cg").to_json(lat);
    CHECK(t["value"] == "true");
    CHECK(t["final_pc"] == "H");
  }

  TEST_CASE("translated corpus programs") {
    Lattice lat = Lattice::two_point();
    auto pair = parse_program(slurp("pair.fg"));
    auto cg = translate_program(pair);
    CHECK(cg.calculus == Calculus::Cg);
    CHECK(value_of(run_program(cg), lat) == "Labeled L (Labeled L (), Labeled L ())");
    auto taint = parse_program(slurp("taint.cg"), {Calculus::Cg, std::nullopt, std::nullopt});
    auto fg = translate_program(taint);
    check_program(fg);
    CHECK(value_of(run_program(fg), lat) == "(inl ()^L)^H");
  }

  TEST_CASE("program text round-trips") {
    for (const char* f : {"var.fg", "app.fg", "fs_upgrade.fg", "fs_upgrade_fi.fg", "nsu.fg", "pair.fg", "taint.cg"}) {
      auto p = parse_program(slurp(f), {calculus_from_path(f), std::nullopt, std::nullopt});
      auto text = print_program(p);
      auto q = parse_program(text);
      CHECK(print_program(q) == text);
      CHECK(q.calculus == p.calculus);
      if (p.calculus == Calculus::Fg) CHECK(q.fg_main == p.fg_main);
      else CHECK(q.cg_main == p.cg_main);
    }
  }
}
