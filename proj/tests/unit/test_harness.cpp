#include "doctest.h"
#include "ifc/cg/typecheck.hpp"
#include "ifc/fg/typecheck.hpp"
#include "ifc/harness/gen.hpp"

using ifc::Context;
using ifc::Type;
using ifc::TypeError;
using namespace ifc::harness;

TEST_SUITE("harness") {
  TEST_CASE("canonical inhabitants at size zero") {
    GenConfig cfg;
    Rng rng(1);
    FgGen fg(rng, cfg);
    CgGen cg(rng, cfg);
    CHECK(fg.expr(Context{}, Type::unit(), 0) == ifc::fg::unit());
    CHECK(cg.canonical_lio(Type::unit()) == ifc::cg::ret(ifc::cg::unit()));
  }

  TEST_CASE("fine-grained generator is sound") {
    GenConfig cfg;
    int failures = 0;
    for (std::uint64_t i = 0; i < 10'000; ++i) {
      Rng rng(trial_seed(11, i));
      FgGen gen(rng, cfg);
      std::vector<Type> inputs;
      for (int k = rng.range(0, 3); k > 0; --k) inputs.push_back(gen.input_type());
      auto ctx = Context::from_innermost_first(inputs);
      Type t = gen.type(2);
      auto e = gen.program(ctx, t, 20);
      try {
        if (!(ifc::fg::typecheck(ctx, e) == t)) ++failures;
      } catch (const TypeError& err) {
        ++failures;
        if (failures < 3) MESSAGE(err.what());
      }
    }
    CHECK(failures == 0);
  }

  TEST_CASE("coarse-grained generator is sound") {
    GenConfig cfg;
    int failures = 0;
    for (std::uint64_t i = 0; i < 10'000; ++i) {
      Rng rng(trial_seed(12, i));
      CgGen gen(rng, cfg);
      std::vector<Type> inputs;
      for (int k = rng.range(0, 3); k > 0; --k) inputs.push_back(gen.input_type());
      auto ctx = Context::from_innermost_first(inputs);
      Type t = gen.type(2);
      auto e = gen.program(ctx, t, 20);
      try {
        if (!(ifc::cg::typecheck(ctx, e) == Type::lio(t))) ++failures;
      } catch (const TypeError& err) {
        ++failures;
        if (failures < 3) MESSAGE(err.what());
      }
    }
    CHECK(failures == 0);
  }
}

#include "ifc/harness/inputs.hpp"

TEST_SUITE("harness") {
  TEST_CASE("related input generators re-verify their output") {
    GenConfig cfg;
    for (std::uint64_t i = 0; i < 2'000; ++i) {
      Rng rng(trial_seed(13, i));
      FgGen fg(rng, cfg);
      CgGen cg(rng, cfg);
      std::vector<Type> ft, ct;
      for (int n = rng.range(1, 3); n > 0; --n) {
        ft.push_back(fg.input_type());
        ct.push_back(cg.input_type());
      }
      int k = rng.range(2, 3);
      FgInputs a;
      CgInputs b;
      REQUIRE_NOTHROW(a = gen_fg_inputs(rng, cfg, ft, k));
      REQUIRE_NOTHROW(b = gen_cg_inputs(rng, cfg, ct, k));
      REQUIRE(a.sides.size() == static_cast<std::size_t>(k));
      for (const auto& w : a.sides) {
        std::size_t j = 0;
        w.env.for_each([&](const ifc::fg::Value& v) { CHECK(fg_value_has_type(v, ft[j++], w.store, w.heap)); });
      }
      for (const auto& w : b.sides) {
        std::size_t j = 0;
        w.env.for_each([&](const ifc::cg::Value& v) { CHECK(cg_value_has_type(v, ct[j++], w.store, w.heap)); });
      }
    }
  }

  TEST_CASE("secret positions vary and public ones are shared") {
    GenConfig cfg;
    cfg.secret_bias = 1.0;
    bool differed = false;
    for (std::uint64_t i = 0; i < 200 && !differed; ++i) {
      Rng rng(trial_seed(14, i));
      auto in = gen_fg_inputs(rng, cfg, {Type::sum(Type::unit(), Type::unit())}, 2);
      differed = !(in.sides[0].env == in.sides[1].env);
    }
    CHECK(differed);
    cfg.secret_bias = 0.0;
    for (std::uint64_t i = 0; i < 200; ++i) {
      Rng rng(trial_seed(15, i));
      auto in = gen_fg_inputs(rng, cfg, {Type::sum(Type::unit(), Type::unit())}, 2);
      CHECK(in.sides[0].env == in.sides[1].env);
    }
  }
}

#include "ifc/harness/suite.hpp"

namespace {

nlohmann::ordered_json without_duration(const SuiteReport& r) {
  auto j = r.to_json();
  j.erase("duration");
  return j;
}

}  // namespace

TEST_SUITE("harness") {
  TEST_CASE("every suite passes a short run") {
    for (const auto& name : suite_names()) {
      SuiteConfig cfg;
      cfg.suite = name;
      cfg.trials = 100;
      cfg.seed = 5;
      auto r = run_suite(cfg);
      CHECK_MESSAGE(r.ok(), name);
      CHECK_MESSAGE(r.trials_run == 100, name);
      CHECK_MESSAGE(r.vacuous_fraction() < 0.5, name);
    }
  }

  TEST_CASE("unknown suites are rejected") {
    SuiteConfig cfg;
    cfg.suite = "no-such-suite";
    CHECK_THROWS_AS(run_suite(cfg), std::invalid_argument);
  }

  TEST_CASE("each mutant is caught by its designated suite") {
    for (auto m : {ifc::Mutation::DropNsu, ifc::Mutation::DropWriteExplicit, ifc::Mutation::DropTaintGuard,
                   ifc::Mutation::DropNewPc, ifc::Mutation::DropWritePc, ifc::Mutation::DropWriteFsNsu}) {
      SuiteConfig cfg;
      cfg.suite = designated_suite(m);
      cfg.mutation = m;
      cfg.trials = 2000;
      auto r = run_suite(cfg);
      CHECK_MESSAGE(r.fail == 1, cfg.suite);
      REQUIRE(r.witness);
      CHECK(!r.witness->program.empty());
      CHECK(r.witness->outcomes.size() >= 1);
    }
  }

  TEST_CASE("the seeded branch-on-secret witness trips the unguarded monitor first") {
    SuiteConfig cfg;
    cfg.suite = "tini-fg";
    cfg.mutation = ifc::Mutation::DropNsu;
    cfg.trials = 10;
    auto r = run_suite(cfg);
    REQUIRE(r.witness);
    CHECK(r.witness->seeded);
    CHECK(r.witness->trial == 0);
    CHECK(r.trials_run == 1);
  }

  TEST_CASE("mutants found without seeds still fail") {
    SuiteConfig cfg;
    cfg.suite = "tini-fg";
    cfg.mutation = ifc::Mutation::DropWriteExplicit;
    cfg.seeded = false;
    cfg.trials = 2000;
    auto r = run_suite(cfg);
    CHECK(r.fail == 1);
    REQUIRE(r.witness);
    CHECK(!r.witness->seeded);
    CHECK(r.witness->minimized.size() <= r.witness->program.size());
  }

  TEST_CASE("reports do not depend on the thread count") {
    for (const char* name : {"tini-cg", "preservation-cg2fg", "find-bijection"}) {
      SuiteConfig cfg;
      cfg.suite = name;
      cfg.trials = 200;
      cfg.seed = 42;
      cfg.threads = 1;
      auto a = without_duration(run_suite(cfg));
      cfg.threads = 8;
      auto b = without_duration(run_suite(cfg));
      CHECK_MESSAGE(a == b, name);
    }
    SuiteConfig cfg;
    cfg.suite = "tini-cg";
    cfg.mutation = ifc::Mutation::DropWriteFsNsu;
    cfg.seeded = false;
    cfg.trials = 2000;
    cfg.threads = 1;
    auto a = without_duration(run_suite(cfg));
    cfg.threads = 8;
    CHECK(a == without_duration(run_suite(cfg)));
  }
}
