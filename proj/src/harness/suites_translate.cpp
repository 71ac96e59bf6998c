#include "ifc/cg/typecheck.hpp"
#include "ifc/fg/typecheck.hpp"
#include "ifc/security/cross.hpp"
#include "ifc/surface/syntax.hpp"
#include "ifc/surface/values.hpp"
#include "ifc/translate/cg2fg.hpp"
#include "ifc/translate/fg2cg.hpp"
#include "internal.hpp"

namespace ifc::harness::detail {

namespace {

constexpr std::uint64_t kFuelScale = 8;
constexpr std::uint64_t kFuelSlack = 64;
constexpr std::uint64_t kRetryScale = 10;
constexpr int kPureBudget = 10;

TrialOutcome failure(const std::string& reason, std::string pc, std::string program, std::vector<std::string> inputs,
                     std::vector<std::string> outcomes) {
  TrialOutcome o;
  o.verdict = Verdict::Fail;
  o.witness = Witness{};
  o.witness->reason = reason;
  o.witness->pc = std::move(pc);
  o.witness->program = std::move(program);
  o.witness->minimized = o.witness->program;
  o.witness->inputs = std::move(inputs);
  o.witness->outcomes = std::move(outcomes);
  return o;
}

template <class Outcome>
std::optional<Verdict> source_vacuity(const Outcome& o) {
  if (o.abort()) return Verdict::VacuousAbort;
  if (o.timed_out()) return Verdict::VacuousTimeout;
  return std::nullopt;
}

// Runs the target with coupled fuel, retrying once with a larger budget.
template <class Run>
auto run_target(std::uint64_t source_used, Run run) {
  std::uint64_t fuel = kFuelScale * source_used + kFuelSlack;
  auto o = run(fuel);
  if (o.timed_out()) o = run(fuel * kRetryScale);
  return o;
}

TrialOutcome fg2cg_trial(const SuiteConfig& cfg, Rng& rng) {
  const Lattice& lat = cfg.gen.lattice;
  FgCase c = gen_fg_case(rng, cfg, 1, std::nullopt);
  const FgWorld& w = c.sides[0];
  auto src = fg::eval(lat, w.store, w.heap, c.e, w.env, c.pc, cfg.fuel);
  auto report = [&](const std::string& why, const std::vector<std::string>& outs) {
    return failure(why, lat.name(c.pc), surface::print_fg(c.e, lat, c.ctx.size()), {describe(w, lat)}, outs);
  };
  if (src.stuck()) return report("well-typed source got stuck", {describe(src, lat)});
  if (auto v = source_vacuity(src)) return TrialOutcome::vacuous(*v);
  cg::Expr target = translate::fg2cg_expr(c.e);
  auto tgt = run_target(src.fuel_used, [&](std::uint64_t fuel) {
    return cg::eval_force(lat, translate::fg2cg_store(w.store), translate::fg2cg_heap(w.heap), c.pc, target,
                          translate::fg2cg_env(w.env), fuel);
  });
  if (tgt.timed_out()) return TrialOutcome::vacuous(Verdict::InconclusiveFuel);
  std::vector<std::string> outs{describe(src, lat), describe(tgt, lat)};
  if (!tgt.final()) return report("translated program did not terminate normally", outs);
  if (!(*tgt.final() == translate::fg2cg_final(*src.final(), c.pc)))
    return report("translated final configuration differs from the translation of the source result", outs);
  return TrialOutcome::pass();
}

TrialOutcome cg2fg_trial(const SuiteConfig& cfg, Rng& rng) {
  const Lattice& lat = cfg.gen.lattice;
  CgCase c = gen_cg_case(rng, cfg, 1, std::nullopt);
  const CgWorld& w = c.sides[0];
  auto fg_env = translate::cg2fg_env(w.env, c.pc);
  auto report = [&](const std::string& why, const std::string& program, const std::vector<std::string>& outs) {
    return failure(why, lat.name(c.pc), program, {describe(w, lat)}, outs);
  };

  // Pure expressions: the translation computes the translated value, labeled with pc.
  CgGen g(rng, cfg.gen);
  Type pt = g.type(1);
  if (auto pure = CgGen::pure_inhabited(pt) ? g.pure(c.ctx, pt, kPureBudget) : std::nullopt) {
    auto v = cg::eval_pure(lat, *pure, w.env, cfg.fuel);
    if (const auto* val = v.value()) {
      auto r = fg::eval(lat, {}, {}, translate::cg2fg_expr(*pure), fg_env, c.pc, kFuelScale * v.fuel_used + kFuelSlack);
      std::string text = surface::print_cg(*pure, lat, c.ctx.size());
      if (!r.final()) return report("translated pure expression did not terminate normally", text, {describe(r, lat)});
      if (!(r.final()->value == translate::cg2fg_value(*val, c.pc)))
        return report("translated pure expression computed a different value", text,
                      {surface::show(*val, lat), describe(r, lat)});
    }
  }

  auto src = cg::eval_force(lat, w.store, w.heap, c.pc, c.e, w.env, cfg.fuel);
  std::string text = surface::print_cg(c.e, lat, c.ctx.size());
  if (src.stuck()) return report("well-typed source got stuck", text, {describe(src, lat)});
  if (auto v = source_vacuity(src)) return TrialOutcome::vacuous(*v);
  fg::Expr target = fg::app(translate::cg2fg_expr(c.e), fg::unit());
  auto tgt = run_target(src.fuel_used, [&](std::uint64_t fuel) {
    return fg::eval(lat, translate::cg2fg_store(w.store), translate::cg2fg_heap(w.heap), target, fg_env, c.pc, fuel);
  });
  if (tgt.timed_out()) return TrialOutcome::vacuous(Verdict::InconclusiveFuel);
  std::vector<std::string> outs{describe(src, lat), describe(tgt, lat)};
  if (!tgt.final()) return report("translated program did not terminate normally", text, outs);
  if (!cross::config_rel(lat, *tgt.final(), *src.final()))
    return report("translated result is not related to the source result", text, outs);
  return TrialOutcome::pass();
}

TrialOutcome type_trial(const SuiteConfig& cfg, Rng& rng) {
  const Lattice& lat = cfg.gen.lattice;
  FgGen fgen(rng, cfg.gen);
  CgGen cgen(rng, cfg.gen);
  std::vector<Type> ft, ct;
  for (int n = rng.range(0, cfg.gen.input_count_max); n > 0; --n) {
    ft.push_back(fgen.input_type());
    ct.push_back(cgen.input_type());
  }
  auto fctx = Context::from_innermost_first(ft);
  auto cctx = Context::from_innermost_first(ct);
  Type t1 = fgen.type(cfg.gen.type_depth), t2 = cgen.type(cfg.gen.type_depth);
  auto e1 = fgen.program(fctx, t1, cfg.gen.size);
  auto e2 = cgen.program(cctx, t2, cfg.gen.size);
  auto bad = [&](const std::string& why, std::string program) {
    return failure(why, "", std::move(program), {}, {});
  };
  try {
    Type got = cg::typecheck(translate::fg2cg_context(fctx), translate::fg2cg_expr(e1));
    if (!(got == Type::lio(translate::fg2cg_type(t1))))
      return bad("fg2cg changed the type to " + got.to_string(), surface::print_fg(e1, lat, fctx.size()));
  } catch (const TypeError& err) {
    return bad(std::string("fg2cg output is ill-typed: ") + err.what(), surface::print_fg(e1, lat, fctx.size()));
  }
  try {
    Type got = fg::typecheck(translate::cg2fg_context(cctx), translate::cg2fg_expr(e2));
    if (!(got == translate::cg2fg_type(Type::lio(t2))))
      return bad("cg2fg changed the type to " + got.to_string(), surface::print_cg(e2, lat, cctx.size()));
  } catch (const TypeError& err) {
    return bad(std::string("cg2fg output is ill-typed: ") + err.what(), surface::print_cg(e2, lat, cctx.size()));
  }

  // Translated values inhabit the translated types.
  auto fw = gen_fg_inputs(rng, cfg.gen, ft, 1).sides[0];
  auto cw = gen_cg_inputs(rng, cfg.gen, ct, 1).sides[0];
  Label pc = pick_label(rng, cfg.gen);
  auto fs = translate::fg2cg_store(fw.store);
  auto fh = translate::fg2cg_heap(fw.heap);
  auto fvals = fw.env.to_vector();
  for (std::size_t i = 0; i < fvals.size(); ++i)
    if (!cg_value_has_type(translate::fg2cg_value(fvals[i]), translate::fg2cg_type(ft[i]), fs, fh))
      return bad("translated value " + surface::show(fvals[i], lat) + " does not have type " +
                     translate::fg2cg_type(ft[i]).to_string(), "");
  auto cs = translate::cg2fg_store(cw.store);
  auto ch = translate::cg2fg_heap(cw.heap);
  auto cvals = cw.env.to_vector();
  for (std::size_t i = 0; i < cvals.size(); ++i)
    if (!fg_value_has_type(translate::cg2fg_value(cvals[i], pc), translate::cg2fg_type(ct[i]), cs, ch))
      return bad("translated value " + surface::show(cvals[i], lat) + " does not have type " +
                     translate::cg2fg_type(ct[i]).to_string(), "");
  return TrialOutcome::pass();
}

}  // namespace

TrialFn translation_suite(const SuiteConfig& cfg, const std::string& name) {
  if (name == "preservation-fg2cg") return [&cfg](Rng& rng, std::uint64_t) { return fg2cg_trial(cfg, rng); };
  if (name == "preservation-cg2fg") return [&cfg](Rng& rng, std::uint64_t) { return cg2fg_trial(cfg, rng); };
  if (name == "type-preservation") return [&cfg](Rng& rng, std::uint64_t) { return type_trial(cfg, rng); };
  throw std::invalid_argument("not a translation suite: " + name);
}

}  // namespace ifc::harness::detail
