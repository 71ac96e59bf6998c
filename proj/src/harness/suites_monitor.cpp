#include <algorithm>

#include "ifc/security/cg_equiv.hpp"
#include "ifc/security/fg_equiv.hpp"
#include "ifc/surface/syntax.hpp"
#include "ifc/surface/values.hpp"
#include "internal.hpp"

namespace ifc::harness::detail {

namespace {

constexpr double kTiniSecretPc = 0.15;

template <class Outcome>
Verdict vacuous_kind(const Outcome& a, const Outcome& b) {
  return a.timed_out() || b.timed_out() ? Verdict::VacuousTimeout : Verdict::VacuousAbort;
}

TrialOutcome failure(std::string reason) {
  TrialOutcome o;
  o.verdict = Verdict::Fail;
  o.witness = Witness{};
  o.witness->reason = std::move(reason);
  return o;
}

template <class Case, class Outcome>
void fill(TrialOutcome& o, const SuiteConfig& cfg, const Case& c, const std::vector<Outcome>& runs) {
  if (o.verdict != Verdict::Fail) return;
  const Lattice& lat = cfg.gen.lattice;
  Witness& w = *o.witness;
  w.pc = lat.name(c.pc);
  if constexpr (std::is_same_v<Case, FgCase>) w.program = surface::print_fg(c.e, lat, c.ctx.size());
  else w.program = surface::print_cg(c.e, lat, c.ctx.size());
  w.minimized = w.program;
  w.inputs.clear();
  for (const auto& s : c.sides) w.inputs.push_back(describe(s, lat));
  if (c.sides.size() > 1) w.inputs.push_back("beta " + surface::show(c.beta));
  w.outcomes.clear();
  for (const auto& r : runs) w.outcomes.push_back(describe(r, lat));
}

template <class Outcome>
std::optional<TrialOutcome> stuck(const std::vector<Outcome>& runs) {
  for (const auto& r : runs)
    if (r.stuck()) return failure("well-typed program got stuck: " + r.stuck()->reason);
  return std::nullopt;
}

std::vector<fg::Outcome> run_all(const SuiteConfig& cfg, const FgCase& c) {
  std::vector<fg::Outcome> out;
  for (const auto& s : c.sides)
    out.push_back(fg::eval(cfg.gen.lattice, s.store, s.heap, c.e, s.env, c.pc, cfg.fuel, cfg.mutation));
  return out;
}

std::vector<cg::Outcome> run_all(const SuiteConfig& cfg, const CgCase& c) {
  std::vector<cg::Outcome> out;
  for (const auto& s : c.sides)
    out.push_back(cg::eval_force(cfg.gen.lattice, s.store, s.heap, c.pc, c.e, s.env, cfg.fuel, cfg.mutation));
  return out;
}

template <class Case, class Find>
TrialOutcome tini(const SuiteConfig& cfg, const Case& c, Find find) {
  auto runs = run_all(cfg, c);
  TrialOutcome o;
  if (auto s = stuck(runs)) {
    o = *s;
  } else if (!runs[0].final() || !runs[1].final()) {
    return TrialOutcome::vacuous(vacuous_kind(runs[0], runs[1]));
  } else {
    auto b = find(observer(cfg), c.beta, *runs[0].final(), *runs[1].final());
    if (b && b->extends(c.beta)) return TrialOutcome::pass();
    o = failure("final configurations are not L-equivalent under any extension of the input bijection");
  }
  fill(o, cfg, c, runs);
  return o;
}

template <class Case, class Low>
TrialOutcome confinement(const SuiteConfig& cfg, const Case& c, Low low) {
  auto runs = run_all(cfg, c);
  TrialOutcome o;
  if (auto s = stuck(runs)) {
    o = *s;
    fill(o, cfg, c, runs);
    return o;
  }
  const Observer obs = observer(cfg);
  bool any = false;
  for (std::size_t i = 0; i < runs.size(); ++i) {
    const auto* f = runs[i].final();
    if (!f) continue;
    any = true;
    const auto& in = c.sides[i];
    auto id = Bijection::identity(static_cast<Bijection::Addr>(in.heap.size()));
    if (!low(obs, id, in.store, f->store) || !low(obs, id, in.heap, f->heap)) {
      o = failure("run " + std::to_string(i + 1) + " changed the public part of the store or heap under a secret pc");
      fill(o, cfg, c, runs);
      return o;
    }
  }
  if (!any) return TrialOutcome::vacuous(vacuous_kind(runs[0], runs.back()));
  // Square diagram: both edges confined, so the input bijection still relates the outputs.
  if (runs.size() == 2 && runs[0].final() && runs[1].final()) {
    const auto& a = *runs[0].final();
    const auto& b = *runs[1].final();
    if (!low(obs, c.beta, a.store, b.store) || !low(obs, c.beta, a.heap, b.heap)) {
      o = failure("outputs of confined runs are not related by the input bijection");
      fill(o, cfg, c, runs);
      return o;
    }
  }
  return TrialOutcome::pass();
}

template <class Case>
TrialOutcome single_run(const SuiteConfig& cfg, const Case& c, const std::string& name) {
  auto runs = run_all(cfg, c);
  TrialOutcome o;
  if (auto s = stuck(runs)) {
    o = *s;
  } else if (const auto* f = runs[0].final()) {
    const Lattice& lat = cfg.gen.lattice;
    bool ok;
    std::string what;
    if (name == "pc-raise") {
      if constexpr (std::is_same_v<Case, FgCase>) ok = lat.leq(c.pc, f->value.label);
      else ok = lat.leq(c.pc, f->pc);
      what = "result is less sensitive than the initial pc";
    } else {
      if constexpr (std::is_same_v<Case, FgCase>) ok = fg::valid_outputs(*f);
      else ok = cg::valid_outputs(*f);
      what = "final configuration holds a dangling flow-sensitive reference";
    }
    if (ok) return TrialOutcome::pass();
    o = failure(what);
  } else {
    return TrialOutcome::vacuous(vacuous_kind(runs[0], runs[0]));
  }
  fill(o, cfg, c, runs);
  return o;
}

}  // namespace

namespace {

// Two-sided cases redraw inputs a few times so the secret positions actually differ.
constexpr int kDifferRetries = 8;
constexpr double kLabeledInput = 0.7;
constexpr double kPairedInput = 0.6;

template <class In>
bool same_sides(const In& in) {
  const auto& a = in.sides[0];
  const auto& b = in.sides[1];
  return a.env.to_vector() == b.env.to_vector() && a.store == b.store && a.heap == b.heap;
}

}  // namespace

FgCase gen_fg_case(Rng& rng, const SuiteConfig& cfg, int sides, std::optional<bool> secret_pc) {
  FgGen g(rng, cfg.gen);
  std::vector<Type> types;
  for (int n = rng.range(sides > 1 ? 1 : 0, std::max(1, cfg.gen.input_count_max)); n > 0; --n)
    types.push_back(g.input_type());
  FgCase c;
  c.ctx = Context::from_innermost_first(types);
  c.type = g.type(cfg.gen.type_depth);
  c.e = g.program(c.ctx, c.type, cfg.gen.size);
  auto in = gen_fg_inputs(rng, cfg.gen, types, sides);
  for (int retry = 0; sides > 1 && retry < kDifferRetries && same_sides(in); ++retry)
    in = gen_fg_inputs(rng, cfg.gen, types, sides);
  c.sides = std::move(in.sides);
  if (!in.links.empty()) c.beta = in.links[0];
  c.pc = secret_pc ? pick_label(rng, cfg.gen, *secret_pc) : pick_label(rng, cfg.gen);
  return c;
}

CgCase gen_cg_case(Rng& rng, const SuiteConfig& cfg, int sides, std::optional<bool> secret_pc) {
  CgGen g(rng, cfg.gen);
  std::vector<Type> types;
  for (int n = rng.range(sides > 1 ? 1 : 0, std::max(1, cfg.gen.input_count_max)); n > 0; --n)
    types.push_back(g.input_type());
  // Secrets reach a coarse-grained program through labeled values, so two-sided cases usually get one.
  Type secret = Type::labeled(Type::boolean());
  if (sides > 1 && std::find(types.begin(), types.end(), secret) == types.end() && rng.chance(kLabeledInput))
    types[rng.below(types.size())] = secret;
  // A reference input often comes with a labeled value that fits it.
  for (std::size_t i = 0, n = types.size(); i < n; ++i)
    if (types[i].is(Type::Kind::Ref) && rng.chance(kPairedInput)) types.push_back(Type::labeled(types[i].arg(0)));
  CgCase c;
  c.ctx = Context::from_innermost_first(types);
  c.type = g.type(cfg.gen.type_depth);
  c.e = g.program(c.ctx, c.type, cfg.gen.size);
  auto in = gen_cg_inputs(rng, cfg.gen, types, sides);
  for (int retry = 0; sides > 1 && retry < kDifferRetries && same_sides(in); ++retry)
    in = gen_cg_inputs(rng, cfg.gen, types, sides);
  c.sides = std::move(in.sides);
  if (!in.links.empty()) c.beta = in.links[0];
  c.pc = secret_pc ? pick_label(rng, cfg.gen, *secret_pc) : pick_label(rng, cfg.gen);
  return c;
}

TrialOutcome check_tini_fg(const SuiteConfig& cfg, const FgCase& c) {
  return tini(cfg, c, [](const Observer& o, const Bijection& b, const fg::Final& x, const fg::Final& y) {
    return fg::find_bijection(o, b, x, y);
  });
}

TrialOutcome check_tini_cg(const SuiteConfig& cfg, const CgCase& c) {
  return tini(cfg, c, [](const Observer& o, const Bijection& b, const cg::Final& x, const cg::Final& y) {
    return cg::find_bijection(o, b, x, y);
  });
}

TrialOutcome check_confinement_fg(const SuiteConfig& cfg, const FgCase& c) {
  return confinement(cfg, c, [](const Observer& o, const Bijection& b, const auto& x, const auto& y) {
    return fg::low_equiv(o, b, x, y);
  });
}

TrialOutcome check_confinement_cg(const SuiteConfig& cfg, const CgCase& c) {
  return confinement(cfg, c, [](const Observer& o, const Bijection& b, const auto& x, const auto& y) {
    return cg::low_equiv(o, b, x, y);
  });
}

TrialOutcome with_minimized(const SuiteConfig& cfg, const FgCase& c,
                            TrialOutcome (*check)(const SuiteConfig&, const FgCase&)) {
  auto o = check(cfg, c);
  if (o.verdict != Verdict::Fail || !cfg.minimize || !o.witness) return o;
  auto small = minimize_fg(cfg.gen, c.ctx, c.type, c.e, [&](const fg::Expr& e) {
    FgCase d = c;
    d.e = e;
    return check(cfg, d).verdict == Verdict::Fail;
  });
  o.witness->minimized = surface::print_fg(small, cfg.gen.lattice, c.ctx.size());
  return o;
}

TrialOutcome with_minimized(const SuiteConfig& cfg, const CgCase& c,
                            TrialOutcome (*check)(const SuiteConfig&, const CgCase&)) {
  auto o = check(cfg, c);
  if (o.verdict != Verdict::Fail || !cfg.minimize || !o.witness) return o;
  auto small = minimize_cg(cfg.gen, c.ctx, c.type, c.e, [&](const cg::Expr& e) {
    CgCase d = c;
    d.e = e;
    return check(cfg, d).verdict == Verdict::Fail;
  });
  o.witness->minimized = surface::print_cg(small, cfg.gen.lattice, c.ctx.size());
  return o;
}

TrialFn monitor_suite(const SuiteConfig& cfg, const std::string& name) {
  if (name.rfind("confinement", 0) == 0 && cfg.gen.secret_labels().empty())
    throw std::invalid_argument(name + " needs a label that does not flow to the attacker");
  if (name == "tini-fg")
    return [&cfg](Rng& rng, std::uint64_t) {
      auto c = gen_fg_case(rng, cfg, 2, rng.chance(kTiniSecretPc));
      return with_minimized(cfg, c, check_tini_fg);
    };
  if (name == "tini-cg")
    return [&cfg](Rng& rng, std::uint64_t) {
      auto c = gen_cg_case(rng, cfg, 2, rng.chance(kTiniSecretPc));
      return with_minimized(cfg, c, check_tini_cg);
    };
  if (name == "confinement-fg")
    return [&cfg](Rng& rng, std::uint64_t) {
      auto c = gen_fg_case(rng, cfg, 2, true);
      return with_minimized(cfg, c, check_confinement_fg);
    };
  if (name == "confinement-cg")
    return [&cfg](Rng& rng, std::uint64_t) {
      auto c = gen_cg_case(rng, cfg, 2, true);
      return with_minimized(cfg, c, check_confinement_cg);
    };
  if (name == "pc-raise-fg" || name == "valid-fg") {
    std::string prop = name.substr(0, name.size() - 3);
    return [&cfg, prop](Rng& rng, std::uint64_t) {
      return single_run(cfg, gen_fg_case(rng, cfg, 1, std::nullopt), prop);
    };
  }
  if (name == "pc-raise-cg" || name == "valid-cg") {
    std::string prop = name.substr(0, name.size() - 3);
    return [&cfg, prop](Rng& rng, std::uint64_t) {
      return single_run(cfg, gen_cg_case(rng, cfg, 1, std::nullopt), prop);
    };
  }
  throw std::invalid_argument("not a monitor suite: " + name);
}

}  // namespace ifc::harness::detail
