#pragma once

#include <functional>

#include "ifc/cg/eval.hpp"
#include "ifc/fg/eval.hpp"
#include "ifc/harness/inputs.hpp"
#include "ifc/harness/suite.hpp"
#include "ifc/security/observer.hpp"

namespace ifc::harness::detail {

struct TrialOutcome {
  Verdict verdict = Verdict::Pass;
  std::optional<Witness> witness;

  static TrialOutcome pass() { return {}; }
  static TrialOutcome vacuous(Verdict v) { return {v, std::nullopt}; }
};

using TrialFn = std::function<TrialOutcome(Rng& rng, std::uint64_t index)>;
using SeededFn = std::function<TrialOutcome()>;

SuiteReport run_trials(const SuiteConfig& cfg, const std::string& calculus, const std::vector<SeededFn>& seeded,
                       const TrialFn& fn);

Observer observer(const SuiteConfig& cfg);

// A generated program with its inputs, shared by the monitor suites and the minimizer.
template <class Expr, class World>
struct Case {
  Context ctx;
  Type type;  // FG: τ, CG: the τ of LIO τ
  Expr e;
  std::vector<World> sides;
  Bijection beta;  // sides[0] ≈β sides[1] when there are two
  Label pc;
};
using FgCase = Case<fg::Expr, FgWorld>;
using CgCase = Case<cg::Expr, CgWorld>;

FgCase gen_fg_case(Rng& rng, const SuiteConfig& cfg, int sides, std::optional<bool> secret_pc);
CgCase gen_cg_case(Rng& rng, const SuiteConfig& cfg, int sides, std::optional<bool> secret_pc);

// Greedy: replace subterms with canonical inhabitants of their type while `fails` still holds.
fg::Expr minimize_fg(const GenConfig& gen, const Context& ctx, const Type& t, fg::Expr e,
                     const std::function<bool(const fg::Expr&)>& fails);
cg::Expr minimize_cg(const GenConfig& gen, const Context& ctx, const Type& t, cg::Expr e,
                     const std::function<bool(const cg::Expr&)>& fails);

// Text for witnesses.
std::string describe(const FgWorld& w, const Lattice& lat);
std::string describe(const CgWorld& w, const Lattice& lat);
std::string describe(const fg::Outcome& o, const Lattice& lat);
std::string describe(const cg::Outcome& o, const Lattice& lat);

// Property checks over a fixed case; `fill` completes the witness when the check fails.
TrialOutcome check_tini_fg(const SuiteConfig& cfg, const FgCase& c);
TrialOutcome check_tini_cg(const SuiteConfig& cfg, const CgCase& c);
TrialOutcome check_confinement_fg(const SuiteConfig& cfg, const FgCase& c);
TrialOutcome check_confinement_cg(const SuiteConfig& cfg, const CgCase& c);

// Runs check on the case, minimizing its program on failure.
TrialOutcome with_minimized(const SuiteConfig& cfg, const FgCase& c,
                            TrialOutcome (*check)(const SuiteConfig&, const FgCase&));
TrialOutcome with_minimized(const SuiteConfig& cfg, const CgCase& c,
                            TrialOutcome (*check)(const SuiteConfig&, const CgCase&));

std::vector<SeededFn> seeded_cases(const SuiteConfig& cfg);

// Suite families, keyed by suite name.
TrialFn monitor_suite(const SuiteConfig& cfg, const std::string& name);
TrialFn translation_suite(const SuiteConfig& cfg, const std::string& name);
TrialFn meta_suite(const SuiteConfig& cfg, const std::string& name);

}  // namespace ifc::harness::detail
