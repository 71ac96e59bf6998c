#include "ifc/surface/program.hpp"
#include "internal.hpp"

namespace ifc::harness::detail {

namespace {

// Hand-written leaking programs, one family per mutant. `{S}` is the secret that differs between sides.
struct Seed {
  Mutation mutation;
  const char* suite;
  surface::Calculus calculus;
  const char* text;
  int sides;
};

const Seed kSeeds[] = {
    {Mutation::DropNsu, "tini-fg", surface::Calculus::Fg, R"(
      (pc L)
      (input p bool true L)
      (input s bool {S} H)
      (main (let r (ref-S p) (seq (if s (:= r s) unit) (! r)))))",
     2},
    {Mutation::DropWriteExplicit, "tini-fg", surface::Calculus::Fg, R"(
      (pc L)
      (input p bool true L)
      (input s bool {S} H)
      (main (let r (ref-I p) (seq (:= r s) (! r)))))",
     2},
    {Mutation::DropTaintGuard, "tini-fg", surface::Calculus::Fg, R"(
      (pc L)
      (input s bool {S} H)
      (main (taint (if s L H) (get-label))))",
     2},
    {Mutation::DropNewPc, "tini-cg", surface::Calculus::Cg, R"(
      (pc L)
      (input p (labeled unit) (tolabeled (return unit)))
      (input s (labeled bool) (tolabeled (seq (taint H) (return {S}))))
      (main (do (<- b (unlabel s)) (if b (seq (ref-I p) (return unit)) (return unit)))))",
     2},
    {Mutation::DropWriteFsNsu, "tini-cg", surface::Calculus::Cg, R"(
      (pc L)
      (input p (labeled bool) (tolabeled (return true)))
      (input s (labeled bool) (tolabeled (seq (taint H) (return {S}))))
      (main (do (<- r (ref-S p))
                (tolabeled (do (<- b (unlabel s)) (if b (:= r s) (return unit))))
                (return r))))",
     2},
    {Mutation::DropWritePc, "confinement-cg", surface::Calculus::Cg, R"(
      (pc H)
      (input q (labeled bool) (tolabeled (return true)) L)
      (input r (ref I bool) (ref-I q) L)
      (input p (labeled bool) (tolabeled (return false)) L)
      (main (:= r p)))",
     1},
};

std::string instantiate(std::string text, bool secret) {
  auto at = text.find("{S}");
  if (at != std::string::npos) text.replace(at, 3, secret ? "true" : "false");
  return text;
}

SeededFn make(const SuiteConfig& cfg, const Seed& seed) {
  return [&cfg, seed]() -> TrialOutcome {
    surface::ProgramOptions opts{seed.calculus, std::nullopt, std::nullopt};
    std::vector<surface::SourceProgram> progs;
    for (int i = 0; i < seed.sides; ++i) progs.push_back(surface::parse_program(instantiate(seed.text, i == 1), opts));
    const auto& p = progs[0];
    Type t = surface::check_program(p);
    if (seed.calculus == surface::Calculus::Fg) {
      FgCase c{p.context(), t, p.fg_main, {}, {}, p.pc};
      for (const auto& q : progs) {
        auto s = surface::build_fg_inputs(q, cfg.fuel);
        c.sides.push_back({s.store, s.heap, s.env});
      }
      return seed.suite == std::string("tini-fg") ? check_tini_fg(cfg, c) : check_confinement_fg(cfg, c);
    }
    CgCase c{p.context(), t.arg(0), p.cg_main, {}, {}, p.pc};
    for (const auto& q : progs) {
      auto s = surface::build_cg_inputs(q, cfg.fuel);
      c.sides.push_back({s.store, s.heap, s.env});
    }
    return seed.suite == std::string("tini-cg") ? check_tini_cg(cfg, c) : check_confinement_cg(cfg, c);
  };
}

}  // namespace

std::vector<SeededFn> seeded_cases(const SuiteConfig& cfg) {
  std::vector<SeededFn> out;
  // The programs name L and H and assume an attacker at L.
  const Lattice& lat = cfg.gen.lattice;
  if (!(lat == Lattice::two_point()) || lat.name(cfg.gen.attacker) != "L") return out;
  for (const auto& s : kSeeds)
    if (s.mutation == cfg.mutation && cfg.suite == s.suite) out.push_back(make(cfg, s));
  return out;
}

}  // namespace ifc::harness::detail
