#include <algorithm>
#include <atomic>
#include <chrono>
#include <climits>
#include <stdexcept>
#include <thread>

#include "internal.hpp"
#include "ifc/surface/values.hpp"
#include "ifc/surface/syntax.hpp"

namespace ifc::harness {

const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Pass: return "pass";
    case Verdict::VacuousTimeout: return "vacuous-timeout";
    case Verdict::VacuousAbort: return "vacuous-abort";
    case Verdict::InconclusiveFuel: return "inconclusive-fuel";
    case Verdict::Fail: return "fail";
  }
  return "?";
}

double SuiteReport::vacuous_fraction() const {
  if (trials_run == 0) return 0;
  return static_cast<double>(vacuous_timeout + vacuous_abort + inconclusive_fuel) / trials_run;
}

nlohmann::ordered_json SuiteReport::to_json() const {
  using J = nlohmann::ordered_json;
  J j;
  j["suite"] = suite;
  j["calculus"] = calculus;
  j["mutation"] = mutation;
  j["verdict"] = ok() ? "pass" : "fail";
  j["seed"] = seed;
  j["trials_requested"] = trials_requested;
  j["trials_run"] = trials_run;
  j["seeded_run"] = seeded_run;
  j["counts"] = J{{"pass", pass},
                  {"vacuous_timeout", vacuous_timeout},
                  {"vacuous_abort", vacuous_abort},
                  {"inconclusive_fuel", inconclusive_fuel},
                  {"fail", fail}};
  j["vacuous_fraction"] = vacuous_fraction();
  j["failing_seeds"] = failing_seeds;
  if (witness) {
    const Witness& w = *witness;
    j["witness"] = J{{"trial", w.trial},     {"seed", w.seed},           {"seeded", w.seeded},
                     {"reason", w.reason},   {"pc", w.pc},               {"program", w.program},
                     {"minimized", w.minimized}, {"inputs", w.inputs}, {"outcomes", w.outcomes}};
  } else {
    j["witness"] = nullptr;
  }
  j["config"] = config;
  j["duration"] = duration;
  return j;
}

namespace {

struct Entry {
  const char* name;
  const char* calculus;
  int family;  // 0 monitor, 1 translation, 2 metatheory
};

const std::vector<Entry>& registry() {
  static const std::vector<Entry> r = {
      {"tini-fg", "fg", 0},           {"tini-cg", "cg", 0},           {"confinement-fg", "fg", 0},
      {"confinement-cg", "cg", 0},    {"pc-raise-fg", "fg", 0},       {"pc-raise-cg", "cg", 0},
      {"valid-fg", "fg", 0},          {"valid-cg", "cg", 0},          {"preservation-fg2cg", "fg2cg", 1},
      {"preservation-cg2fg", "cg2fg", 1}, {"type-preservation", "both", 1}, {"bijection-laws", "none", 2},
      {"leq-laws", "both", 2},        {"find-bijection", "both", 2},  {"ceq-laws", "both", 2},
      {"lift-recovery", "both", 2},
  };
  return r;
}

const Entry& entry(const std::string& name) {
  for (const auto& e : registry())
    if (name == e.name) return e;
  throw std::invalid_argument("unknown suite '" + name + "'");
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& e : registry()) out.push_back(e.name);
    return out;
  }();
  return names;
}

bool is_suite(const std::string& name) {
  return std::find(suite_names().begin(), suite_names().end(), name) != suite_names().end();
}

std::string designated_suite(Mutation m) {
  switch (m) {
    case Mutation::DropNsu:
    case Mutation::DropWriteExplicit:
    case Mutation::DropTaintGuard: return "tini-fg";
    case Mutation::DropNewPc:
    case Mutation::DropWriteFsNsu: return "tini-cg";
    case Mutation::DropWritePc: return "confinement-cg";
    case Mutation::None: break;
  }
  return "";
}

SuiteReport run_suite(const SuiteConfig& cfg) {
  const Entry& e = entry(cfg.suite);
  detail::TrialFn fn;
  if (e.family == 0) fn = detail::monitor_suite(cfg, cfg.suite);
  else if (e.family == 1) fn = detail::translation_suite(cfg, cfg.suite);
  else fn = detail::meta_suite(cfg, cfg.suite);
  std::vector<detail::SeededFn> seeded;
  if (cfg.seeded && cfg.mutation != Mutation::None) seeded = detail::seeded_cases(cfg);
  return detail::run_trials(cfg, e.calculus, seeded, fn);
}

namespace detail {

Observer observer(const SuiteConfig& cfg) { return Observer{cfg.gen.lattice, cfg.gen.attacker}; }

namespace {

TrialOutcome crashed(const std::string& what) {
  TrialOutcome o;
  o.verdict = Verdict::Fail;
  o.witness = Witness{};
  o.witness->reason = "exception: " + what;
  return o;
}

template <class F>
TrialOutcome guarded(F&& f) {
  try {
    return f();
  } catch (const std::exception& ex) {
    return crashed(ex.what());
  }
}

}  // namespace

SuiteReport run_trials(const SuiteConfig& cfg, const std::string& calculus, const std::vector<SeededFn>& seeded,
                       const TrialFn& fn) {
  auto start = std::chrono::steady_clock::now();
  SuiteReport r;
  r.suite = cfg.suite;
  r.calculus = calculus;
  r.mutation = std::string(mutation_name(cfg.mutation));
  r.seed = cfg.seed;
  r.trials_requested = cfg.trials;
  const Lattice& lat = cfg.gen.lattice;
  r.config = {{"lattice", lat.description()},
              {"attacker", lat.name(cfg.gen.attacker)},
              {"size", cfg.gen.size},
              {"type_depth", cfg.gen.type_depth},
              {"secret_bias", cfg.gen.secret_bias},
              {"sensitive_refs", cfg.gen.sensitive_refs},
              {"input_count_max", cfg.gen.input_count_max},
              {"fuel", cfg.fuel},
              {"seeded", cfg.seeded},
              {"minimize", cfg.minimize}};

  auto tally = [&](const TrialOutcome& o) {
    ++r.trials_run;
    switch (o.verdict) {
      case Verdict::Pass: ++r.pass; break;
      case Verdict::VacuousTimeout: ++r.vacuous_timeout; break;
      case Verdict::VacuousAbort: ++r.vacuous_abort; break;
      case Verdict::InconclusiveFuel: ++r.inconclusive_fuel; break;
      case Verdict::Fail: ++r.fail; break;
    }
  };

  for (std::size_t i = 0; i < seeded.size(); ++i) {
    auto o = guarded(seeded[i]);
    tally(o);
    ++r.seeded_run;
    if (o.verdict == Verdict::Fail) {
      r.witness = o.witness.value_or(Witness{});
      r.witness->seeded = true;
      r.witness->trial = i;
      r.duration = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
      return r;
    }
  }

  const int n = std::max(0, cfg.trials - static_cast<int>(seeded.size()));
  std::vector<std::optional<TrialOutcome>> results(static_cast<std::size_t>(n));
  std::atomic<int> next{0};
  std::atomic<int> first_fail{INT_MAX};
  auto worker = [&] {
    for (;;) {
      int i = next.fetch_add(1);
      if (i >= n || i > first_fail.load()) return;
      Rng rng(trial_seed(cfg.seed, static_cast<std::uint64_t>(i)));
      auto o = guarded([&] { return fn(rng, static_cast<std::uint64_t>(i)); });
      if (o.verdict == Verdict::Fail) {
        int cur = first_fail.load();
        while (i < cur && !first_fail.compare_exchange_weak(cur, i)) {
        }
      }
      results[static_cast<std::size_t>(i)] = std::move(o);
    }
  };
  unsigned threads = cfg.threads ? cfg.threads : std::max(1u, std::thread::hardware_concurrency());
  threads = std::min<unsigned>(threads, static_cast<unsigned>(std::max(1, n)));
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  // Only the prefix up to the first failure counts, so reports do not depend on scheduling.
  for (int i = 0; i < n; ++i) {
    auto& o = results[static_cast<std::size_t>(i)];
    if (!o) break;
    tally(*o);
    if (o->verdict == Verdict::Fail) {
      std::uint64_t s = trial_seed(cfg.seed, static_cast<std::uint64_t>(i));
      r.failing_seeds.push_back(s);
      r.witness = o->witness.value_or(Witness{});
      r.witness->trial = static_cast<std::uint64_t>(i) + seeded.size();
      r.witness->seed = s;
      break;
    }
  }
  r.duration = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

std::string describe(const FgWorld& w, const Lattice& lat) {
  auto names = surface::default_scope(w.env.size(), lat);
  auto vs = w.env.to_vector();
  std::string env;
  for (std::size_t k = 0; k < vs.size(); ++k) {
    std::size_t i = vs.size() - 1 - k;  // outermost first
    env += (k ? ", " : "") + names[k] + " = " + surface::show(vs[i], lat);
  }
  return "env [" + env + "]; store " + surface::show(w.store, lat) + "; heap " + surface::show(w.heap, lat);
}

std::string describe(const CgWorld& w, const Lattice& lat) {
  auto names = surface::default_scope(w.env.size(), lat);
  auto vs = w.env.to_vector();
  std::string env;
  for (std::size_t k = 0; k < vs.size(); ++k) {
    std::size_t i = vs.size() - 1 - k;
    env += (k ? ", " : "") + names[k] + " = " + surface::show(vs[i], lat);
  }
  return "env [" + env + "]; store " + surface::show(w.store, lat) + "; heap " + surface::show(w.heap, lat);
}

std::string describe(const fg::Outcome& o, const Lattice& lat) {
  if (const auto* c = o.final())
    return "final " + surface::show(c->value, lat) + "; store " + surface::show(c->store, lat) + "; heap " +
           surface::show(c->heap, lat);
  if (const auto* a = o.abort()) return "abort " + a->rule + " (" + a->check + ")";
  if (o.timed_out()) return "timeout";
  return "stuck " + o.stuck()->reason;
}

std::string describe(const cg::Outcome& o, const Lattice& lat) {
  if (const auto* c = o.final())
    return "final pc " + lat.name(c->pc) + ", " + surface::show(c->value, lat) + "; store " +
           surface::show(c->store, lat) + "; heap " + surface::show(c->heap, lat);
  if (const auto* a = o.abort()) return "abort " + a->rule + " (" + a->check + ")";
  if (o.timed_out()) return "timeout";
  return "stuck " + o.stuck()->reason;
}

}  // namespace detail
}  // namespace ifc::harness
