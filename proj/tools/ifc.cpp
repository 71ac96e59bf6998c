#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "ifc/harness/suite.hpp"
#include "ifc/security/cg_equiv.hpp"
#include "ifc/security/fg_equiv.hpp"
#include "ifc/surface/program.hpp"

using namespace ifc;
using surface::Json;

namespace {

enum Exit { kOk = 0, kFail = 1, kUsage = 2, kAbort = 3 };

// Thrown for bad input; main prints it and exits with kUsage.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Common {
  std::optional<std::string> lattice, attacker, pc;
  std::uint64_t fuel = 1'000'000;
  std::optional<std::string> mutant;
  bool json = false;
};

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Mutation mutation_of(const std::optional<std::string>& name) {
  if (!name) return Mutation::None;
  auto m = parse_mutation(*name);
  if (!m) throw UsageError("unknown mutant '" + *name + "'");
  return *m;
}

surface::SourceProgram load_program(const std::string& path, const Common& c) {
  surface::ProgramOptions opts;
  opts.calculus = surface::calculus_from_path(path);
  opts.lattice = c.lattice;
  opts.pc = c.pc;
  auto p = surface::parse_program(slurp(path), opts);
  surface::check_program(p);
  return p;
}

Label attacker_of(const Lattice& lat, const Common& c) {
  if (c.attacker) return lat.at(*c.attacker);
  if (auto l = lat.find("L")) return *l;
  if (auto b = lat.bottom()) return *b;
  throw UsageError("--attacker is required for this lattice");
}

int cmd_run(const std::string& path, const Common& c) {
  auto p = load_program(path, c);
  auto r = surface::run_program(p, {c.fuel, mutation_of(c.mutant)});
  if (c.json)
    std::cout << r.to_json(p.lattice).dump(2) << "\n";
  else
    std::cout << r.to_text(p.lattice);
  return r.aborted() ? kAbort : kOk;
}

int cmd_translate(const std::string& path, const std::optional<std::string>& dir, const Common& c) {
  auto p = load_program(path, c);
  std::string expect = p.calculus == surface::Calculus::Fg ? "fg2cg" : "cg2fg";
  if (dir && *dir != expect) throw UsageError("--dir " + *dir + " does not match a " +
                                              surface::calculus_name(p.calculus) + " program");
  auto t = surface::translate_program(p);
  surface::check_program(t);
  std::string text = surface::print_program(t);
  if (c.json)
    std::cout << Json{{"direction", expect}, {"program", text}}.dump(2) << "\n";
  else
    std::cout << text;
  return kOk;
}

// A final configuration loaded from a RunResult file or by running a program.
struct Side {
  surface::Calculus calculus;
  std::optional<fg::Final> fg;
  std::optional<cg::Final> cg;
};

Side load_side(const std::string& path, const Common& c, std::optional<Lattice>& lat) {
  Side s;
  if (path.size() > 5 && path.substr(path.size() - 5) == ".json") {
    Json j;
    try {
      j = Json::parse(slurp(path));
    } catch (const Json::parse_error& e) {
      throw UsageError(path + ": " + e.what());
    }
    if (!lat) lat = Lattice::load(c.lattice.value_or(j.value("lattice", std::string("two-point"))));
    if (j.value("outcome", std::string()) != "final") throw UsageError(path + ": run did not finish normally");
    std::string calc = j.at("calculus").get<std::string>();
    s.calculus = calc == "cg" ? surface::Calculus::Cg : surface::Calculus::Fg;
    if (s.calculus == surface::Calculus::Fg)
      s.fg = surface::fg_final_from_json(j.at("final"), *lat);
    else
      s.cg = surface::cg_final_from_json(j.at("final"), *lat);
    return s;
  }
  auto p = load_program(path, c);
  if (!lat) lat = p.lattice;
  auto r = surface::run_program(p, {c.fuel, mutation_of(c.mutant)});
  s.calculus = p.calculus;
  if (const auto* o = std::get_if<fg::Outcome>(&r.outcome)) {
    if (!o->final()) throw UsageError(path + ": run did not finish normally");
    s.fg = *o->final();
  } else {
    const auto& co = std::get<cg::Outcome>(r.outcome);
    if (!co.final()) throw UsageError(path + ": run did not finish normally");
    s.cg = *co.final();
  }
  return s;
}

Bijection parse_beta(const std::string& text) {
  try {
    Json j = Json::parse(text);
    std::vector<std::pair<Bijection::Addr, Bijection::Addr>> pairs;
    for (const auto& p : j) pairs.emplace_back(p.at(0).get<Bijection::Addr>(), p.at(1).get<Bijection::Addr>());
    return Bijection::from_pairs(pairs);
  } catch (const std::exception& e) {
    throw UsageError(std::string("bad --beta: ") + e.what());
  }
}

int cmd_check(const std::string& a, const std::string& b, const std::optional<std::string>& beta, const Common& c) {
  std::optional<Lattice> lat;
  Side x = load_side(a, c, lat);
  Side y = load_side(b, c, lat);
  if (x.calculus != y.calculus) throw UsageError("configurations come from different calculi");
  Observer o{*lat, attacker_of(*lat, c)};
  Bijection base = beta ? parse_beta(*beta) : Bijection{};
  std::optional<Bijection> found = x.fg ? fg::find_bijection(o, base, *x.fg, *y.fg)
                                        : cg::find_bijection(o, base, *x.cg, *y.cg);
  if (c.json) {
    Json j{{"equivalent", found.has_value()}, {"attacker", lat->name(o.attacker)}};
    j["bijection"] = found ? surface::to_json(*found) : Json(nullptr);
    std::cout << j.dump(2) << "\n";
  } else if (found) {
    std::cout << "equivalent under " << surface::show(*found) << "\n";
  } else {
    std::cout << "not equivalent\n";
  }
  return found ? kOk : kFail;
}

struct PropArgs {
  std::optional<std::string> suite;
  std::uint64_t seed = 7;
  int trials = 1000;
  std::optional<int> size;
  std::optional<std::uint64_t> fuel;
  unsigned threads = 0;
  bool no_seeded = false, no_minimize = false;
};

int cmd_prop(const PropArgs& a, const Common& c) {
  harness::SuiteConfig cfg;
  cfg.mutation = mutation_of(c.mutant);
  if (a.suite)
    cfg.suite = *a.suite;
  else if (cfg.mutation != Mutation::None)
    cfg.suite = harness::designated_suite(cfg.mutation);
  else
    throw UsageError("--suite is required without --mutant");
  if (!harness::is_suite(cfg.suite)) throw UsageError("unknown suite '" + cfg.suite + "'");
  if (a.trials < 0) throw UsageError("--trials must be non-negative");
  cfg.seed = a.seed;
  cfg.trials = a.trials;
  cfg.threads = a.threads;
  cfg.seeded = !a.no_seeded;
  cfg.minimize = !a.no_minimize;
  if (a.fuel) cfg.fuel = *a.fuel;
  if (c.lattice) cfg.gen.lattice = Lattice::load(*c.lattice);
  cfg.gen.attacker = attacker_of(cfg.gen.lattice, c);
  if (a.size) cfg.gen.size = *a.size;
  auto r = harness::run_suite(cfg);
  std::cout << r.to_json().dump(2) << "\n";
  if (!c.json)
    std::cerr << r.suite << ": " << (r.ok() ? "PASS" : "FAIL") << " (" << r.pass << " pass, " << r.fail
              << " fail, vacuous " << r.vacuous_fraction() << ")\n";
  return r.ok() ? kOk : kFail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Workbench for fine- and coarse-grained dynamic information-flow control"};
  app.require_subcommand(1);
  Common common;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--lattice", common.lattice, "two-point, powerset:k, inline JSON or a JSON file");
    sub->add_option("--attacker", common.attacker, "observer level (default L or bottom)");
    sub->add_option("--pc", common.pc, "initial program counter label");
    sub->add_option("--fuel", common.fuel, "evaluation step budget");
    sub->add_option("--mutant", common.mutant, "run a deliberately broken monitor variant");
    sub->add_flag("--json", common.json, "machine-readable output");
  };

  std::string file, file2;
  std::optional<std::string> dir, beta;
  PropArgs prop;

  auto* run = app.add_subcommand("run", "evaluate a program");
  run->add_option("file", file, ".fg or .cg program")->required();
  add_common(run);

  auto* tr = app.add_subcommand("translate", "print the translated program");
  tr->add_option("file", file)->required();
  tr->add_option("--dir", dir)->check(CLI::IsMember({"fg2cg", "cg2fg"}));
  add_common(tr);

  auto* chk = app.add_subcommand("check-leq", "search for a bijection relating two final configurations");
  chk->add_option("first", file, "RunResult JSON or program")->required();
  chk->add_option("second", file2, "RunResult JSON or program")->required();
  chk->add_option("--beta", beta, "base bijection as JSON pairs, e.g. [[0,0]]");
  add_common(chk);

  auto* pr = app.add_subcommand("prop", "run a property suite");
  pr->add_option("--suite", prop.suite);
  pr->add_option("--seed", prop.seed);
  pr->add_option("--trials", prop.trials);
  pr->add_option("--size", prop.size, "program size bound");
  pr->add_option("--threads", prop.threads, "worker threads, 0 = all cores");
  pr->add_flag("--no-seeded", prop.no_seeded, "skip the seeded witnesses");
  pr->add_flag("--no-minimize", prop.no_minimize, "report witnesses as generated");
  pr->add_option("--lattice", common.lattice);
  pr->add_option("--attacker", common.attacker);
  pr->add_option("--fuel", prop.fuel, "per-run step budget");
  pr->add_option("--mutant", common.mutant);
  pr->add_flag("--json", common.json, "only print the JSON report");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*run) return cmd_run(file, common);
    if (*tr) return cmd_translate(file, dir, common);
    if (*chk) return cmd_check(file, file2, beta, common);
    return cmd_prop(prop, common);
  } catch (const surface::ParseError& e) {
    std::cerr << "parse error at " << e.line() << ":" << e.col() << ": expected " << e.expected() << "\n";
  } catch (const TypeError& e) {
    std::cerr << "type error: " << e.what() << "\n";
  } catch (const UsageError& e) {
    std::cerr << e.what() << "\n";
  } catch (const LatticeError& e) {
    std::cerr << "lattice error: " << e.what() << "\n";
  } catch (const surface::InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
  } catch (const std::invalid_argument& e) {
    std::cerr << e.what() << "\n";
  }
  return kUsage;
}
