#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ifc/harness/gen.hpp"
#include "ifc/monitor.hpp"
#include "json.hpp"

namespace ifc::harness {

enum class Verdict { Pass, VacuousTimeout, VacuousAbort, InconclusiveFuel, Fail };
const char* verdict_name(Verdict v);

struct SuiteConfig {
  std::string suite;
  std::uint64_t seed = 7;
  int trials = 1000;
  GenConfig gen;                 // size, lattice, attacker and distribution weights
  std::uint64_t fuel = 100'000;  // source-side budget per run
  Mutation mutation = Mutation::None;
  bool seeded = true;            // run the seeded corpus for the mutant's family before random trials
  bool minimize = true;
  unsigned threads = 0;          // 0 = hardware concurrency
};

// Everything needed to replay a failing trial by hand.
struct Witness {
  std::uint64_t trial = 0;
  std::uint64_t seed = 0;
  bool seeded = false;
  std::string reason;
  std::string pc;
  std::string program;
  std::string minimized;
  std::vector<std::string> inputs;    // one entry per side
  std::vector<std::string> outcomes;  // one entry per run
};

struct SuiteReport {
  std::string suite;
  std::string calculus;
  std::string mutation;
  std::uint64_t seed = 0;
  int trials_requested = 0;
  int trials_run = 0;
  int seeded_run = 0;
  int pass = 0, vacuous_timeout = 0, vacuous_abort = 0, inconclusive_fuel = 0, fail = 0;
  std::vector<std::uint64_t> failing_seeds;
  std::optional<Witness> witness;
  nlohmann::ordered_json config;
  double duration = 0;

  double vacuous_fraction() const;
  bool ok() const { return fail == 0; }
  nlohmann::ordered_json to_json() const;
};

const std::vector<std::string>& suite_names();
bool is_suite(const std::string& name);
// Suite expected to catch the mutant.
std::string designated_suite(Mutation m);

// Throws std::invalid_argument for an unknown suite.
SuiteReport run_suite(const SuiteConfig& cfg);

}  // namespace ifc::harness
