#include "ifc/monitor.hpp"

#include <array>
#include <utility>

namespace ifc {

namespace {
constexpr std::array<std::pair<Mutation, std::string_view>, 7> kNames{{
    {Mutation::None, "none"},
    {Mutation::DropNsu, "drop-nsu"},
    {Mutation::DropWriteExplicit, "drop-write-explicit"},
    {Mutation::DropTaintGuard, "drop-taint-guard"},
    {Mutation::DropNewPc, "drop-new-pc"},
    {Mutation::DropWritePc, "drop-write-pc"},
    {Mutation::DropWriteFsNsu, "drop-write-fs-nsu"},
}};
}  // namespace

std::string_view mutation_name(Mutation m) {
  for (auto [k, n] : kNames)
    if (k == m) return n;
  return "?";
}

std::optional<Mutation> parse_mutation(std::string_view name) {
  for (auto [k, n] : kNames)
    if (n == name) return k;
  return std::nullopt;
}

std::vector<Mutation> all_mutations() {
  return {Mutation::DropNsu,   Mutation::DropWriteExplicit, Mutation::DropTaintGuard,
          Mutation::DropNewPc, Mutation::DropWritePc,       Mutation::DropWriteFsNsu};
}

bool is_fg_mutation(Mutation m) {
  return m == Mutation::DropNsu || m == Mutation::DropWriteExplicit || m == Mutation::DropTaintGuard;
}

}  // namespace ifc
