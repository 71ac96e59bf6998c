#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace ifc {

// Deliberately broken monitor variants used to show the property suites have teeth.
enum class Mutation : std::uint8_t {
  None,
  DropNsu,            // fg: Write-FS without ℓ ⊑ ℓ1
  DropWriteExplicit,  // fg: Write without ℓ2 ⊑ ℓ
  DropTaintGuard,     // fg: Taint without its guard
  DropNewPc,          // cg: New without pc ⊑ ℓ
  DropWritePc,        // cg: Write without pc ⊑ ℓ1
  DropWriteFsNsu,     // cg: Write-FS without pc ⊑ ℓ
};

std::string_view mutation_name(Mutation m);
std::optional<Mutation> parse_mutation(std::string_view name);
std::vector<Mutation> all_mutations();
bool is_fg_mutation(Mutation m);

struct SecurityAbort {
  std::string rule;
  std::string check;
  friend bool operator==(const SecurityAbort&, const SecurityAbort&) = default;
};

struct Timeout {
  friend bool operator==(const Timeout&, const Timeout&) = default;
};

struct Stuck {
  std::string reason;
  friend bool operator==(const Stuck&, const Stuck&) = default;
};

namespace detail {
// Thrown inside the interpreters, converted to outcomes at the boundary.
struct AbortSignal {
  SecurityAbort abort;
};
struct TimeoutSignal {};
struct StuckSignal {
  std::string reason;
};

class Fuel {
 public:
  explicit Fuel(std::uint64_t budget) : left_(budget), budget_(budget) {}
  void tick() {
    if (left_ == 0) throw TimeoutSignal{};
    --left_;
  }
  std::uint64_t used() const { return budget_ - left_; }

 private:
  std::uint64_t left_;
  std::uint64_t budget_;
};
}  // namespace detail

}  // namespace ifc
