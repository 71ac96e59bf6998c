#pragma once

#include <cstdint>
#include <random>
#include <stdexcept>
#include <vector>

namespace ifc::harness {

// mt19937_64 output is fixed by the standard; bounded draws are done here so streams are portable.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  std::uint64_t next() { return eng_(); }

  std::size_t below(std::size_t n) {
    if (n == 0) throw std::invalid_argument("Rng::below(0)");
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t x;
    do x = eng_();
    while (x >= limit);
    return static_cast<std::size_t>(x % n);
  }

  int range(int lo, int hi) { return lo + static_cast<int>(below(static_cast<std::size_t>(hi - lo + 1))); }

  bool chance(double p) { return static_cast<double>(eng_() >> 11) * 0x1.0p-53 < p; }

  template <class T>
  const T& pick(const std::vector<T>& xs) {
    return xs.at(below(xs.size()));
  }

  // Index drawn proportionally to integer weights.
  std::size_t weighted(const std::vector<int>& weights) {
    int total = 0;
    for (int w : weights) total += w;
    int x = static_cast<int>(below(static_cast<std::size_t>(total)));
    for (std::size_t i = 0; i < weights.size(); ++i) {
      if (x < weights[i]) return i;
      x -= weights[i];
    }
    return weights.size() - 1;
  }

 private:
  std::mt19937_64 eng_;
};

// splitmix64 finalizer over (suite seed, trial index).
inline std::uint64_t trial_seed(std::uint64_t suite_seed, std::uint64_t trial) {
  std::uint64_t z = suite_seed + 0x9e3779b97f4a7c15ULL * (trial + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace ifc::harness
