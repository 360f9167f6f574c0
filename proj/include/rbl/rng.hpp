#pragma once

#include <cstdint>
#include <random>

namespace rbl {

// mt19937_64's output sequence is fixed by the standard, so every stream below
// is reproducible across compilers. The std:: distributions are not, and are
// therefore avoided.
using Rng = std::mt19937_64;

// Uniform double on [0, 1) built from the top 53 bits of one draw.
inline double uniform01(Rng& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// SplitMix64 finalizer (Steele, Lea, Flood 2014).
constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

// Seed of run `run_index` for policy `policy_index`:
//   h = splitmix64(master); h = splitmix64(h ^ policy); h = splitmix64(h ^ run)
// Stateless, so a run's stream does not depend on execution order.
constexpr std::uint64_t derive_run_seed(std::uint64_t master_seed,
                                        std::uint64_t policy_index,
                                        std::uint64_t run_index) noexcept {
  std::uint64_t h = splitmix64(master_seed);
  h = splitmix64(h ^ policy_index);
  return splitmix64(h ^ run_index);
}

}  // namespace rbl
