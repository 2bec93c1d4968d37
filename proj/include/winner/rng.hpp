#ifndef WINNER_RNG_HPP
#define WINNER_RNG_HPP

#include <cstdint>
#include <string>

namespace winner {

/// Counter-based uniform stream: each variate is a pure function of
/// (seed, replicate, player), so replicates can be evaluated in any order
/// or concurrently and still reproduce bit-identical results. The mixer is
/// the splitmix64 finalizer applied twice over the keyed counters.
class CounterRng {
 public:
  explicit CounterRng(std::uint64_t seed)
      : base_(mix(seed + 0x9E3779B97F4A7C15ULL)) {}

  /// Uniform in the open interval (0, 1).
  double uniform(std::uint64_t replicate, std::uint64_t player) const {
    std::uint64_t h = mix(base_ ^ (replicate + 0x9E3779B97F4A7C15ULL));
    h = mix(h ^ (player + 0xD1B54A32D192ED03ULL));
    // 52 bits, centered on the lattice: both endpoints stay strictly
    // inside (0, 1) after rounding, so -ln(u) is always finite.
    return (static_cast<double>(h >> 12) + 0.5) * 0x1.0p-52;
  }

  static std::string label() { return "splitmix64-counter/1"; }

 private:
  static std::uint64_t mix(std::uint64_t z) {
    z ^= z >> 30;
    z *= 0xBF58476D1CE4E5B9ULL;
    z ^= z >> 27;
    z *= 0x94D049BB133111EBULL;
    z ^= z >> 31;
    return z;
  }

  std::uint64_t base_;
};

}  // namespace winner

#endif  // WINNER_RNG_HPP
