#ifndef PIR_RNG_HPP
#define PIR_RNG_HPP

#include <cstdint>
#include <random>

namespace pir {

/* Seeded random source. The engine is std::mt19937_64 (bit-exact across
   platforms per the standard) and residue draws use plain rejection
   sampling, so a seed fully determines every generated value. */
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  // Uniform draw from [0, bound). bound >= 1.
  std::uint32_t below(std::uint32_t bound) {
    if (bound <= 1) return 0;
    const std::uint64_t b = bound;
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % b;
    std::uint64_t x = engine_();
    while (x >= limit) x = engine_();
    return static_cast<std::uint32_t>(x % b);
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace pir

#endif  // PIR_RNG_HPP
