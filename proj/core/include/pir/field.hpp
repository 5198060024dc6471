#ifndef PIR_FIELD_HPP
#define PIR_FIELD_HPP

#include <cstdint>

#include "pir/rng.hpp"

namespace pir {

/* Arithmetic context for the prime field GF(q). Elements are residues in
   [0, q) carried as plain uint32_t; the context supplies the operations.
   Supports any prime q up to 2^31, with 64-bit intermediate products. */
class PrimeField {
 public:
  // Rejects q that is not prime or exceeds 2^31.
  explicit PrimeField(std::uint32_t q);

  std::uint32_t q() const { return q_; }

  std::uint32_t add(std::uint32_t a, std::uint32_t b) const {
    std::uint64_t s = std::uint64_t(a) + b;
    return s >= q_ ? static_cast<std::uint32_t>(s - q_) : static_cast<std::uint32_t>(s);
  }
  std::uint32_t sub(std::uint32_t a, std::uint32_t b) const {
    return a >= b ? a - b : static_cast<std::uint32_t>(a + std::uint64_t(q_) - b);
  }
  std::uint32_t neg(std::uint32_t a) const { return a == 0 ? 0 : q_ - a; }
  std::uint32_t mul(std::uint32_t a, std::uint32_t b) const {
    return static_cast<std::uint32_t>((std::uint64_t(a) * b) % q_);
  }
  std::uint32_t pow(std::uint32_t base, std::uint64_t exp) const;
  // Multiplicative inverse; a must be nonzero.
  std::uint32_t inv(std::uint32_t a) const;
  // a / b; b must be nonzero.
  std::uint32_t div(std::uint32_t a, std::uint32_t b) const;

  bool contains(std::uint32_t a) const { return a < q_; }
  std::uint32_t uniform(Rng& rng) const { return rng.below(q_); }

  bool operator==(const PrimeField& o) const { return q_ == o.q_; }
  bool operator!=(const PrimeField& o) const { return q_ != o.q_; }

  static bool is_prime(std::uint32_t n);

 private:
  std::uint32_t q_;
};

}  // namespace pir

#endif  // PIR_FIELD_HPP
