#include "pir/field.hpp"

#include "pir/errors.hpp"

namespace pir {

PrimeField::PrimeField(std::uint32_t q) : q_(q) {
  if (q > (1u << 31)) throw FieldError("modulus exceeds 2^31: " + std::to_string(q));
  if (!is_prime(q)) throw FieldError("modulus is not prime: " + std::to_string(q));
}

bool PrimeField::is_prime(std::uint32_t n) {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (std::uint64_t d = 3; d * d <= n; d += 2) {
    if (n % d == 0) return false;
  }
  return true;
}

std::uint32_t PrimeField::pow(std::uint32_t base, std::uint64_t exp) const {
  std::uint64_t acc = 1;
  std::uint64_t b = base % q_;
  while (exp > 0) {
    if (exp & 1) acc = acc * b % q_;
    b = b * b % q_;
    exp >>= 1;
  }
  return static_cast<std::uint32_t>(acc);
}

std::uint32_t PrimeField::inv(std::uint32_t a) const {
  if (a == 0) throw FieldError("inverse of zero");
  return pow(a, q_ - 2);
}

std::uint32_t PrimeField::div(std::uint32_t a, std::uint32_t b) const {
  if (b == 0) throw FieldError("division by zero");
  return mul(a, inv(b));
}

}  // namespace pir
