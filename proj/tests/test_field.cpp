#include <cstdint>

#include "doctest.h"
#include "pir/errors.hpp"
#include "pir/field.hpp"
#include "pir/rng.hpp"

using pir::FieldError;
using pir::PrimeField;

TEST_CASE("basic arithmetic mod 5") {
  PrimeField f(5);
  CHECK(f.add(3, 4) == 2);
  CHECK(f.mul(2, 3) == 1);
  CHECK(f.sub(1, 3) == 3);
  CHECK(f.neg(2) == 3);
  CHECK(f.neg(0) == 0);
}

TEST_CASE("division mod 7 against exhaustive search") {
  PrimeField f(7);
  // independent oracle: the x with 5x = 3 (mod 7)
  std::uint32_t expected = 0;
  for (std::uint32_t x = 0; x < 7; ++x) {
    if (5 * x % 7 == 3) expected = x;
  }
  CHECK(expected == 2);
  CHECK(f.div(3, 5) == expected);
}

TEST_CASE("division by zero rejected") {
  PrimeField f(5);
  CHECK_THROWS_AS(f.div(1, 0), FieldError);
  CHECK_THROWS_AS(f.inv(0), FieldError);
}

TEST_CASE("non-prime moduli rejected at construction") {
  CHECK_THROWS_AS(PrimeField(1), FieldError);
  CHECK_THROWS_AS(PrimeField(4), FieldError);
  CHECK_THROWS_AS(PrimeField(65536), FieldError);
  CHECK_NOTHROW(PrimeField(2));
  CHECK_NOTHROW(PrimeField(65537));
}

TEST_CASE("large modulus products stay exact") {
  const std::uint32_t q = 2147483647;  // 2^31 - 1
  PrimeField f(q);
  CHECK(f.mul(q - 1, q - 1) == 1);  // (-1)^2
  CHECK(f.mul(f.inv(12345), 12345) == 1);
  CHECK(f.pow(3, q - 1) == 1);
}

TEST_CASE("field axioms hold exhaustively for small q") {
  for (std::uint32_t q : {2u, 3u, 5u, 7u, 11u, 13u}) {
    PrimeField f(q);
    for (std::uint32_t a = 0; a < q; ++a) {
      if (a != 0) CHECK(f.mul(a, f.inv(a)) == 1);
      for (std::uint32_t b = 0; b < q; ++b) {
        CHECK(f.add(a, b) == f.add(b, a));
        CHECK(f.mul(a, b) == f.mul(b, a));
        CHECK(f.sub(f.add(a, b), b) == a);
        for (std::uint32_t c = 0; c < q; ++c) {
          CHECK(f.add(f.add(a, b), c) == f.add(a, f.add(b, c)));
          CHECK(f.mul(f.mul(a, b), c) == f.mul(a, f.mul(b, c)));
          CHECK(f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c)));
        }
      }
    }
  }
}

TEST_CASE("uniform draws are deterministic per seed and roughly balanced") {
  pir::Rng a(42);
  pir::Rng b(42);
  PrimeField f(65537);
  for (int i = 0; i < 100; ++i) CHECK(f.uniform(a) == f.uniform(b));

  pir::Rng c(7);
  PrimeField gf2(2);
  int ones = 0;
  for (int i = 0; i < 10000; ++i) ones += gf2.uniform(c);
  CHECK(ones > 4800);
  CHECK(ones < 5200);
}
