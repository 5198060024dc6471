#include <cstdint>
#include <vector>

#include "doctest.h"
#include "pir/errors.hpp"
#include "pir/matrix.hpp"
#include "pir/rng.hpp"

using pir::FieldMatrix;
using pir::PrimeField;
using pir::Rng;
using pir::SolveStatus;

namespace {

bool echelon_pivot_property(const FieldMatrix& e) {
  // Each nonzero column has a pivot row where every other column is zero;
  // zero columns are rightmost.
  bool seen_zero = false;
  std::size_t last_pivot_row = 0;
  bool first = true;
  for (std::size_t a = 0; a < e.cols(); ++a) {
    std::size_t pivot_row = e.rows();
    for (std::size_t i = 0; i < e.rows(); ++i) {
      if (e(i, a) != 0) {
        pivot_row = i;
        break;
      }
    }
    if (pivot_row == e.rows()) {
      seen_zero = true;
      continue;
    }
    if (seen_zero) return false;  // nonzero column after a zero one
    if (!first && pivot_row <= last_pivot_row) return false;
    last_pivot_row = pivot_row;
    first = false;
    for (std::size_t b = 0; b < e.cols(); ++b) {
      if (b != a && e(pivot_row, b) != 0) return false;
    }
  }
  return true;
}

}  // namespace

TEST_CASE("rank on fixed cases") {
  PrimeField f5(5);
  CHECK(FieldMatrix::identity(f5, 2).rank() == 2);
  CHECK(FieldMatrix(PrimeField(2), 3, 4).rank() == 0);
  const FieldMatrix m = FieldMatrix::from_rows(f5, {{1, 0}, {1, 1}, {1, 2}, {1, 3}});
  CHECK(m.rank() == 2);
  CHECK(m.transposed().rank() == 2);
}

TEST_CASE("rank equals transpose rank on random matrices") {
  Rng rng(1);
  for (int trial = 0; trial < 40; ++trial) {
    PrimeField f(trial % 2 == 0 ? 5 : 7);
    const FieldMatrix m =
        FieldMatrix::uniform(f, 1 + rng.below(5), 1 + rng.below(5), rng);
    CHECK(m.rank() == m.transposed().rank());
  }
}

TEST_CASE("solve_unique on fixed cases") {
  PrimeField f5(5);
  const auto id = FieldMatrix::identity(f5, 2).solve_unique({1, 2});
  REQUIRE(id.ok());
  CHECK(id.solution == std::vector<std::uint32_t>{1, 2});

  const auto zero = FieldMatrix(f5, 2, 2).solve_unique({0, 0});
  CHECK(zero.status == SolveStatus::underdetermined);

  const auto tri = FieldMatrix::from_rows(f5, {{1, 1}, {0, 1}}).solve_unique({3, 2});
  REQUIRE(tri.ok());
  CHECK(tri.solution == std::vector<std::uint32_t>{1, 2});

  const auto bad = FieldMatrix::from_rows(f5, {{1}, {1}}).solve_unique({1, 2});
  CHECK(bad.status == SolveStatus::no_solution);

  CHECK_THROWS_AS(FieldMatrix(f5, 2, 2).solve_unique({0, 0, 0}), pir::ParamError);
}

TEST_CASE("null space basis on fixed cases") {
  PrimeField f5(5);
  CHECK(FieldMatrix::identity(f5, 2).null_space().cols() == 0);

  PrimeField f2(2);
  const FieldMatrix ones = FieldMatrix::from_rows(f2, {{1, 1, 1}});
  const FieldMatrix basis = ones.null_space();
  CHECK(basis.cols() == 2);
  CHECK((ones * basis).is_zero());
  // oracle: enumerate all 8 vectors, kernel has exactly 4 members
  int kernel = 0;
  for (std::uint32_t v = 0; v < 8; ++v) {
    const std::uint32_t sum = (v & 1) ^ ((v >> 1) & 1) ^ ((v >> 2) & 1);
    kernel += sum == 0;
  }
  CHECK(kernel == 4);  // = 2^basis.cols()

  const FieldMatrix row5 = FieldMatrix::from_rows(f5, {{1, 1, 1}});
  const FieldMatrix basis5 = row5.null_space();
  CHECK(basis5.cols() == 2);
  CHECK((row5 * basis5).is_zero());
}

TEST_CASE("rank-nullity and solvability properties") {
  Rng rng(77);
  for (int trial = 0; trial < 60; ++trial) {
    PrimeField f(trial % 3 == 0 ? 2 : (trial % 3 == 1 ? 3 : 7));
    const std::size_t rows = 1 + rng.below(5);
    const std::size_t cols = 1 + rng.below(5);
    const FieldMatrix m = FieldMatrix::uniform(f, rows, cols, rng);
    CHECK(m.rank() + m.null_space().cols() == cols);
    CHECK((m * m.null_space()).is_zero());

    std::vector<std::uint32_t> rhs(rows);
    for (auto& v : rhs) v = f.uniform(rng);
    const auto result = m.solve_unique(rhs);
    if (result.ok()) {
      CHECK(m.mul_vector(result.solution) == rhs);
      CHECK(m.rank() == cols);
    }
  }
}

TEST_CASE("reduced column echelon on fixed cases") {
  PrimeField f5(5);
  const FieldMatrix id = FieldMatrix::identity(f5, 3);
  const auto ce = id.reduced_column_echelon();
  CHECK(ce.echelon == id);
  CHECK(ce.transform == id);

  const FieldMatrix rank1 = FieldMatrix::from_rows(f5, {{1, 1}, {1, 1}});
  const auto ce1 = rank1.reduced_column_echelon();
  std::size_t nonzero_cols = 0;
  for (std::size_t j = 0; j < 2; ++j) {
    bool zero = true;
    for (std::size_t i = 0; i < 2; ++i) zero = zero && ce1.echelon(i, j) == 0;
    nonzero_cols += !zero;
  }
  CHECK(nonzero_cols == 1);
}

TEST_CASE("reduced column echelon properties on random matrices") {
  Rng rng(5);
  for (int trial = 0; trial < 50; ++trial) {
    PrimeField f(7);
    const FieldMatrix m = FieldMatrix::uniform(f, 3, 5, rng);
    const auto ce = m.reduced_column_echelon();
    CHECK(m * ce.transform == ce.echelon);
    CHECK(ce.transform.invertible());
    CHECK(ce.echelon.rank() == m.rank());
    CHECK(echelon_pivot_property(ce.echelon));
  }
}

TEST_CASE("inverse") {
  PrimeField f7(7);
  Rng rng(9);
  const FieldMatrix m = FieldMatrix::from_rows(f7, {{1, 2}, {3, 4}});
  const auto inv = m.inverse();
  REQUIRE(inv.has_value());
  CHECK(m * *inv == FieldMatrix::identity(f7, 2));

  const FieldMatrix singular = FieldMatrix::from_rows(f7, {{1, 2}, {2, 4}});
  CHECK(!singular.inverse().has_value());
}
