#ifndef PIR_MATRIX_HPP
#define PIR_MATRIX_HPP

#include <cassert>
#include <cstdint>
#include <optional>
#include <vector>

#include "pir/field.hpp"
#include "pir/rng.hpp"

namespace pir {

enum class SolveStatus { unique, no_solution, underdetermined };

struct SolveResult {
  SolveStatus status;
  std::vector<std::uint32_t> solution;  // valid iff status == unique
  bool ok() const { return status == SolveStatus::unique; }
};

struct ColumnEchelon;

/* Dense matrix over a prime field, row-major. All scheme objects in this
   toolkit (parity checks, retrieval matrices, masks, records, decode
   systems) are instances of this type; dimensions stay at desk scale, so
   elimination is plain cubic Gauss-Jordan with exact arithmetic. Values are
   immutable in spirit: operations return fresh matrices. */
class FieldMatrix {
 public:
  FieldMatrix(PrimeField field, std::size_t rows, std::size_t cols);

  static FieldMatrix identity(PrimeField field, std::size_t n);
  static FieldMatrix from_rows(PrimeField field,
                               const std::vector<std::vector<std::uint32_t>>& rows);
  static FieldMatrix uniform(PrimeField field, std::size_t rows, std::size_t cols, Rng& rng);

  const PrimeField& field() const { return field_; }
  std::uint32_t q() const { return field_.q(); }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  std::uint32_t operator()(std::size_t r, std::size_t c) const {
    assert(r < rows_ && c < cols_);
    return data_[r * cols_ + c];
  }
  std::uint32_t& operator()(std::size_t r, std::size_t c) {
    assert(r < rows_ && c < cols_);
    return data_[r * cols_ + c];
  }

  bool operator==(const FieldMatrix& o) const;
  bool operator!=(const FieldMatrix& o) const { return !(*this == o); }
  bool is_zero() const;

  FieldMatrix transposed() const;
  FieldMatrix operator*(const FieldMatrix& o) const;
  std::vector<std::uint32_t> mul_vector(const std::vector<std::uint32_t>& v) const;

  std::vector<std::uint32_t> row(std::size_t r) const;
  std::vector<std::uint32_t> column(std::size_t c) const;
  void set_row(std::size_t r, const std::vector<std::uint32_t>& values);
  void set_column(std::size_t c, const std::vector<std::uint32_t>& values);

  // Copy with only the listed columns, in the given order.
  FieldMatrix select_columns(const std::vector<std::size_t>& idx) const;
  // Copy with only the listed rows, in the given order.
  FieldMatrix select_rows(const std::vector<std::size_t>& idx) const;
  // Copy with the listed rows removed (indices 0-based, any order).
  FieldMatrix drop_rows(const std::vector<std::size_t>& idx) const;

  std::size_t rank() const;
  bool invertible() const { return rows_ == cols_ && rank() == rows_; }
  std::optional<FieldMatrix> inverse() const;

  // Unique solution of (*this) x = rhs, or the reason there is none.
  SolveResult solve_unique(const std::vector<std::uint32_t>& rhs) const;

  // Columns form a basis of { x : (*this) x = 0 }; cols() - rank() of them.
  FieldMatrix null_space() const;

  // Reduced column echelon form: unit pivots, pivot rows strictly increasing
  // left to right, every pivot row zero outside its pivot column, zero
  // columns rightmost.
  ColumnEchelon reduced_column_echelon() const;

 private:
  PrimeField field_;
  std::size_t rows_;
  std::size_t cols_;
  std::vector<std::uint32_t> data_;
};

struct ColumnEchelon {
  FieldMatrix echelon;    // = source * transform, reduced column echelon form
  FieldMatrix transform;  // invertible cols x cols
};

}  // namespace pir

#endif  // PIR_MATRIX_HPP
