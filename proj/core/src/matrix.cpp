#include "pir/matrix.hpp"

#include <algorithm>

#include "pir/errors.hpp"

namespace pir {
namespace {

// In-place Gauss-Jordan over the leftmost `limit` columns; returns the pivot
// columns in order. Rows are fully reduced (zeros above and below pivots,
// unit pivots), scanning for the first nonzero entry in row-major order.
std::vector<std::size_t> row_reduce(FieldMatrix& m, std::size_t limit) {
  const PrimeField& f = m.field();
  std::vector<std::size_t> pivots;
  std::size_t next_row = 0;
  for (std::size_t c = 0; c < limit && next_row < m.rows(); ++c) {
    std::size_t pivot = next_row;
    while (pivot < m.rows() && m(pivot, c) == 0) ++pivot;
    if (pivot == m.rows()) continue;
    if (pivot != next_row) {
      for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(pivot, j), m(next_row, j));
    }
    const std::uint32_t scale = f.inv(m(next_row, c));
    if (scale != 1) {
      for (std::size_t j = 0; j < m.cols(); ++j) m(next_row, j) = f.mul(m(next_row, j), scale);
    }
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == next_row || m(i, c) == 0) continue;
      const std::uint32_t factor = m(i, c);
      for (std::size_t j = 0; j < m.cols(); ++j) {
        m(i, j) = f.sub(m(i, j), f.mul(factor, m(next_row, j)));
      }
    }
    pivots.push_back(c);
    ++next_row;
  }
  return pivots;
}

}  // namespace

FieldMatrix::FieldMatrix(PrimeField field, std::size_t rows, std::size_t cols)
    : field_(field), rows_(rows), cols_(cols), data_(rows * cols, 0) {}

FieldMatrix FieldMatrix::identity(PrimeField field, std::size_t n) {
  FieldMatrix m(field, n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

FieldMatrix FieldMatrix::from_rows(PrimeField field,
                                   const std::vector<std::vector<std::uint32_t>>& rows) {
  const std::size_t r = rows.size();
  const std::size_t c = r == 0 ? 0 : rows.front().size();
  FieldMatrix m(field, r, c);
  for (std::size_t i = 0; i < r; ++i) {
    if (rows[i].size() != c) throw ParamError("ragged row list");
    for (std::size_t j = 0; j < c; ++j) {
      if (!field.contains(rows[i][j])) throw ParamError("entry out of field range");
      m(i, j) = rows[i][j];
    }
  }
  return m;
}

FieldMatrix FieldMatrix::uniform(PrimeField field, std::size_t rows, std::size_t cols,
                                 Rng& rng) {
  FieldMatrix m(field, rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = field.uniform(rng);
  }
  return m;
}

bool FieldMatrix::operator==(const FieldMatrix& o) const {
  return field_ == o.field_ && rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
}

bool FieldMatrix::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](std::uint32_t v) { return v == 0; });
}

FieldMatrix FieldMatrix::transposed() const {
  FieldMatrix t(field_, cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  }
  return t;
}

FieldMatrix FieldMatrix::operator*(const FieldMatrix& o) const {
  if (field_ != o.field_) throw ParamError("matrix product across different fields");
  if (cols_ != o.rows_) throw ParamError("matrix product dimension mismatch");
  FieldMatrix out(field_, rows_, o.cols_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t k = 0; k < cols_; ++k) {
      const std::uint32_t a = (*this)(i, k);
      if (a == 0) continue;
      for (std::size_t j = 0; j < o.cols_; ++j) {
        out(i, j) = field_.add(out(i, j), field_.mul(a, o(k, j)));
      }
    }
  }
  return out;
}

std::vector<std::uint32_t> FieldMatrix::mul_vector(const std::vector<std::uint32_t>& v) const {
  if (v.size() != cols_) throw ParamError("matrix-vector dimension mismatch");
  std::vector<std::uint32_t> out(rows_, 0);
  for (std::size_t i = 0; i < rows_; ++i) {
    std::uint32_t acc = 0;
    for (std::size_t j = 0; j < cols_; ++j) acc = field_.add(acc, field_.mul((*this)(i, j), v[j]));
    out[i] = acc;
  }
  return out;
}

std::vector<std::uint32_t> FieldMatrix::row(std::size_t r) const {
  std::vector<std::uint32_t> out(cols_);
  for (std::size_t j = 0; j < cols_; ++j) out[j] = (*this)(r, j);
  return out;
}

std::vector<std::uint32_t> FieldMatrix::column(std::size_t c) const {
  std::vector<std::uint32_t> out(rows_);
  for (std::size_t i = 0; i < rows_; ++i) out[i] = (*this)(i, c);
  return out;
}

void FieldMatrix::set_row(std::size_t r, const std::vector<std::uint32_t>& values) {
  if (values.size() != cols_) throw ParamError("row length mismatch");
  for (std::size_t j = 0; j < cols_; ++j) (*this)(r, j) = values[j];
}

void FieldMatrix::set_column(std::size_t c, const std::vector<std::uint32_t>& values) {
  if (values.size() != rows_) throw ParamError("column length mismatch");
  for (std::size_t i = 0; i < rows_; ++i) (*this)(i, c) = values[i];
}

FieldMatrix FieldMatrix::select_columns(const std::vector<std::size_t>& idx) const {
  FieldMatrix out(field_, rows_, idx.size());
  for (std::size_t j = 0; j < idx.size(); ++j) {
    assert(idx[j] < cols_);
    for (std::size_t i = 0; i < rows_; ++i) out(i, j) = (*this)(i, idx[j]);
  }
  return out;
}

FieldMatrix FieldMatrix::select_rows(const std::vector<std::size_t>& idx) const {
  FieldMatrix out(field_, idx.size(), cols_);
  for (std::size_t i = 0; i < idx.size(); ++i) {
    assert(idx[i] < rows_);
    for (std::size_t j = 0; j < cols_; ++j) out(i, j) = (*this)(idx[i], j);
  }
  return out;
}

FieldMatrix FieldMatrix::drop_rows(const std::vector<std::size_t>& idx) const {
  std::vector<bool> dropped(rows_, false);
  for (std::size_t r : idx) {
    assert(r < rows_);
    dropped[r] = true;
  }
  std::vector<std::size_t> keep;
  for (std::size_t r = 0; r < rows_; ++r) {
    if (!dropped[r]) keep.push_back(r);
  }
  return select_rows(keep);
}

std::size_t FieldMatrix::rank() const {
  FieldMatrix work = *this;
  return row_reduce(work, cols_).size();
}

std::optional<FieldMatrix> FieldMatrix::inverse() const {
  if (rows_ != cols_) return std::nullopt;
  FieldMatrix work(field_, rows_, 2 * cols_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) work(i, j) = (*this)(i, j);
    work(i, cols_ + i) = 1;
  }
  if (row_reduce(work, cols_).size() != cols_) return std::nullopt;
  FieldMatrix out(field_, rows_, cols_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) out(i, j) = work(i, cols_ + j);
  }
  return out;
}

SolveResult FieldMatrix::solve_unique(const std::vector<std::uint32_t>& rhs) const {
  if (rhs.size() != rows_) throw ParamError("solve: rhs length mismatch");
  FieldMatrix work(field_, rows_, cols_ + 1);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) work(i, j) = (*this)(i, j);
    work(i, cols_) = rhs[i];
  }
  const std::vector<std::size_t> pivots = row_reduce(work, cols_ + 1);
  std::size_t rank_a = 0;
  for (std::size_t c : pivots) {
    if (c < cols_) ++rank_a;
  }
  if (rank_a != pivots.size()) return {SolveStatus::no_solution, {}};
  if (rank_a < cols_) return {SolveStatus::underdetermined, {}};
  // Full column rank and consistent: pivot i sits in column i.
  std::vector<std::uint32_t> x(cols_);
  for (std::size_t i = 0; i < cols_; ++i) x[i] = work(i, cols_);
  return {SolveStatus::unique, std::move(x)};
}

FieldMatrix FieldMatrix::null_space() const {
  const ColumnEchelon ce = reduced_column_echelon();
  std::vector<std::size_t> zero_cols;
  for (std::size_t j = 0; j < cols_; ++j) {
    bool zero = true;
    for (std::size_t i = 0; i < rows_ && zero; ++i) zero = ce.echelon(i, j) == 0;
    if (zero) zero_cols.push_back(j);
  }
  return ce.transform.select_columns(zero_cols);
}

ColumnEchelon FieldMatrix::reduced_column_echelon() const {
  FieldMatrix e = *this;
  FieldMatrix t = identity(field_, cols_);
  std::size_t next = 0;
  for (std::size_t i = 0; i < rows_ && next < cols_; ++i) {
    std::size_t pivot = next;
    while (pivot < cols_ && e(i, pivot) == 0) ++pivot;
    if (pivot == cols_) continue;
    if (pivot != next) {
      for (std::size_t r = 0; r < rows_; ++r) std::swap(e(r, pivot), e(r, next));
      for (std::size_t r = 0; r < cols_; ++r) std::swap(t(r, pivot), t(r, next));
    }
    const std::uint32_t scale = field_.inv(e(i, next));
    if (scale != 1) {
      for (std::size_t r = 0; r < rows_; ++r) e(r, next) = field_.mul(e(r, next), scale);
      for (std::size_t r = 0; r < cols_; ++r) t(r, next) = field_.mul(t(r, next), scale);
    }
    for (std::size_t j = 0; j < cols_; ++j) {
      if (j == next || e(i, j) == 0) continue;
      const std::uint32_t factor = e(i, j);
      for (std::size_t r = 0; r < rows_; ++r) {
        e(r, j) = field_.sub(e(r, j), field_.mul(factor, e(r, next)));
      }
      for (std::size_t r = 0; r < cols_; ++r) {
        t(r, j) = field_.sub(t(r, j), field_.mul(factor, t(r, next)));
      }
    }
    ++next;
  }
  return {std::move(e), std::move(t)};
}

}  // namespace pir
