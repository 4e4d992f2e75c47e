#pragma once
// Dense and sparse matrices over O.

#include <utility>
#include <vector>

#include "qtop/cycring.hpp"

namespace qtop {

class CycMatrix {
 public:
  CycMatrix(const PrimeContext& ctx, size_t rows, size_t cols);
  static CycMatrix identity(const PrimeContext& ctx, size_t n);
  static CycMatrix diagonal(const std::vector<CycNum>& diag);

  const PrimeContext& context() const noexcept { return *ctx_; }
  size_t rows() const noexcept { return rows_; }
  size_t cols() const noexcept { return cols_; }
  CycNum& operator()(size_t i, size_t j) { return data_[i * cols_ + j]; }
  const CycNum& operator()(size_t i, size_t j) const { return data_[i * cols_ + j]; }
  const std::vector<CycNum>& data() const noexcept { return data_; }

  friend CycMatrix operator*(const CycMatrix& a, const CycMatrix& b);
  friend CycMatrix operator+(const CycMatrix& a, const CycMatrix& b);
  friend CycMatrix operator-(const CycMatrix& a, const CycMatrix& b);
  friend bool operator==(const CycMatrix& a, const CycMatrix& b);
  CycMatrix& operator*=(const CycNum& c);
  CycMatrix& add_scaled_identity(const CycNum& c);

  std::vector<CycNum> apply(const std::vector<CycNum>& v) const;
  CycNum trace() const;
  std::vector<CycNum> column(size_t j) const;

  bool all_divisible_by_h() const;
  void divide_by_h();

 private:
  const PrimeContext* ctx_;
  size_t rows_, cols_;
  std::vector<CycNum> data_;
};

// Column-sparse square matrix: entries (row, value) per column.
class SparseCycMatrix {
 public:
  using Column = std::vector<std::pair<size_t, CycNum>>;

  SparseCycMatrix(const PrimeContext& ctx, size_t rows, size_t cols)
      : ctx_(&ctx), rows_(rows), columns_(cols) {}

  size_t rows() const noexcept { return rows_; }
  size_t cols() const noexcept { return columns_.size(); }
  const PrimeContext& context() const noexcept { return *ctx_; }
  Column& column(size_t j) { return columns_[j]; }
  const Column& column(size_t j) const { return columns_[j]; }

  CycMatrix to_dense() const;
  // dense * this
  friend CycMatrix operator*(const CycMatrix& a, const SparseCycMatrix& b);
  // this * dense
  friend CycMatrix operator*(const SparseCycMatrix& a, const CycMatrix& b);
  std::vector<CycNum> apply(const std::vector<CycNum>& v) const;

 private:
  const PrimeContext* ctx_;
  size_t rows_;
  std::vector<Column> columns_;
};

}  // namespace qtop
