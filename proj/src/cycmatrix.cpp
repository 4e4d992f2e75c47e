#include "qtop/cycmatrix.hpp"

#include <algorithm>
#include <future>
#include <thread>

namespace qtop {

namespace {

// Runs body(lo, hi) over [0, n) split across hardware threads when the
// amount of work makes it worthwhile.
template <class F>
void parallel_rows(size_t n, size_t work_per_row, F body) {
  const size_t hw = std::max(1u, std::thread::hardware_concurrency());
  const size_t threads = std::min(hw, n);
  if (threads <= 1 || n * work_per_row < 4096) {
    body(size_t{0}, n);
    return;
  }
  std::vector<std::future<void>> jobs;
  const size_t chunk = (n + threads - 1) / threads;
  for (size_t lo = 0; lo < n; lo += chunk) {
    const size_t hi = std::min(n, lo + chunk);
    jobs.push_back(std::async(std::launch::async, body, lo, hi));
  }
  for (auto& j : jobs) j.get();
}

void check_ctx(const PrimeContext& a, const PrimeContext& b) {
  if (&a != &b) throw ContextMismatch();
}

}  // namespace

CycMatrix::CycMatrix(const PrimeContext& ctx, size_t rows, size_t cols)
    : ctx_(&ctx), rows_(rows), cols_(cols), data_(rows * cols, ctx.zero()) {}

CycMatrix CycMatrix::identity(const PrimeContext& ctx, size_t n) {
  CycMatrix m(ctx, n, n);
  for (size_t i = 0; i < n; ++i) m(i, i) = ctx.one();
  return m;
}

CycMatrix CycMatrix::diagonal(const std::vector<CycNum>& diag) {
  if (diag.empty()) throw InvalidArgument("empty diagonal");
  CycMatrix m(diag.front().context(), diag.size(), diag.size());
  for (size_t i = 0; i < diag.size(); ++i) m(i, i) = diag[i];
  return m;
}

CycMatrix operator*(const CycMatrix& a, const CycMatrix& b) {
  check_ctx(*a.ctx_, *b.ctx_);
  if (a.cols_ != b.rows_) throw InvalidArgument("matrix shape mismatch");
  CycMatrix c(*a.ctx_, a.rows_, b.cols_);
  parallel_rows(a.rows_, a.cols_ * b.cols_, [&](size_t lo, size_t hi) {
    CycAccumulator acc(*a.ctx_);
    for (size_t i = lo; i < hi; ++i) {
      for (size_t j = 0; j < b.cols_; ++j) {
        acc.clear();
        bool any = false;
        for (size_t k = 0; k < a.cols_; ++k) {
          const CycNum& x = a(i, k);
          if (x.is_zero()) continue;
          const CycNum& y = b(k, j);
          if (y.is_zero()) continue;
          acc.add_product(x, y);
          any = true;
        }
        if (any) c(i, j) = acc.finish();
      }
    }
  });
  return c;
}

CycMatrix operator+(const CycMatrix& a, const CycMatrix& b) {
  check_ctx(*a.ctx_, *b.ctx_);
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw InvalidArgument("matrix shape mismatch");
  CycMatrix c = a;
  for (size_t k = 0; k < c.data_.size(); ++k) c.data_[k] += b.data_[k];
  return c;
}

CycMatrix operator-(const CycMatrix& a, const CycMatrix& b) {
  check_ctx(*a.ctx_, *b.ctx_);
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw InvalidArgument("matrix shape mismatch");
  CycMatrix c = a;
  for (size_t k = 0; k < c.data_.size(); ++k) c.data_[k] -= b.data_[k];
  return c;
}

bool operator==(const CycMatrix& a, const CycMatrix& b) {
  check_ctx(*a.ctx_, *b.ctx_);
  return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
}

CycMatrix& CycMatrix::operator*=(const CycNum& c) {
  for (auto& x : data_)
    if (!x.is_zero()) x *= c;
  return *this;
}

CycMatrix& CycMatrix::add_scaled_identity(const CycNum& c) {
  for (size_t i = 0; i < std::min(rows_, cols_); ++i) (*this)(i, i) += c;
  return *this;
}

std::vector<CycNum> CycMatrix::apply(const std::vector<CycNum>& v) const {
  if (v.size() != cols_) throw InvalidArgument("vector length mismatch");
  std::vector<CycNum> out(rows_, ctx_->zero());
  CycAccumulator acc(*ctx_);
  for (size_t i = 0; i < rows_; ++i) {
    acc.clear();
    for (size_t k = 0; k < cols_; ++k) {
      if ((*this)(i, k).is_zero() || v[k].is_zero()) continue;
      acc.add_product((*this)(i, k), v[k]);
    }
    out[i] = acc.finish();
  }
  return out;
}

CycNum CycMatrix::trace() const {
  CycNum t = ctx_->zero();
  for (size_t i = 0; i < std::min(rows_, cols_); ++i) t += (*this)(i, i);
  return t;
}

std::vector<CycNum> CycMatrix::column(size_t j) const {
  std::vector<CycNum> out;
  out.reserve(rows_);
  for (size_t i = 0; i < rows_; ++i) out.push_back((*this)(i, j));
  return out;
}

bool CycMatrix::all_divisible_by_h() const {
  return std::all_of(data_.begin(), data_.end(),
                     [](const CycNum& x) { return divisible_by_h(x); });
}

void CycMatrix::divide_by_h() {
  for (auto& x : data_)
    if (!x.is_zero()) x = div_h_exact(x);
}

CycMatrix SparseCycMatrix::to_dense() const {
  CycMatrix m(*ctx_, rows_, cols());
  for (size_t j = 0; j < cols(); ++j)
    for (const auto& [i, v] : columns_[j]) m(i, j) += v;
  return m;
}

CycMatrix operator*(const CycMatrix& a, const SparseCycMatrix& b) {
  check_ctx(a.context(), b.context());
  if (a.cols() != b.rows()) throw InvalidArgument("matrix shape mismatch");
  CycMatrix c(a.context(), a.rows(), b.cols());
  parallel_rows(a.rows(), b.cols() * 4, [&](size_t lo, size_t hi) {
    CycAccumulator acc(a.context());
    for (size_t i = lo; i < hi; ++i) {
      for (size_t j = 0; j < b.cols(); ++j) {
        acc.clear();
        bool any = false;
        for (const auto& [k, v] : b.column(j)) {
          if (a(i, k).is_zero()) continue;
          acc.add_product(a(i, k), v);
          any = true;
        }
        if (any) c(i, j) = acc.finish();
      }
    }
  });
  return c;
}

CycMatrix operator*(const SparseCycMatrix& a, const CycMatrix& b) {
  check_ctx(a.context(), b.context());
  if (a.cols() != b.rows()) throw InvalidArgument("matrix shape mismatch");
  // Row i of the result gathers a(i,k) * b(k,:); build row lists first.
  std::vector<std::vector<std::pair<size_t, const CycNum*>>> rows(a.rows());
  for (size_t k = 0; k < a.cols(); ++k)
    for (const auto& [i, v] : a.column(k)) rows[i].push_back({k, &v});
  CycMatrix c(a.context(), a.rows(), b.cols());
  parallel_rows(a.rows(), b.cols() * 4, [&](size_t lo, size_t hi) {
    CycAccumulator acc(a.context());
    for (size_t i = lo; i < hi; ++i) {
      for (size_t j = 0; j < b.cols(); ++j) {
        acc.clear();
        bool any = false;
        for (const auto& [k, v] : rows[i]) {
          if (b(k, j).is_zero()) continue;
          acc.add_product(*v, b(k, j));
          any = true;
        }
        if (any) c(i, j) = acc.finish();
      }
    }
  });
  return c;
}

std::vector<CycNum> SparseCycMatrix::apply(const std::vector<CycNum>& v) const {
  if (v.size() != cols()) throw InvalidArgument("vector length mismatch");
  std::vector<CycNum> out(rows_, ctx_->zero());
  for (size_t j = 0; j < cols(); ++j) {
    if (v[j].is_zero()) continue;
    for (const auto& [i, x] : columns_[j]) out[i] += x * v[j];
  }
  return out;
}

}  // namespace qtop
