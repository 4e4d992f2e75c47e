#pragma once
// Matrices and vectors over O[1/h] carrying a common h-denominator and a
// kappa-phase ledger: the value is kappa^kappa * num / h^hexp.

#include <memory>
#include <vector>

#include "qtop/cycmatrix.hpp"
#include "qtop/tqftspace.hpp"

namespace qtop {

class RepVector {
 public:
  RepVector(std::vector<CycNum> num, int hexp, int kappa);
  const std::vector<CycNum>& num() const noexcept { return num_; }
  int hexp() const noexcept { return hexp_; }
  int kappa_ledger() const noexcept { return kappa_; }
  size_t size() const noexcept { return num_.size(); }
  // Entry i without the ledger phase.
  LaurentCyc entry(size_t i) const { return LaurentCyc(num_[i], hexp_); }

 private:
  friend class RepMatrix;
  void normalize();
  std::vector<CycNum> num_;
  int hexp_;
  int kappa_;
};

class RepMatrix {
 public:
  RepMatrix(CycMatrix num, int hexp, int kappa, std::shared_ptr<const ColoringBasis> basis);
  static RepMatrix identity(std::shared_ptr<const ColoringBasis> basis);

  size_t dim() const noexcept { return num_.rows(); }
  const CycMatrix& numerator() const noexcept { return num_; }
  int hexp() const noexcept { return hexp_; }
  int kappa_ledger() const noexcept { return kappa_; }
  const std::shared_ptr<const ColoringBasis>& basis() const noexcept { return basis_; }
  const PrimeContext& context() const noexcept { return num_.context(); }

  // Entry without the ledger phase.
  LaurentCyc entry(size_t i, size_t j) const { return LaurentCyc(num_(i, j), hexp_); }
  RepVector column(size_t j) const;
  // Trace without the ledger phase.
  LaurentCyc trace() const { return LaurentCyc(num_.trace(), hexp_); }

  friend RepMatrix operator*(const RepMatrix& a, const RepMatrix& b);
  RepVector operator*(const RepVector& v) const;
  // Exact equality including the ledger.
  friend bool operator==(const RepMatrix& a, const RepMatrix& b);
  // k with a = kappa^k b as matrices over O[1/h] (ledgers folded in).
  friend std::optional<int> phase_between(const RepMatrix& a, const RepMatrix& b);
  bool is_identity() const;

 private:
  void normalize();
  CycMatrix num_;
  int hexp_;
  int kappa_;
  std::shared_ptr<const ColoringBasis> basis_;
};

}  // namespace qtop
