#pragma once
// Exact integer linear algebra: Smith normal form, determinant, signature.

#include <vector>

#include "qtop/cycring.hpp"

namespace qtop {

using IntMatrix = std::vector<std::vector<Integer>>;

IntMatrix int_identity(size_t n);
IntMatrix int_multiply(const IntMatrix& a, const IntMatrix& b);

// Nonzero invariant factors d_1 | d_2 | ... (all positive) of a matrix.
std::vector<Integer> smith_invariants(IntMatrix m);

// Determinant by fraction-free elimination.
Integer determinant(const IntMatrix& m);

struct Inertia {
  int positive = 0;
  int negative = 0;
  int zero = 0;
  int signature() const noexcept { return positive - negative; }
};
// Inertia of a symmetric matrix by exact rational congruence reduction.
Inertia inertia(const IntMatrix& m);

// Abelian group presented as the cokernel of m (relations are columns).
struct CokernelData {
  int free_rank = 0;      // number of Z summands
  Integer torsion = 1;    // order of the torsion subgroup
  std::vector<Integer> invariants;  // nontrivial torsion invariant factors
};
CokernelData cokernel(const IntMatrix& m);

}  // namespace qtop
