#include "qtop/intlinalg.hpp"

#include <utility>

namespace qtop {

IntMatrix int_identity(size_t n) {
  IntMatrix m(n, std::vector<Integer>(n, 0));
  for (size_t i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

IntMatrix int_multiply(const IntMatrix& a, const IntMatrix& b) {
  const size_t n = a.size(), k = b.size(), m = b.empty() ? 0 : b[0].size();
  IntMatrix c(n, std::vector<Integer>(m, 0));
  for (size_t i = 0; i < n; ++i) {
    if (a[i].size() != k) throw InvalidArgument("matrix shape mismatch");
    for (size_t t = 0; t < k; ++t)
      for (size_t j = 0; j < m; ++j) c[i][j] += a[i][t] * b[t][j];
  }
  return c;
}

std::vector<Integer> smith_invariants(IntMatrix m) {
  const size_t rows = m.size();
  const size_t cols = rows ? m[0].size() : 0;
  std::vector<Integer> diag;
  size_t t = 0;
  while (t < rows && t < cols) {
    // Pivot: smallest nonzero absolute value in the remaining block.
    size_t pi = rows, pj = cols;
    for (size_t i = t; i < rows; ++i)
      for (size_t j = t; j < cols; ++j)
        if (m[i][j] != 0 && (pi == rows || abs(m[i][j]) < abs(m[pi][pj]))) {
          pi = i;
          pj = j;
        }
    if (pi == rows) break;
    std::swap(m[t], m[pi]);
    for (auto& row : m) std::swap(row[t], row[pj]);
    bool clean = false;
    while (!clean) {
      clean = true;
      for (size_t i = t + 1; i < rows; ++i) {
        if (m[i][t] == 0) continue;
        Integer qt = m[i][t] / m[t][t];
        for (size_t j = t; j < cols; ++j) m[i][j] -= qt * m[t][j];
        if (m[i][t] != 0) {
          std::swap(m[t], m[i]);
          clean = false;
        }
      }
      for (size_t j = t + 1; j < cols; ++j) {
        if (m[t][j] == 0) continue;
        Integer qt = m[t][j] / m[t][t];
        for (size_t i = t; i < rows; ++i) m[i][j] -= qt * m[i][t];
        if (m[t][j] != 0) {
          for (auto& row : m) std::swap(row[t], row[j]);
          clean = false;
        }
      }
      if (clean) {
        // Divisibility: fold any entry not divisible by the pivot into row t.
        for (size_t i = t + 1; i < rows && clean; ++i)
          for (size_t j = t + 1; j < cols; ++j)
            if (m[i][j] % m[t][t] != 0) {
              for (size_t k = t; k < cols; ++k) m[t][k] += m[i][k];
              clean = false;
              break;
            }
      }
    }
    diag.push_back(abs(m[t][t]));
    ++t;
  }
  return diag;
}

Integer determinant(const IntMatrix& m0) {
  const size_t n = m0.size();
  if (n == 0) return 1;
  IntMatrix m = m0;
  Integer sign = 1, prev = 1;
  // Bareiss elimination.
  for (size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k] == 0) {
      size_t r = k + 1;
      while (r < n && m[r][k] == 0) ++r;
      if (r == n) return 0;
      std::swap(m[k], m[r]);
      sign = -sign;
    }
    for (size_t i = k + 1; i < n; ++i)
      for (size_t j = k + 1; j < n; ++j) {
        m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
      }
    prev = m[k][k];
  }
  return sign * m[n - 1][n - 1];
}

Inertia inertia(const IntMatrix& m0) {
  const size_t n = m0.size();
  std::vector<std::vector<mpq_class>> m(n, std::vector<mpq_class>(n));
  for (size_t i = 0; i < n; ++i) {
    if (m0[i].size() != n) throw InvalidArgument("matrix is not square");
    for (size_t j = 0; j < n; ++j) {
      if (m0[i][j] != m0[j][i]) throw InvalidArgument("matrix is not symmetric");
      m[i][j] = m0[i][j];
    }
  }
  Inertia out;
  std::vector<bool> done(n, false);
  // Symmetric elimination: pick a nonzero diagonal pivot, or create one
  // from an off-diagonal entry by adding a row/column pair.
  for (size_t step = 0; step < n; ++step) {
    size_t piv = n;
    for (size_t i = 0; i < n; ++i)
      if (!done[i] && m[i][i] != 0) {
        piv = i;
        break;
      }
    if (piv == n) {
      size_t a = n, b = n;
      for (size_t i = 0; i < n && a == n; ++i)
        for (size_t j = i + 1; j < n; ++j)
          if (!done[i] && !done[j] && m[i][j] != 0) {
            a = i;
            b = j;
            break;
          }
      if (a == n) break;  // remaining block is zero
      // Row/column a += row/column b makes m[a][a] = 2 m[a][b] + m[b][b] = 2 m[a][b].
      for (size_t k = 0; k < n; ++k) m[a][k] += m[b][k];
      for (size_t k = 0; k < n; ++k) m[k][a] += m[k][b];
      piv = a;
    }
    const mpq_class pv = m[piv][piv];
    (pv > 0 ? out.positive : out.negative)++;
    done[piv] = true;
    for (size_t i = 0; i < n; ++i) {
      if (done[i] || m[i][piv] == 0) continue;
      mpq_class f = m[i][piv] / pv;
      for (size_t k = 0; k < n; ++k) m[i][k] -= f * m[piv][k];
      for (size_t k = 0; k < n; ++k) m[k][i] -= f * m[k][piv];
    }
  }
  out.zero = static_cast<int>(n) - out.positive - out.negative;
  return out;
}

CokernelData cokernel(const IntMatrix& m) {
  CokernelData out;
  const size_t rows = m.size();
  std::vector<Integer> inv = smith_invariants(m);
  out.free_rank = static_cast<int>(rows - inv.size());
  for (const Integer& d : inv) {
    out.torsion *= d;
    if (d != 1) out.invariants.push_back(d);
  }
  return out;
}

}  // namespace qtop
