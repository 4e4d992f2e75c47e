#pragma once
// Kauffman-bracket recoupling data at A = -q^{(p+1)/2}: quantum integers,
// loop values, theta and tetrahedral networks, the F-move coefficients,
// twist and Hopf-link values, and the surgery element omega.

#include <array>
#include <map>
#include <mutex>
#include <utility>
#include <vector>

#include "qtop/cycring.hpp"

namespace qtop {

class Recoupling {
 public:
  static const Recoupling& get(int p);
  explicit Recoupling(const PrimeContext& ctx);

  Recoupling(const Recoupling&) = delete;
  Recoupling& operator=(const Recoupling&) = delete;

  const PrimeContext& context() const noexcept { return *ctx_; }
  int p() const noexcept { return ctx_->p(); }
  int max_color() const noexcept { return ctx_->p() - 2; }
  // Even colors 0, 2, ..., p-3.
  std::vector<int> even_colors() const;

  // [n] = sum_{j<n} A^{2(n-1-2j)}; [-n] = -[n].
  CycNum quantum_int(long n) const;
  // [n]! for n >= 0; zero once n >= p.
  const CycNum& quantum_factorial(int n) const;
  // ([n]!)^{-1} for 0 <= n <= p-1, where [n]! is a unit.
  const CycNum& quantum_factorial_inverse(int n) const;

  // Delta_n = (-1)^n [n+1].
  const CycNum& delta(int n) const;
  const CycNum& delta_inverse(int n) const;

  bool admissible(int a, int b, int c) const;

  // Theta-network value.
  const CycNum& theta(int a, int b, int c) const;
  const CycNum& theta_inverse(int a, int b, int c) const;

  // Tetrahedral network with faces (A,D,E), (B,C,E), (A,B,F), (C,D,F).
  const CycNum& tet(int A, int B, int E, int C, int D, int F) const;

  // F-move coefficient taking the H-network with vertices (a,b,j) and
  // (j,c,d) (read counterclockwise, the shared edge j first) to the network
  // with vertices (a,d,i) and (b,c,i).
  LaurentCyc sixj(int a, int b, int c, int d, int j, int i) const;
  // Same coefficient as an element of O (all denominators are units).
  CycNum fmove(int a, int b, int c, int d, int j, int i) const;

  // mu_n = (-1)^n A^{n^2+2n}, the ribbon twist on color n.
  const CycNum& twist_mu(int n) const;
  const CycNum& twist_mu_inverse(int n) const;

  // lambda_i = -q^{i+1} - q^{-i-1}.
  CycNum encircle_lambda(int i) const;
  // Zero-framed Hopf link colored (a,b): (-1)^{a+b} [(a+1)(b+1)].
  CycNum hopf_value(int a, int b) const;
  // Eigenvalue of a circle colored c encircling a strand colored k:
  // hopf_value(c, k) / Delta_k.
  CycNum curve_eigenvalue(int c, int k) const;

  // G = sum over even n of Delta_n^2 mu_n.
  const CycNum& gauss_sum() const noexcept { return gauss_; }
  // D = kappa^{-1} G, with D^2 = sum over even n of Delta_n^2.
  const CycNum& rank_D() const noexcept { return rank_; }
  // eta = 1/D.
  const LaurentCyc& eta() const noexcept { return eta_; }
  // omega = eta * sum over even n of Delta_n (core colored n).
  std::vector<std::pair<int, LaurentCyc>> omega_coeffs() const;

 private:
  void check_color(int n) const;
  void check_admissible(int a, int b, int c) const;
  size_t triple_index(int a, int b, int c) const;

  const PrimeContext* ctx_;
  std::vector<CycNum> qint_;          // [0] .. [p]
  std::vector<CycNum> qfact_;         // [0]! .. [p]!
  std::vector<CycNum> qfact_inv_;     // inverses up to [p-1]!
  std::vector<CycNum> delta_, delta_inv_;
  std::vector<CycNum> mu_, mu_inv_;
  std::vector<CycNum> theta_, theta_inv_;  // indexed by triple_index; zero when inadmissible
  CycNum gauss_, rank_;
  LaurentCyc eta_;

  mutable std::mutex tet_mu_;
  mutable std::map<std::array<int, 6>, CycNum> tet_cache_;
};

}  // namespace qtop
