#include "qtop/recoupling.hpp"

#include <algorithm>
#include <memory>

namespace qtop {

const Recoupling& Recoupling::get(int p) {
  const PrimeContext& ctx = PrimeContext::get(p);
  static std::mutex mu;
  static std::map<int, std::unique_ptr<Recoupling>> registry;
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = registry[p];
  if (!slot) slot = std::make_unique<Recoupling>(ctx);
  return *slot;
}

Recoupling::Recoupling(const PrimeContext& ctx)
    : ctx_(&ctx), gauss_(ctx), rank_(ctx), eta_(ctx) {
  const int p = ctx.p();
  for (int n = 0; n <= p; ++n) qint_.push_back(quantum_int(n));
  qfact_.push_back(ctx.one());
  for (int n = 1; n <= p; ++n) qfact_.push_back(qfact_.back() * qint_[n]);
  qfact_inv_.push_back(ctx.one());
  for (int n = 1; n <= p - 1; ++n) {
    qfact_inv_.push_back(qfact_inv_.back() * unit_inverse(qint_[n]));
  }

  for (int n = 0; n <= p - 2; ++n) {
    delta_.push_back(n % 2 == 0 ? qint_[n + 1] : -qint_[n + 1]);
    delta_inv_.push_back(unit_inverse(delta_.back()));
    const long e = static_cast<long>(n) * n + 2L * n;
    mu_.push_back(n % 2 == 0 ? ctx.A_power(e) : -ctx.A_power(e));
    mu_inv_.push_back(n % 2 == 0 ? ctx.A_power(-e) : -ctx.A_power(-e));
  }

  const int c = p - 1;
  theta_.assign(static_cast<size_t>(c) * c * c, ctx.zero());
  theta_inv_.assign(theta_.size(), ctx.zero());
  for (int a = 0; a < c; ++a)
    for (int b = 0; b < c; ++b)
      for (int cc = 0; cc < c; ++cc) {
        if (!admissible(a, b, cc)) continue;
        const int m = (a + b - cc) / 2, n = (b + cc - a) / 2, k = (a + cc - b) / 2;
        CycNum v = qfact_[m + n + k + 1] * qfact_[m] * qfact_[n] * qfact_[k] *
                   qfact_inv_[m + n] * qfact_inv_[n + k] * qfact_inv_[m + k];
        if ((m + n + k) % 2 != 0) v = -v;
        theta_inv_[triple_index(a, b, cc)] = unit_inverse(v);
        theta_[triple_index(a, b, cc)] = std::move(v);
      }

  CycNum sum_sq(ctx);
  for (int n : even_colors()) {
    CycNum d2 = delta_[n] * delta_[n];
    sum_sq += d2;
    gauss_ += d2 * mu_[n];
  }
  rank_ = ctx.kappa_power(-1) * gauss_;
  if (!(rank_ * rank_ == sum_sq)) {
    throw InvariantViolation("surgery normalization: D^2 differs from the sum of Delta_n^2");
  }
  eta_ = LaurentCyc(rank_).inverse();
}

std::vector<int> Recoupling::even_colors() const {
  std::vector<int> out;
  for (int n = 0; n <= max_color(); n += 2) out.push_back(n);
  return out;
}

CycNum Recoupling::quantum_int(long n) const {
  if (n < 0) return -quantum_int(-n);
  CycNum s(*ctx_);
  for (long j = 0; j < n; ++j) s += ctx_->A_power(2 * (n - 1 - 2 * j));
  return s;
}

const CycNum& Recoupling::quantum_factorial(int n) const {
  if (n < 0) throw InvalidArgument("negative quantum factorial");
  if (n >= static_cast<int>(qfact_.size())) return ctx_->zero();
  return qfact_[n];
}

const CycNum& Recoupling::quantum_factorial_inverse(int n) const {
  if (n < 0 || n >= static_cast<int>(qfact_inv_.size())) {
    throw InvalidArgument("quantum factorial is not invertible at n = " + std::to_string(n));
  }
  return qfact_inv_[n];
}

void Recoupling::check_color(int n) const {
  if (n < 0 || n > max_color()) {
    throw InvalidArgument("color " + std::to_string(n) + " outside [0, " +
                          std::to_string(max_color()) + "]");
  }
}

const CycNum& Recoupling::delta(int n) const {
  check_color(n);
  return delta_[n];
}

const CycNum& Recoupling::delta_inverse(int n) const {
  check_color(n);
  return delta_inv_[n];
}

bool Recoupling::admissible(int a, int b, int c) const {
  if (a < 0 || b < 0 || c < 0) return false;
  if ((a + b + c) % 2 != 0) return false;
  if (c > a + b || a > b + c || b > a + c) return false;
  return a + b + c <= 2 * (p() - 2);
}

void Recoupling::check_admissible(int a, int b, int c) const {
  if (!admissible(a, b, c)) {
    throw InvalidArgument("inadmissible triple (" + std::to_string(a) + "," + std::to_string(b) +
                          "," + std::to_string(c) + ")");
  }
}

size_t Recoupling::triple_index(int a, int b, int c) const {
  const size_t n = p() - 1;
  return (static_cast<size_t>(a) * n + b) * n + c;
}

const CycNum& Recoupling::theta(int a, int b, int c) const {
  check_admissible(a, b, c);
  return theta_[triple_index(a, b, c)];
}

const CycNum& Recoupling::theta_inverse(int a, int b, int c) const {
  check_admissible(a, b, c);
  return theta_inv_[triple_index(a, b, c)];
}

const CycNum& Recoupling::tet(int A, int B, int E, int C, int D, int F) const {
  check_admissible(A, D, E);
  check_admissible(B, C, E);
  check_admissible(A, B, F);
  check_admissible(C, D, F);
  const std::array<int, 6> key{A, B, E, C, D, F};
  {
    std::lock_guard<std::mutex> lock(tet_mu_);
    auto it = tet_cache_.find(key);
    if (it != tet_cache_.end()) return it->second;
  }
  const std::array<int, 4> a{(A + D + E) / 2, (B + C + E) / 2, (A + B + F) / 2, (C + D + F) / 2};
  const std::array<int, 3> b{(B + D + E + F) / 2, (A + C + E + F) / 2, (A + B + C + D) / 2};
  CycNum pre = ctx_->one();
  for (int ai : a)
    for (int bj : b) pre *= qfact_[bj - ai];
  for (int e : {A, B, C, D, E, F}) pre *= qfact_inv_[e];
  const int lo = *std::max_element(a.begin(), a.end());
  const int hi = *std::min_element(b.begin(), b.end());
  CycNum sum(*ctx_);
  for (int s = lo; s <= hi; ++s) {
    const CycNum& top = quantum_factorial(s + 1);
    if (top.is_zero()) continue;
    CycNum term = top;
    for (int ai : a) term *= qfact_inv_[s - ai];
    for (int bj : b) term *= qfact_inv_[bj - s];
    if (s % 2 == 0) {
      sum += term;
    } else {
      sum -= term;
    }
  }
  CycNum value = pre * sum;
  std::lock_guard<std::mutex> lock(tet_mu_);
  return tet_cache_.emplace(key, std::move(value)).first->second;
}

CycNum Recoupling::fmove(int a, int b, int c, int d, int j, int i) const {
  return tet(a, b, i, c, d, j) * delta_[i] * theta_inverse(a, d, i) * theta_inverse(b, c, i);
}

LaurentCyc Recoupling::sixj(int a, int b, int c, int d, int j, int i) const {
  return LaurentCyc(fmove(a, b, c, d, j, i));
}

const CycNum& Recoupling::twist_mu(int n) const {
  check_color(n);
  return mu_[n];
}

const CycNum& Recoupling::twist_mu_inverse(int n) const {
  check_color(n);
  return mu_inv_[n];
}

CycNum Recoupling::encircle_lambda(int i) const {
  check_color(i);
  return -(CycNum::monomial(*ctx_, i + 1) + CycNum::monomial(*ctx_, -(i + 1)));
}

CycNum Recoupling::hopf_value(int a, int b) const {
  check_color(a);
  check_color(b);
  CycNum v = quantum_int(static_cast<long>(a + 1) * (b + 1));
  return (a + b) % 2 == 0 ? v : -v;
}

CycNum Recoupling::curve_eigenvalue(int c, int k) const {
  return hopf_value(c, k) * delta_inverse(k);
}

std::vector<std::pair<int, LaurentCyc>> Recoupling::omega_coeffs() const {
  std::vector<std::pair<int, LaurentCyc>> out;
  for (int n : even_colors()) out.emplace_back(n, eta_ * LaurentCyc(delta_[n]));
  return out;
}

}  // namespace qtop
