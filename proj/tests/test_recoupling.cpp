#include <doctest.h>

#include <algorithm>

#include "oracles.hpp"
#include "qtop/recoupling.hpp"

using namespace qtop;

namespace {

// Float [n]! from sin-ratios, used for the closed tetrahedral formula.
oracle::cplx qint_f(int p, int n) {
  const oracle::cplx a = oracle::value_A(p);
  return (std::pow(a, 2 * n) - std::pow(a, -2 * n)) / (a * a - 1.0 / (a * a));
}
oracle::cplx qfact_f(int p, int n) {
  oracle::cplx r = 1;
  for (int k = 2; k <= n; ++k) r *= qint_f(p, k);
  return r;
}

// Tetrahedral network from the closed alternating sum, in floating point.
oracle::cplx tet_f(int p, int A, int B, int E, int C, int D, int F) {
  const int a1 = (A + D + E) / 2, a2 = (B + C + E) / 2, a3 = (A + B + F) / 2, a4 = (C + D + F) / 2;
  const int b1 = (B + D + E + F) / 2, b2 = (A + C + E + F) / 2, b3 = (A + B + C + D) / 2;
  oracle::cplx num = 1, den = 1;
  for (int b : {b1, b2, b3})
    for (int a : {a1, a2, a3, a4}) num *= qfact_f(p, b - a);
  for (int x : {A, B, C, D, E, F}) den *= qfact_f(p, x);
  const int lo = std::max({a1, a2, a3, a4}), hi = std::min({b1, b2, b3});
  oracle::cplx sum = 0;
  for (int s = lo; s <= hi; ++s) {
    oracle::cplx part = 1;
    for (int a : {a1, a2, a3, a4}) part *= qfact_f(p, s - a);
    for (int b : {b1, b2, b3}) part *= qfact_f(p, b - s);
    sum += (s % 2 ? -1.0 : 1.0) * qfact_f(p, s + 1) / part;
  }
  return num / den * sum;
}

}  // namespace

TEST_CASE("quantum integers and loop values against float values") {
  for (int p : {5, 7, 11}) {
    const Recoupling& rc = Recoupling::get(p);
    for (int n = 0; n <= p; ++n) {
      CHECK(oracle::close(oracle::evaluate(rc.quantum_int(n)), qint_f(p, n)));
    }
    for (int n = 0; n <= p - 2; ++n) {
      CHECK(oracle::close(oracle::evaluate(rc.delta(n)), oracle::delta(p, n)));
      CHECK(rc.delta(n) * rc.delta_inverse(n) == rc.context().one());
    }
    // Chebyshev recursion of the loop values.
    for (int n = 1; n + 1 <= p - 2; ++n) {
      CHECK(rc.delta(n + 1) == rc.delta(1) * rc.delta(n) - rc.delta(n - 1));
    }
    CHECK(rc.quantum_factorial(p).is_zero());
    CHECK(rc.quantum_int(p).is_zero());
  }
}

TEST_CASE("admissibility") {
  const Recoupling& rc = Recoupling::get(5);
  CHECK(rc.admissible(2, 2, 2));
  CHECK(rc.admissible(0, 3, 3));
  CHECK_FALSE(rc.admissible(1, 1, 1));   // odd sum
  CHECK_FALSE(rc.admissible(0, 2, 0));   // triangle
  CHECK_FALSE(rc.admissible(3, 3, 2));   // sum above 2(p-2)
  CHECK(rc.even_colors() == std::vector<int>{0, 2});
}

TEST_CASE("theta agrees with Jones-Wenzl diagram expansion") {
  for (int p : {5, 7}) {
    const Recoupling& rc = Recoupling::get(p);
    const oracle::cplx A = oracle::value_A(p);
    int checked = 0;
    for (int a = 0; a <= p - 2; ++a)
      for (int b = 0; b <= p - 2; ++b)
        for (int c = 0; c <= p - 2; ++c) {
          if (!rc.admissible(a, b, c) || a + b > 8) continue;
          ++checked;
          CHECK(oracle::close(oracle::evaluate(rc.theta(a, b, c)), oracle::theta(a, b, c, A)));
          CHECK(rc.theta(a, b, c) * rc.theta_inverse(a, b, c) == rc.context().one());
        }
    CHECK(checked > 10);
  }
}

TEST_CASE("theta with a zero color is a loop value") {
  const Recoupling& rc = Recoupling::get(7);
  for (int a = 0; a <= 5; ++a) CHECK(rc.theta(a, 0, a) == rc.delta(a));
}

TEST_CASE("tetrahedral networks") {
  for (int p : {5, 7}) {
    const Recoupling& rc = Recoupling::get(p);
    const int m = p - 2;
    long n = 0;
    for (int A = 0; A <= m; ++A)
      for (int B = 0; B <= m; ++B)
        for (int C = 0; C <= m; ++C)
          for (int D = 0; D <= m; ++D)
            for (int E = 0; E <= m; ++E)
              for (int F = 0; F <= m; ++F) {
                if (!rc.admissible(A, D, E) || !rc.admissible(B, C, E) ||
                    !rc.admissible(A, B, F) || !rc.admissible(C, D, F)) {
                  continue;
                }
                ++n;
                const CycNum& t = rc.tet(A, B, E, C, D, F);
                CHECK(oracle::close(oracle::evaluate(t), tet_f(p, A, B, E, C, D, F)));
                // Symmetries of the tetrahedron.
                CHECK(t == rc.tet(B, A, E, D, C, F));
                CHECK(t == rc.tet(A, D, F, C, B, E));
                if (F == 0) CHECK(t == rc.theta(A, D, E));
              }
    CHECK(n > 0);
  }
}

TEST_CASE("F-moves with a trivial leg are 1") {
  const Recoupling& rc = Recoupling::get(7);
  for (int a = 0; a <= 5; ++a)
    for (int c = 0; c <= 5; ++c)
      for (int d = 0; d <= 5; ++d) {
        if (!rc.admissible(a, c, d)) continue;
        CHECK(rc.fmove(a, 0, c, d, a, c).is_one());
        CHECK(rc.sixj(a, 0, c, d, a, c).num().is_one());
      }
}

TEST_CASE("twists, Hopf links and encircling circles") {
  for (int p : {5, 7}) {
    const Recoupling& rc = Recoupling::get(p);
    for (int k = 0; k <= p - 2; ++k) {
      CHECK(rc.curve_eigenvalue(1, k) == rc.encircle_lambda(k));
      CHECK(rc.hopf_value(k, 0) == rc.delta(k));
      CHECK(rc.twist_mu(k) * rc.twist_mu_inverse(k) == rc.context().one());
    }
    // Fusion: the Hopf link is sum_c Delta_c mu_c / (mu_a mu_b) over
    // admissible c, away from the cutoff.
    for (int a = 0; a <= p - 2; ++a)
      for (int b = 0; a + b <= p - 2; ++b) {
        CycNum s(rc.context());
        for (int c = 0; c <= p - 2; ++c) {
          if (!rc.admissible(a, b, c)) continue;
          s += rc.delta(c) * rc.twist_mu(c) * rc.twist_mu_inverse(a) * rc.twist_mu_inverse(b);
        }
        CHECK(s == rc.hopf_value(a, b));
      }
  }
}

TEST_CASE("surgery normalization constants") {
  for (int p : {5, 7, 11, 13}) {
    const Recoupling& rc = Recoupling::get(p);
    const PrimeContext& ctx = rc.context();
    CycNum s(ctx);
    for (int n : rc.even_colors()) s += rc.delta(n) * rc.delta(n);
    CHECK(rc.rank_D() * rc.rank_D() == s);
    CHECK(ctx.kappa() * rc.rank_D() == rc.gauss_sum());
    CHECK((rc.eta() * LaurentCyc(rc.rank_D())).num().is_one());
    CHECK(rc.omega_coeffs().size() == static_cast<size_t>((p - 1) / 2));
    // D has valuation d-1 up to a phase.
    CHECK(h_valuation(rc.rank_D()) == Valuation((p - 3) / 2));
  }
}
