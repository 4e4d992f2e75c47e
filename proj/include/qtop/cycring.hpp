#pragma once
// Exact arithmetic in O = Z[q] (p = 3 mod 4) or Z[q,i] (p = 1 mod 4) modulo
// the p-th cyclotomic polynomial, with the h-adic valuation for h = 1 - q.

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "qtop/errors.hpp"

namespace qtop {

using Integer = mpz_class;

class PrimeContext;

// Valuation in Z extended by +infinity (the valuation of zero).
class Valuation {
 public:
  Valuation(long v) : v_(v) {}  // NOLINT(google-explicit-constructor)
  static Valuation infinity() { return Valuation(); }

  bool is_infinite() const noexcept { return !v_.has_value(); }
  long value() const;

  friend bool operator==(const Valuation&, const Valuation&) = default;
  friend std::strong_ordering operator<=>(const Valuation& a, const Valuation& b);
  friend Valuation operator+(const Valuation& a, const Valuation& b);
  friend Valuation operator-(const Valuation& a, long k);
  friend std::ostream& operator<<(std::ostream& os, const Valuation& v);
  std::string to_string() const;

 private:
  Valuation() = default;
  std::optional<long> v_;
};

Valuation min(const Valuation& a, const Valuation& b);

// Element of O in canonical form: re and im hold the coefficients of
// 1, q, ..., q^{p-2}; im is empty whenever the element lies in Z[q].
class CycNum {
 public:
  explicit CycNum(const PrimeContext& ctx);                 // zero
  CycNum(const PrimeContext& ctx, const Integer& constant);  // integer constant
  CycNum(const PrimeContext& ctx, long constant);

  // c * q^k for any integer k.
  static CycNum monomial(const PrimeContext& ctx, long k, const Integer& c = 1);
  // c * i * q^k; requires p = 1 mod 4.
  static CycNum i_monomial(const PrimeContext& ctx, long k, const Integer& c = 1);
  // Polynomial in q of any degree; reduced modulo Phi_p.
  static CycNum from_coefficients(const PrimeContext& ctx, std::vector<Integer> re,
                                  std::vector<Integer> im = {});

  const PrimeContext& context() const noexcept { return *ctx_; }
  std::span<const Integer> re() const noexcept { return re_; }
  // Coefficients of the i-part, padded with zeros to length p-1.
  std::vector<Integer> im() const;
  bool has_i_part() const noexcept { return !im_.empty(); }
  bool is_zero() const noexcept;
  bool is_one() const noexcept;

  // Value of the q-polynomial (re, im) at q = 1.
  Integer re_at_one() const;
  Integer im_at_one() const;

  CycNum& operator+=(const CycNum& o);
  CycNum& operator-=(const CycNum& o);
  CycNum& operator*=(const CycNum& o);
  CycNum& operator*=(const Integer& c);
  friend CycNum operator+(CycNum a, const CycNum& b) { return a += b; }
  friend CycNum operator-(CycNum a, const CycNum& b) { return a -= b; }
  friend CycNum operator*(const CycNum& a, const CycNum& b);
  friend CycNum operator*(CycNum a, const Integer& c) { return a *= c; }
  friend CycNum operator*(const Integer& c, CycNum a) { return a *= c; }
  CycNum operator-() const;
  friend bool operator==(const CycNum& a, const CycNum& b);

  CycNum pow(long e) const;  // e >= 0
  // Multiplication by q^k, a coefficient rotation.
  CycNum shifted(long k) const;
  // Ring automorphism q -> q^k (k prime to p), optionally with i -> -i.
  CycNum galois(long k, bool conjugate_i = false) const;
  // Complex conjugation: q -> q^{-1}, i -> -i.
  CycNum conjugate() const { return galois(-1, true); }

  std::string to_string() const;
  friend std::ostream& operator<<(std::ostream& os, const CycNum& x) {
    return os << x.to_string();
  }

  // Raw accumulation for kernels that sum many products before reducing.
  friend class CycAccumulator;

 private:
  CycNum(const PrimeContext* ctx, std::vector<Integer> re, std::vector<Integer> im)
      : ctx_(ctx), re_(std::move(re)), im_(std::move(im)) {}
  void check_same(const CycNum& o) const;
  void normalize_im();

  const PrimeContext* ctx_;
  std::vector<Integer> re_;
  std::vector<Integer> im_;
};

// Sums of products accumulated in unreduced cyclic buffers of length p.
class CycAccumulator {
 public:
  explicit CycAccumulator(const PrimeContext& ctx);
  void add_product(const CycNum& a, const CycNum& b);
  void add(const CycNum& a);
  CycNum finish() const;
  void clear();

 private:
  const PrimeContext* ctx_;
  std::vector<Integer> re_;
  std::vector<Integer> im_;
  bool has_im_ = false;
};

// Immutable per-prime data: the ring shape and the distinguished constants
// q, h = 1 - q, A = -q^{(p+1)/2} and kappa = i^{(p+1)/2} A^{-3}.
class PrimeContext {
 public:
  static const PrimeContext& get(int p);

  PrimeContext(const PrimeContext&) = delete;
  PrimeContext& operator=(const PrimeContext&) = delete;

  int p() const noexcept { return p_; }
  int d() const noexcept { return (p_ - 1) / 2; }
  bool needs_i() const noexcept { return p_ % 4 == 1; }
  int length() const noexcept { return p_ - 1; }

  const CycNum& zero() const { return consts_->zero; }
  const CycNum& one() const { return consts_->one; }
  const CycNum& q() const { return consts_->q; }
  const CycNum& h() const { return consts_->h; }
  const CycNum& A() const { return consts_->a; }
  // A^k for any integer k (A has order 2p).
  const CycNum& A_power(long k) const;
  // kappa^k for any integer k (kappa has order dividing 4p).
  const CycNum& kappa_power(long k) const;
  const CycNum& kappa() const { return kappa_power(1); }
  int kappa_order() const noexcept { return consts_->kappa_order; }

 private:
  explicit PrimeContext(int p);
  struct Constants {
    explicit Constants(const PrimeContext& ctx);
    CycNum zero, one, q, h, a;
    std::vector<CycNum> a_powers;      // A^0 .. A^{2p-1}
    std::vector<CycNum> kappa_powers;  // kappa^0 .. kappa^{4p-1}
    int kappa_order = 0;
  };
  int p_;
  std::unique_ptr<Constants> consts_;
};

bool is_prime(long n);

// x is divisible by h iff x(1) = 0 mod p, for both parts.
bool divisible_by_h(const CycNum& x);
// y with h*y = x; throws NotDivisible otherwise.
CycNum div_h_exact(const CycNum& x);
// Largest k with x in h^k O+ after phase stripping; +infinity for zero.
Valuation h_valuation(const CycNum& x);
// Valuation for elements already in Z[q]; no phase handling.
Valuation h_valuation_plain(const CycNum& x);

struct PhaseStrip {
  int k;     // exponent in [0, 4p)
  CycNum y;  // kappa^{-k} x, an element of Z[q]
};
// Smallest k in [0, 4p) with kappa^{-k} x in Z[q].
PhaseStrip strip_phase(const CycNum& x);
// Smallest k in [0, 4p) with x = kappa^k y, if any.
std::optional<int> phase_between(const CycNum& x, const CycNum& y);

// Product of all conjugates under q -> q^k (and i -> -i when present).
Integer galois_norm(const CycNum& x);
// Inverse of a unit of O; throws InvalidArgument for non-units.
CycNum unit_inverse(const CycNum& x);
bool is_unit(const CycNum& x);

// Element num / h^hexp of O[1/h], kept normalized: hexp = 0 or h does not
// divide num.
class LaurentCyc {
 public:
  explicit LaurentCyc(const PrimeContext& ctx);  // zero
  explicit LaurentCyc(CycNum num, int hexp = 0);

  const CycNum& num() const noexcept { return num_; }
  int hexp() const noexcept { return hexp_; }
  const PrimeContext& context() const noexcept { return num_.context(); }
  bool is_zero() const noexcept { return num_.is_zero(); }
  bool is_integral() const noexcept { return hexp_ == 0; }
  // The element as a member of O; throws NotDivisible if hexp > 0.
  const CycNum& integral() const;
  // num * h^{target - hexp}, i.e. the element times h^target; target >= hexp.
  CycNum scaled_num(int target) const;

  LaurentCyc& operator+=(const LaurentCyc& o);
  LaurentCyc& operator-=(const LaurentCyc& o);
  LaurentCyc& operator*=(const LaurentCyc& o);
  friend LaurentCyc operator+(LaurentCyc a, const LaurentCyc& b) { return a += b; }
  friend LaurentCyc operator-(LaurentCyc a, const LaurentCyc& b) { return a -= b; }
  friend LaurentCyc operator*(LaurentCyc a, const LaurentCyc& b) { return a *= b; }
  LaurentCyc operator-() const { return LaurentCyc(-num_, hexp_); }
  friend bool operator==(const LaurentCyc& a, const LaurentCyc& b) {
    return a.hexp_ == b.hexp_ && a.num_ == b.num_;
  }

  // Inverse of an element of the form h^k * unit; InvalidArgument otherwise.
  LaurentCyc inverse() const;
  friend LaurentCyc operator/(const LaurentCyc& a, const LaurentCyc& b) {
    return a * b.inverse();
  }
  Valuation valuation() const;

  std::string to_string() const;
  friend std::ostream& operator<<(std::ostream& os, const LaurentCyc& x) {
    return os << x.to_string();
  }

 private:
  void normalize();
  CycNum num_;
  int hexp_ = 0;
};

Valuation h_valuation(const LaurentCyc& x);
CycNum h_power(const PrimeContext& ctx, int k);

}  // namespace qtop
