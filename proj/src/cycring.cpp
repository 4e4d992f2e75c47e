#include "qtop/cycring.hpp"

#include <map>
#include <mutex>
#include <sstream>

namespace qtop {

// ---------------------------------------------------------------- Valuation

long Valuation::value() const {
  if (!v_) throw InvalidArgument("valuation is infinite");
  return *v_;
}

std::strong_ordering operator<=>(const Valuation& a, const Valuation& b) {
  if (a.is_infinite() || b.is_infinite()) {
    return static_cast<int>(a.is_infinite()) <=> static_cast<int>(b.is_infinite());
  }
  return *a.v_ <=> *b.v_;
}

Valuation operator+(const Valuation& a, const Valuation& b) {
  if (a.is_infinite() || b.is_infinite()) return Valuation::infinity();
  return Valuation(*a.v_ + *b.v_);
}

Valuation operator-(const Valuation& a, long k) {
  if (a.is_infinite()) return a;
  return Valuation(*a.v_ - k);
}

std::string Valuation::to_string() const { return v_ ? std::to_string(*v_) : "inf"; }

std::ostream& operator<<(std::ostream& os, const Valuation& v) { return os << v.to_string(); }

Valuation min(const Valuation& a, const Valuation& b) { return b < a ? b : a; }

// ---------------------------------------------------------------- kernels

namespace {

// buf[(i+j) mod p] += sign * a_i * b_j
void cyclic_addmul(std::vector<Integer>& buf, std::span<const Integer> a,
                   std::span<const Integer> b, bool negate) {
  const size_t p = buf.size();
  for (size_t i = 0; i < a.size(); ++i) {
    if (sgn(a[i]) == 0) continue;
    mpz_srcptr ai = a[i].get_mpz_t();
    size_t k = i;
    for (size_t j = 0; j < b.size(); ++j, ++k) {
      if (k == p) k = 0;
      if (sgn(b[j]) == 0) continue;
      if (negate) {
        mpz_submul(buf[k].get_mpz_t(), ai, b[j].get_mpz_t());
      } else {
        mpz_addmul(buf[k].get_mpz_t(), ai, b[j].get_mpz_t());
      }
    }
  }
}

// Length-p cyclic buffer to canonical length-(p-1) form.
std::vector<Integer> reduce_cyclic(const std::vector<Integer>& buf) {
  const size_t n = buf.size() - 1;
  std::vector<Integer> out(n);
  const Integer& top = buf[n];
  for (size_t k = 0; k < n; ++k) out[k] = buf[k] - top;
  return out;
}

bool all_zero(std::span<const Integer> v) {
  for (const auto& c : v)
    if (sgn(c) != 0) return false;
  return true;
}

Integer coefficient_sum(std::span<const Integer> v) {
  Integer s = 0;
  for (const auto& c : v) s += c;
  return s;
}

long mod(long a, long m) {
  long r = a % m;
  return r < 0 ? r + m : r;
}

// Exact quotient of the polynomial v (length p-1, canonical) by 1 - q.
std::vector<Integer> div_h_part(std::span<const Integer> v, int p) {
  Integer s = coefficient_sum(v);
  if (s % p != 0) throw NotDivisible("element is not divisible by h");
  Integer m = s / p;
  std::vector<Integer> out(p - 1);
  Integer run = 0;
  for (int k = 0; k < p - 1; ++k) {
    run += v[k] - m;
    out[k] = run;
  }
  // The q^{p-1} coefficient of x - m*Phi_p is -m, and run - m must vanish.
  if (run != m) throw InvariantViolation("synthetic division left a remainder");
  return out;
}

}  // namespace

// ---------------------------------------------------------------- CycNum

CycNum::CycNum(const PrimeContext& ctx) : ctx_(&ctx), re_(ctx.length()) {}

CycNum::CycNum(const PrimeContext& ctx, const Integer& constant)
    : ctx_(&ctx), re_(ctx.length()) {
  re_[0] = constant;
}

CycNum::CycNum(const PrimeContext& ctx, long constant) : CycNum(ctx, Integer(constant)) {}

CycNum CycNum::monomial(const PrimeContext& ctx, long k, const Integer& c) {
  const int p = ctx.p();
  std::vector<Integer> buf(p);
  buf[mod(k, p)] = c;
  return CycNum(&ctx, reduce_cyclic(buf), {});
}

CycNum CycNum::i_monomial(const PrimeContext& ctx, long k, const Integer& c) {
  if (!ctx.needs_i()) throw InvalidArgument("i is not an element of O for p = 3 mod 4");
  CycNum r = monomial(ctx, k, c);
  CycNum out(ctx);
  out.im_ = std::move(r.re_);
  out.normalize_im();
  return out;
}

CycNum CycNum::from_coefficients(const PrimeContext& ctx, std::vector<Integer> re,
                                 std::vector<Integer> im) {
  const int p = ctx.p();
  auto fold = [p](const std::vector<Integer>& v) {
    std::vector<Integer> buf(p);
    for (size_t k = 0; k < v.size(); ++k) buf[k % p] += v[k];
    return reduce_cyclic(buf);
  };
  std::vector<Integer> r = fold(re);
  std::vector<Integer> i;
  if (!im.empty()) {
    if (!ctx.needs_i() && !all_zero(im)) {
      throw InvalidArgument("i-part given for p = 3 mod 4");
    }
    i = fold(im);
  }
  CycNum out(&ctx, std::move(r), std::move(i));
  out.normalize_im();
  return out;
}

std::vector<Integer> CycNum::im() const {
  if (im_.empty()) return std::vector<Integer>(ctx_->length());
  return im_;
}

bool CycNum::is_zero() const noexcept { return im_.empty() && all_zero(re_); }

bool CycNum::is_one() const noexcept {
  if (!im_.empty() || re_[0] != 1) return false;
  return all_zero(std::span<const Integer>(re_).subspan(1));
}

Integer CycNum::re_at_one() const { return coefficient_sum(re_); }
Integer CycNum::im_at_one() const { return im_.empty() ? Integer(0) : coefficient_sum(im_); }

void CycNum::check_same(const CycNum& o) const {
  if (ctx_ != o.ctx_) throw ContextMismatch();
}

void CycNum::normalize_im() {
  if (!im_.empty() && all_zero(im_)) im_.clear();
}

CycNum& CycNum::operator+=(const CycNum& o) {
  check_same(o);
  for (size_t k = 0; k < re_.size(); ++k) re_[k] += o.re_[k];
  if (!o.im_.empty()) {
    if (im_.empty()) {
      im_ = o.im_;
    } else {
      for (size_t k = 0; k < im_.size(); ++k) im_[k] += o.im_[k];
      normalize_im();
    }
  }
  return *this;
}

CycNum& CycNum::operator-=(const CycNum& o) {
  check_same(o);
  for (size_t k = 0; k < re_.size(); ++k) re_[k] -= o.re_[k];
  if (!o.im_.empty()) {
    if (im_.empty()) im_.assign(re_.size(), Integer(0));
    for (size_t k = 0; k < im_.size(); ++k) im_[k] -= o.im_[k];
    normalize_im();
  }
  return *this;
}

CycNum operator*(const CycNum& a, const CycNum& b) {
  a.check_same(b);
  const int p = a.ctx_->p();
  std::vector<Integer> re(p);
  cyclic_addmul(re, a.re_, b.re_, false);
  std::vector<Integer> im;
  if (!a.im_.empty() && !b.im_.empty()) cyclic_addmul(re, a.im_, b.im_, true);
  if (!a.im_.empty() || !b.im_.empty()) {
    im.assign(p, Integer(0));
    if (!b.im_.empty()) cyclic_addmul(im, a.re_, b.im_, false);
    if (!a.im_.empty()) cyclic_addmul(im, a.im_, b.re_, false);
    im = reduce_cyclic(im);
  }
  CycNum out(a.ctx_, reduce_cyclic(re), std::move(im));
  out.normalize_im();
  return out;
}

CycNum& CycNum::operator*=(const CycNum& o) { return *this = *this * o; }

CycNum& CycNum::operator*=(const Integer& c) {
  if (c == 0) {
    for (auto& x : re_) x = 0;
    im_.clear();
    return *this;
  }
  for (auto& x : re_) x *= c;
  for (auto& x : im_) x *= c;
  return *this;
}

CycNum CycNum::operator-() const {
  CycNum out = *this;
  for (auto& x : out.re_) x = -x;
  for (auto& x : out.im_) x = -x;
  return out;
}

bool operator==(const CycNum& a, const CycNum& b) {
  a.check_same(b);
  return a.re_ == b.re_ && a.im_ == b.im_;
}

CycNum CycNum::pow(long e) const {
  if (e < 0) throw InvalidArgument("negative exponent in CycNum::pow");
  CycNum result(*ctx_, 1);
  CycNum base = *this;
  while (e > 0) {
    if (e & 1) result *= base;
    e >>= 1;
    if (e) base *= base;
  }
  return result;
}

CycNum CycNum::galois(long k, bool conjugate_i) const {
  const int p = ctx_->p();
  const long kk = mod(k, p);
  if (kk == 0) throw InvalidArgument("galois exponent divisible by p");
  auto permute = [&](const std::vector<Integer>& v) {
    std::vector<Integer> buf(p);
    for (int j = 0; j < p - 1; ++j) buf[(j * kk) % p] = v[j];
    return reduce_cyclic(buf);
  };
  std::vector<Integer> re = permute(re_);
  std::vector<Integer> im;
  if (!im_.empty()) {
    im = permute(im_);
    if (conjugate_i)
      for (auto& x : im) x = -x;
  }
  return CycNum(ctx_, std::move(re), std::move(im));
}

CycNum CycNum::shifted(long k) const {
  const int p = ctx_->p();
  const long kk = mod(k, p);
  if (kk == 0) return *this;
  auto rotate = [&](const std::vector<Integer>& v) {
    std::vector<Integer> buf(p);
    for (int j = 0; j < p - 1; ++j) buf[(j + kk) % p] = v[j];
    return reduce_cyclic(buf);
  };
  std::vector<Integer> im;
  if (!im_.empty()) im = rotate(im_);
  return CycNum(ctx_, rotate(re_), std::move(im));
}

namespace {
std::string poly_string(std::span<const Integer> v) {
  std::ostringstream os;
  bool first = true;
  for (size_t k = 0; k < v.size(); ++k) {
    if (sgn(v[k]) == 0) continue;
    Integer c = v[k];
    if (first) {
      if (c < 0) os << "-";
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    Integer a = abs(c);
    if (k == 0) {
      os << a;
    } else {
      if (a != 1) os << a << "*";
      os << "q";
      if (k > 1) os << "^" << k;
    }
    first = false;
  }
  if (first) os << "0";
  return os.str();
}
}  // namespace

std::string CycNum::to_string() const {
  if (im_.empty()) return poly_string(re_);
  return "(" + poly_string(re_) + ") + i*(" + poly_string(im_) + ")";
}

// ---------------------------------------------------------------- accumulator

CycAccumulator::CycAccumulator(const PrimeContext& ctx)
    : ctx_(&ctx), re_(ctx.p()), im_(ctx.p()) {}

void CycAccumulator::add_product(const CycNum& a, const CycNum& b) {
  if (a.ctx_ != ctx_ || b.ctx_ != ctx_) throw ContextMismatch();
  cyclic_addmul(re_, a.re_, b.re_, false);
  if (!a.im_.empty() && !b.im_.empty()) cyclic_addmul(re_, a.im_, b.im_, true);
  if (!b.im_.empty()) {
    cyclic_addmul(im_, a.re_, b.im_, false);
    has_im_ = true;
  }
  if (!a.im_.empty()) {
    cyclic_addmul(im_, a.im_, b.re_, false);
    has_im_ = true;
  }
}

void CycAccumulator::add(const CycNum& a) {
  if (a.ctx_ != ctx_) throw ContextMismatch();
  for (size_t k = 0; k < a.re_.size(); ++k) re_[k] += a.re_[k];
  if (!a.im_.empty()) {
    for (size_t k = 0; k < a.im_.size(); ++k) im_[k] += a.im_[k];
    has_im_ = true;
  }
}

CycNum CycAccumulator::finish() const {
  std::vector<Integer> im;
  if (has_im_) im = reduce_cyclic(im_);
  CycNum out(ctx_, reduce_cyclic(re_), std::move(im));
  out.normalize_im();
  return out;
}

void CycAccumulator::clear() {
  for (auto& x : re_) x = 0;
  for (auto& x : im_) x = 0;
  has_im_ = false;
}

// ---------------------------------------------------------------- context

bool is_prime(long n) {
  if (n < 2) return false;
  for (long k = 2; k * k <= n; ++k)
    if (n % k == 0) return false;
  return true;
}

const PrimeContext& PrimeContext::get(int p) {
  if (p < 5 || !is_prime(p)) {
    throw InvalidArgument("p must be a prime >= 5, got " + std::to_string(p));
  }
  static std::mutex mu;
  static std::map<int, std::unique_ptr<PrimeContext>> registry;
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = registry[p];
  if (!slot) {
    slot.reset(new PrimeContext(p));
    slot->consts_ = std::make_unique<Constants>(*slot);
  }
  return *slot;
}

PrimeContext::PrimeContext(int p) : p_(p) {}

PrimeContext::Constants::Constants(const PrimeContext& ctx)
    : zero(ctx),
      one(ctx, 1),
      q(CycNum::monomial(ctx, 1)),
      h(one - q),
      a(-CycNum::monomial(ctx, (ctx.p() + 1) / 2)) {
  const int p = ctx.p();
  a_powers.reserve(2 * p);
  a_powers.push_back(one);
  for (int k = 1; k < 2 * p; ++k) a_powers.push_back(a_powers.back() * a);

  // i^{(p+1)/2}: a sign when (p+1)/2 is even, a signed i otherwise.
  const int e = ((p + 1) / 2) % 4;
  CycNum ipow = (e == 0)   ? one
                : (e == 2) ? -one
                : (e == 1) ? CycNum::i_monomial(ctx, 0)
                           : -CycNum::i_monomial(ctx, 0);
  CycNum kappa = ipow * a_powers[2 * p - 3];
  kappa_powers.reserve(4 * p);
  kappa_powers.push_back(one);
  for (int k = 1; k < 4 * p; ++k) kappa_powers.push_back(kappa_powers.back() * kappa);
  kappa_order = 4 * p;
  for (int k = 1; k < 4 * p; ++k) {
    if (kappa_powers[k].is_one()) {
      kappa_order = k;
      break;
    }
  }
}

const CycNum& PrimeContext::A_power(long k) const {
  return consts_->a_powers[mod(k, 2L * p_)];
}

const CycNum& PrimeContext::kappa_power(long k) const {
  return consts_->kappa_powers[mod(k, 4L * p_)];
}

// ---------------------------------------------------------------- h-adic

bool divisible_by_h(const CycNum& x) {
  const int p = x.context().p();
  if (x.re_at_one() % p != 0) return false;
  return !x.has_i_part() || x.im_at_one() % p == 0;
}

CycNum div_h_exact(const CycNum& x) {
  const PrimeContext& ctx = x.context();
  std::vector<Integer> re = div_h_part(x.re(), ctx.p());
  std::vector<Integer> im;
  if (x.has_i_part()) im = div_h_part(x.im(), ctx.p());
  return CycNum::from_coefficients(ctx, std::move(re), std::move(im));
}

Valuation h_valuation_plain(const CycNum& x) {
  if (x.is_zero()) return Valuation::infinity();
  long v = 0;
  CycNum y = x;
  while (divisible_by_h(y)) {
    y = div_h_exact(y);
    ++v;
  }
  return v;
}

Valuation h_valuation(const CycNum& x) {
  if (x.is_zero()) return Valuation::infinity();
  if (!x.has_i_part()) return h_valuation_plain(x);
  return h_valuation_plain(strip_phase(x).y);
}

PhaseStrip strip_phase(const CycNum& x) {
  const PrimeContext& ctx = x.context();
  if (!x.has_i_part()) return {0, x};
  for (int k = 1; k < 4 * ctx.p(); ++k) {
    CycNum y = ctx.kappa_power(-k) * x;
    if (!y.has_i_part()) return {k, std::move(y)};
  }
  throw PhaseError("no power of kappa moves the element into Z[q]");
}

std::optional<int> phase_between(const CycNum& x, const CycNum& y) {
  const PrimeContext& ctx = x.context();
  for (int k = 0; k < 4 * ctx.p(); ++k) {
    if (x == ctx.kappa_power(k) * y) return k;
  }
  return std::nullopt;
}

namespace {
// Product of sigma(x) over all automorphisms sigma except the identity.
CycNum conjugate_product(const CycNum& x) {
  const PrimeContext& ctx = x.context();
  const int p = ctx.p();
  CycNum prod = ctx.one();
  const bool with_i = ctx.needs_i();
  for (int k = 1; k < p; ++k) {
    if (k != 1) prod *= x.galois(k, false);
    if (with_i) prod *= x.galois(k, true);
  }
  return prod;
}
}  // namespace

Integer galois_norm(const CycNum& x) {
  CycNum n = x * conjugate_product(x);
  return n.re()[0];
}

bool is_unit(const CycNum& x) {
  if (x.is_zero()) return false;
  Integer n = galois_norm(x);
  return n == 1 || n == -1;
}

CycNum unit_inverse(const CycNum& x) {
  if (x.is_zero()) throw InvalidArgument("zero is not a unit");
  CycNum conj = conjugate_product(x);
  CycNum n = x * conj;
  Integer norm = n.re()[0];
  if (norm == 1) return conj;
  if (norm == -1) return -conj;
  throw InvalidArgument("element is not a unit of O: " + x.to_string());
}

CycNum h_power(const PrimeContext& ctx, int k) {
  if (k < 0) throw InvalidArgument("negative power of h");
  return ctx.h().pow(k);
}

// ---------------------------------------------------------------- LaurentCyc

LaurentCyc::LaurentCyc(const PrimeContext& ctx) : num_(ctx) {}

LaurentCyc::LaurentCyc(CycNum num, int hexp) : num_(std::move(num)), hexp_(hexp) {
  if (hexp < 0) {
    num_ *= h_power(num_.context(), -hexp);
    hexp_ = 0;
  }
  normalize();
}

void LaurentCyc::normalize() {
  if (num_.is_zero()) {
    hexp_ = 0;
    return;
  }
  while (hexp_ > 0 && divisible_by_h(num_)) {
    num_ = div_h_exact(num_);
    --hexp_;
  }
}

const CycNum& LaurentCyc::integral() const {
  if (hexp_ != 0) throw NotDivisible("element has a nontrivial h-denominator");
  return num_;
}

CycNum LaurentCyc::scaled_num(int target) const {
  if (target < hexp_) throw InvalidArgument("scaled_num target below h-denominator");
  if (target == hexp_) return num_;
  return num_ * h_power(context(), target - hexp_);
}

LaurentCyc& LaurentCyc::operator+=(const LaurentCyc& o) {
  if (o.is_zero()) return *this;
  const int m = std::max(hexp_, o.hexp_);
  num_ = scaled_num(m) + o.scaled_num(m);
  hexp_ = m;
  normalize();
  return *this;
}

LaurentCyc& LaurentCyc::operator-=(const LaurentCyc& o) { return *this += -o; }

LaurentCyc& LaurentCyc::operator*=(const LaurentCyc& o) {
  num_ *= o.num_;
  hexp_ += o.hexp_;
  normalize();
  return *this;
}

LaurentCyc LaurentCyc::inverse() const {
  if (num_.is_zero()) throw InvalidArgument("division by zero in O[1/h]");
  CycNum u = num_;
  int v = 0;
  while (divisible_by_h(u)) {
    u = div_h_exact(u);
    ++v;
  }
  CycNum inv = unit_inverse(u);
  if (v >= hexp_) return LaurentCyc(std::move(inv), v - hexp_);
  return LaurentCyc(inv * h_power(context(), hexp_ - v), 0);
}

Valuation LaurentCyc::valuation() const { return h_valuation(num_) - hexp_; }

Valuation h_valuation(const LaurentCyc& x) { return x.valuation(); }

std::string LaurentCyc::to_string() const {
  if (hexp_ == 0) return num_.to_string();
  return "(" + num_.to_string() + ") / h^" + std::to_string(hexp_);
}

}  // namespace qtop
