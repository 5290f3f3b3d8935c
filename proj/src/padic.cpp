#include "prpoint/padic.hpp"

#include <algorithm>
#include <sstream>

#include "prpoint/errors.hpp"

namespace prpoint {

namespace {

long ceil_div2(long x) { return x >= 0 ? (x + 1) / 2 : -((-x) / 2); }

Integer ppow(unsigned long p, long k) { return k <= 0 ? Integer(1) : ipow(Integer(p), static_cast<unsigned long>(k)); }

void reduce_mod(Integer& z, unsigned long p, long k) {
  if (k <= 0) {
    z = 0;
    return;
  }
  Integer m = ppow(p, k);
  mpz_fdiv_r(z.get_mpz_t(), z.get_mpz_t(), m.get_mpz_t());
}

Integer inverse_mod(const Integer& z, const Integer& m) {
  Integer r;
  if (mpz_invert(r.get_mpz_t(), z.get_mpz_t(), m.get_mpz_t()) == 0) throw NotAUnit("no inverse modulo " + m.get_str());
  return r;
}

long clamp_precision(long prec2) { return std::min(prec2, kExactPrecision); }

}  // namespace

std::vector<long> base_p_digits(Integer z, unsigned long p) {
  std::vector<long> out;
  if (z < 0) throw std::invalid_argument("negative digit source");
  while (z != 0) {
    out.push_back(static_cast<long>(mpz_fdiv_q_ui(z.get_mpz_t(), z.get_mpz_t(), p)));
  }
  return out;
}

// ---------------------------------------------------------- construction

PadicElement PadicElement::from_parts(unsigned long p, int e, long shift, Integer a, Integer b, long prec2) {
  if (p < 3 || (e != 1 && e != 2)) throw std::invalid_argument("unsupported prime or ramification");
  PadicElement x;
  x.p_ = p;
  x.e_ = e;
  x.shift_ = shift;
  x.a_ = std::move(a);
  x.b_ = e == 2 ? std::move(b) : Integer(0);
  x.prec2_ = clamp_precision(e == 1 && prec2 < kExactPrecision ? 2 * (prec2 / 2) : prec2);
  x.normalize();
  return x;
}

PadicElement PadicElement::exact(unsigned long p, const Integer& v, int e) {
  return from_parts(p, e, 0, v, 0, kExactPrecision);
}

PadicElement PadicElement::pi(unsigned long p) { return from_parts(p, 2, 0, 0, 1, kExactPrecision); }

PadicElement PadicElement::zero(unsigned long p, long N, int e) { return from_parts(p, e, 0, 0, 0, 2 * N); }

PadicElement PadicElement::from_rat(unsigned long p, const Rat& x, long N, int e) {
  if (x == 0) return zero(p, N, e);
  long v = prpoint::valuation(x, p);
  if (v >= N) return zero(p, N, e);
  Integer num = x.get_num(), den = x.get_den();
  Integer pp(p);
  mpz_remove(num.get_mpz_t(), num.get_mpz_t(), pp.get_mpz_t());
  mpz_remove(den.get_mpz_t(), den.get_mpz_t(), pp.get_mpz_t());
  Integer m = ppow(p, N - v);
  Integer a = num * inverse_mod(den, m);
  return from_parts(p, e, v, a, 0, 2 * N);
}

void PadicElement::normalize() {
  if (!is_exact()) {
    reduce_mod(a_, p_, ceil_div2(prec2_) - shift_);
    reduce_mod(b_, p_, ceil_div2(prec2_ - 1) - shift_);
  }
  if (a_ == 0 && b_ == 0) {
    shift_ = 0;
    return;
  }
  long va = prpoint::valuation(a_, p_), vb = prpoint::valuation(b_, p_);
  long g = std::min(va, vb);
  if (g > 0) {
    Integer d = ppow(p_, g);
    mpz_divexact(a_.get_mpz_t(), a_.get_mpz_t(), d.get_mpz_t());
    mpz_divexact(b_.get_mpz_t(), b_.get_mpz_t(), d.get_mpz_t());
    shift_ += g;
  }
}

void PadicElement::check_compatible(const PadicElement& o) const {
  if (p_ != o.p_) throw IncompatibleOperands("different primes " + std::to_string(p_) + " and " + std::to_string(o.p_));
}

// ---------------------------------------------------------------- queries

long PadicElement::valuation2() const {
  if (is_zero()) return kInfiniteValuation;
  long va = a_ == 0 ? kInfiniteValuation : 2 * (shift_ + prpoint::valuation(a_, p_));
  long vb = b_ == 0 ? kInfiniteValuation : 2 * (shift_ + prpoint::valuation(b_, p_)) + 1;
  return std::min(va, vb);
}

Rat PadicElement::valuation() const {
  if (is_zero()) return Rat(kInfiniteValuation);
  return make_rat(valuation2(), 2);
}

Rat PadicElement::precision() const { return make_rat(prec2_, 2); }

PadicElement PadicElement::even_part() const {
  PadicElement r = *this;
  r.b_ = 0;
  if (!r.is_exact() && e_ == 2) r.prec2_ = 2 * ceil_div2(prec2_);
  r.normalize();
  return r;
}

PadicElement PadicElement::odd_part() const {
  long N = is_exact() ? kExactPrecision : ceil_div2(prec2_ - 1);
  return from_parts(p_, 1, shift_, b_, 0, is_exact() ? kExactPrecision : 2 * N);
}

// ------------------------------------------------------------- arithmetic

PadicElement PadicElement::operator+(const PadicElement& o) const {
  check_compatible(o);
  long s = std::min(shift_, o.shift_);
  if (is_zero()) s = o.shift_;
  if (o.is_zero()) s = shift_;
  Integer ua = ppow(p_, shift_ - s), ub = ppow(p_, o.shift_ - s);
  Integer a = (is_zero() ? Integer(0) : a_ * ua) + (o.is_zero() ? Integer(0) : o.a_ * ub);
  Integer b = (is_zero() ? Integer(0) : b_ * ua) + (o.is_zero() ? Integer(0) : o.b_ * ub);
  return from_parts(p_, std::max(e_, o.e_), s, a, b, std::min(prec2_, o.prec2_));
}

PadicElement PadicElement::operator-() const {
  PadicElement r = *this;
  r.a_ = -r.a_;
  r.b_ = -r.b_;
  r.normalize();
  return r;
}

PadicElement PadicElement::operator-(const PadicElement& o) const { return *this + (-o); }

PadicElement PadicElement::operator*(const PadicElement& o) const {
  check_compatible(o);
  long vx = is_zero() ? prec2_ : valuation2();
  long vy = o.is_zero() ? o.prec2_ : o.valuation2();
  long prec = std::min(is_exact() ? kExactPrecision : vy + prec2_, o.is_exact() ? kExactPrecision : vx + o.prec2_);
  if (is_exact() && o.is_exact()) prec = kExactPrecision;
  Integer pp(p_);
  Integer a = a_ * o.a_ - pp * b_ * o.b_;
  Integer b = a_ * o.b_ + b_ * o.a_;
  return from_parts(p_, std::max(e_, o.e_), shift_ + o.shift_, a, b, prec);
}

PadicElement PadicElement::operator*(const Rat& q) const {
  if (q == 0) {
    if (is_exact()) return exact(p_, 0, e_);
    return from_parts(p_, e_, 0, 0, 0, prec2_);
  }
  long v = prpoint::valuation(q, p_);
  Integer num = q.get_num(), den = q.get_den();
  Integer pp(p_);
  mpz_remove(num.get_mpz_t(), num.get_mpz_t(), pp.get_mpz_t());
  mpz_remove(den.get_mpz_t(), den.get_mpz_t(), pp.get_mpz_t());
  if (den == 1) {
    return from_parts(p_, e_, shift_ + v, a_ * num, b_ * num, is_exact() ? kExactPrecision : prec2_ + 2 * v);
  }
  if (is_exact()) throw IncompatibleOperands("exact value times a rational with non-p denominator");
  long prec = prec2_ + 2 * v;
  Integer m = ppow(p_, ceil_div2(prec) - (shift_ + v) + 1);
  Integer w = num * inverse_mod(den, m);
  return from_parts(p_, e_, shift_ + v, a_ * w, b_ * w, prec);
}

PadicElement PadicElement::inverse() const {
  if (is_zero()) throw DivisionByIndistinguishableZero("divisor is O(" + to_string() + ")");
  Integer pp(p_);
  Integer n = a_ * a_ + pp * b_ * b_;
  long k = prpoint::valuation(n, p_);
  Integer np = n;
  mpz_remove(np.get_mpz_t(), np.get_mpz_t(), pp.get_mpz_t());
  long s = -shift_ - k;
  if (is_exact()) {
    if (np != 1 && np != -1) throw IncompatibleOperands("inverse of an exact value outside Z[1/p][pi]; lower its precision first");
    return from_parts(p_, e_, s, a_ * np, -b_ * np, kExactPrecision);
  }
  long prec = prec2_ - 2 * valuation2();
  Integer m = ppow(p_, ceil_div2(prec) - s + 1);
  Integer w = inverse_mod(np, m);
  return from_parts(p_, e_, s, a_ * w, -b_ * w, prec);
}

PadicElement PadicElement::operator/(const PadicElement& o) const { return *this * o.inverse(); }

PadicElement PadicElement::pow(long n) const {
  if (n < 0) return inverse().pow(-n);
  PadicElement result = exact(p_, 1, e_);
  PadicElement base = *this;
  while (n > 0) {
    if (n & 1) result = result * base;
    n >>= 1;
    if (n) base = base * base;
  }
  return result;
}

PadicElement PadicElement::with_precision2(long prec2) const {
  PadicElement r = *this;
  if (e_ == 1) prec2 = 2 * (prec2 >= 0 ? prec2 / 2 : -((-prec2 + 1) / 2));
  r.prec2_ = std::min(prec2_, prec2);
  r.normalize();
  return r;
}

PadicElement PadicElement::as_ramified() const {
  PadicElement r = *this;
  r.e_ = 2;
  return r;
}

PadicElement PadicElement::as_unramified() const {
  if (b_ != 0) throw IncompatibleOperands("value has a nonzero pi-part: " + to_string());
  PadicElement r = *this;
  r.e_ = 1;
  if (!r.is_exact()) r.prec2_ = 2 * ceil_div2(prec2_);
  r.normalize();
  return r;
}

PadicElement PadicElement::galois_conjugate() const {
  PadicElement r = *this;
  r.b_ = -r.b_;
  r.normalize();
  return r;
}

// ------------------------------------------------------ transcendental

std::pair<PadicElement, PadicElement> PadicElement::sqrt() const {
  if (p_ == 2) throw IncompatibleOperands("p = 2 is not supported");
  if (is_zero()) {
    PadicElement z = from_parts(p_, e_, 0, 0, 0, prec2_ / 2);
    return {z, z};
  }
  long v2 = valuation2();
  long k;  // root has valuation k half units
  PadicElement u;
  if (e_ == 1) {
    if (v2 % 4 != 0) throw OddValuation("valuation " + prpoint::to_string(valuation()) + " is odd");
    k = v2 / 2;
    u = from_parts(p_, 1, 0, a_, 0, prec2_ - v2);
  } else {
    if (v2 % 2 != 0) throw OddValuation("valuation " + prpoint::to_string(valuation()) + " is not in 2v(pi)Z");
    k = v2 / 2;
    // x = pi^(2k) u = (-p)^k u with shift_ = k after normalization.
    Integer sign = (k % 2 == 0) ? 1 : -1;
    u = from_parts(p_, 2, 0, a_ * sign, b_ * sign, prec2_ - v2);
  }
  Integer res = u.a_ % Integer(p_);
  if (res < 0) res += p_;
  if (mpz_legendre(res.get_mpz_t(), Integer(p_).get_mpz_t()) != 1)
    throw NonResidue("unit part " + res.get_str() + " is not a square mod " + std::to_string(p_));
  unsigned long r0 = 1;
  unsigned long rr = res.get_ui();
  while ((r0 * r0) % p_ != rr) ++r0;

  PadicElement r = from_parts(p_, e_, 0, Integer(r0), 0, u.prec2_);
  const Rat half(1, 2);
  for (int iter = 0; iter < 80; ++iter) {
    PadicElement next = (r + u / r) * half;
    bool done = (next - r).is_zero();
    r = next;
    if (done) break;
  }
  PadicElement scale = e_ == 1 ? exact(p_, ppow(p_, k / 2)) : pi(p_).pow(k);
  PadicElement root = r * scale;
  return {root, -root};
}

PadicElement PadicElement::iwasawa_log() const {
  if (e_ != 1) throw IncompatibleOperands("logarithm is implemented on Q_p only");
  if (is_zero() || valuation2() != 0) throw NotAUnit(to_string() + " is not a unit");
  if (is_exact()) throw IncompatibleOperands("logarithm needs a finite working precision");
  const long N = prec2_ / 2;
  long L = 0;
  {
    long kmax = 2 * N + 8;
    for (long t = kmax; t >= static_cast<long>(p_); t /= static_cast<long>(p_)) ++L;
  }
  const long W = N + L + 2;
  const Integer M = ppow(p_, W);
  Integer w;
  mpz_powm_ui(w.get_mpz_t(), a_.get_mpz_t(), p_ - 1, M.get_mpz_t());
  Integer z = w - 1;  // v(z) >= 1
  Integer sum = 0, zk = 1;
  const Integer Mn = ppow(p_, N + 1);
  for (long k = 1;; ++k) {
    zk = zk * z % M;
    long vk = prpoint::valuation(Integer(k), p_);
    long lk = 0;
    for (long t = k; t >= static_cast<long>(p_); t /= static_cast<long>(p_)) ++lk;
    if (k - lk > N + 1) break;
    Integer kk(k);
    Integer t = zk;
    Integer pv = ppow(p_, vk);
    mpz_divexact(t.get_mpz_t(), t.get_mpz_t(), pv.get_mpz_t());
    mpz_divexact(kk.get_mpz_t(), kk.get_mpz_t(), pv.get_mpz_t());
    t = t * inverse_mod(kk, Mn) % Mn;
    if (k % 2 == 0)
      sum -= t;
    else
      sum += t;
  }
  sum = sum * inverse_mod(Integer(p_ - 1), Mn);
  return from_parts(p_, 1, 0, sum, 0, 2 * N);
}

PadicElement PadicElement::teichmuller() const {
  if (e_ != 1) throw IncompatibleOperands("Teichmuller lift is implemented on Q_p only");
  if (is_zero() || valuation2() != 0) throw NotAUnit(to_string() + " is not a unit");
  if (is_exact()) throw IncompatibleOperands("Teichmuller lift needs a finite precision");
  const long N = prec2_ / 2;
  const Integer M = ppow(p_, N);
  Integer t = a_ % Integer(p_);
  for (long i = 0; i < N; ++i) mpz_powm_ui(t.get_mpz_t(), t.get_mpz_t(), p_, M.get_mpz_t());
  return from_parts(p_, 1, 0, t, 0, 2 * N);
}

Integer PadicElement::residue(long k) const {
  if (e_ != 1 && b_ != 0) throw IncompatibleOperands("residue of a value with nonzero pi-part");
  if (!is_exact() && 2 * k > prec2_) throw IncompatibleOperands("residue beyond precision");
  if (is_zero()) return 0;
  if (shift_ < 0) throw NotAUnit("negative valuation");
  Integer m = ppow(p_, k);
  Integer r = a_ * ppow(p_, shift_);
  mpz_fdiv_r(r.get_mpz_t(), r.get_mpz_t(), m.get_mpz_t());
  return r;
}

std::string PadicElement::to_string() const {
  std::ostringstream os;
  if (is_zero()) {
    os << "0";
  } else {
    os << "(" << a_.get_str();
    if (e_ == 2 && b_ != 0) os << " + " << b_.get_str() << "*pi";
    os << ")";
    if (shift_ != 0) os << "*" << p_ << "^" << shift_;
  }
  if (!is_exact()) os << " + O(" << (e_ == 2 ? "pi" : std::to_string(p_)) << "^" << (e_ == 2 ? prec2_ : prec2_ / 2) << ")";
  return os.str();
}

}  // namespace prpoint
