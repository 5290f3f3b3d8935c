#pragma once

// Capped absolute precision arithmetic in Q_p (e = 1) and in Q_p(pi) with
// pi^2 = -p (e = 2).
//
// A value is stored as p^shift * (a + b*pi) with a, b integers. Valuations
// and precisions are kept internally in units of v(pi) = 1/2 ("half units")
// regardless of e; an e = 1 value simply has b = 0 and even precision.

#include <string>
#include <utility>

#include "prpoint/exact.hpp"

namespace prpoint {

inline constexpr long kExactPrecision = 1L << 40;

class PadicElement {
 public:
  PadicElement() = default;

  // Exact constructors; the value must lie in Z[1/p][pi].
  static PadicElement exact(unsigned long p, const Integer& v, int e = 1);
  static PadicElement pi(unsigned long p);
  // x + O(p^N) for any rational x with v_p(x) < N, else O(p^N).
  static PadicElement from_rat(unsigned long p, const Rat& x, long N, int e = 1);
  static PadicElement zero(unsigned long p, long N, int e = 1);
  // p^shift (a + b pi) + O(pi^prec2), all in raw form.
  static PadicElement from_parts(unsigned long p, int e, long shift, Integer a, Integer b, long prec2);

  unsigned long prime() const { return p_; }
  int ramification() const { return e_; }
  bool is_exact() const { return prec2_ >= kExactPrecision; }
  // Zero at its precision (v = +inf).
  bool is_zero() const { return a_ == 0 && b_ == 0; }

  // Valuation and absolute precision in half units (v(pi) = 1).
  long valuation2() const;
  long precision2() const { return prec2_; }
  // The same as rationals in units of v(p) = 1.
  Rat valuation() const;
  Rat precision() const;

  long shift() const { return shift_; }
  const Integer& a() const { return a_; }
  const Integer& b() const { return b_; }

  // Q_p coordinates: x = even + odd * pi.
  PadicElement even_part() const;
  PadicElement odd_part() const;

  PadicElement operator+(const PadicElement& o) const;
  PadicElement operator-(const PadicElement& o) const;
  PadicElement operator-() const;
  PadicElement operator*(const PadicElement& o) const;
  PadicElement operator/(const PadicElement& o) const;
  PadicElement inverse() const;
  PadicElement pow(long n) const;
  PadicElement operator*(const Rat& q) const;

  // Lower the absolute precision (half units); never raises it.
  PadicElement with_precision2(long prec2) const;
  PadicElement with_precision(long N) const { return with_precision2(2 * N); }
  // View an e = 1 value inside Q_p(pi).
  PadicElement as_ramified() const;
  // Drop to Q_p; throws IncompatibleOperands if the pi-part is nonzero.
  PadicElement as_unramified() const;

  PadicElement galois_conjugate() const;

  // Both square roots, r and -r. Throws OddValuation or NonResidue.
  std::pair<PadicElement, PadicElement> sqrt() const;

  // Iwasawa logarithm of a unit of Q_p. Throws NotAUnit.
  PadicElement iwasawa_log() const;

  // Teichmuller lift of a unit of Q_p.
  PadicElement teichmuller() const;

  // For an e = 1 value of nonnegative valuation: its residue mod p^k,
  // k <= precision, as an integer in [0, p^k).
  Integer residue(long k) const;

  // x - y indistinguishable from zero.
  bool equals(const PadicElement& o) const { return (*this - o).is_zero(); }

  std::string to_string() const;

 private:
  void normalize();
  void check_compatible(const PadicElement& o) const;

  unsigned long p_ = 0;
  int e_ = 1;
  long shift_ = 0;
  Integer a_ = 0;
  Integer b_ = 0;
  long prec2_ = kExactPrecision;
};

inline PadicElement operator*(const Rat& q, const PadicElement& x) { return x * q; }

// Base-p digits of a nonnegative integer, least significant first.
std::vector<long> base_p_digits(Integer z, unsigned long p);

}  // namespace prpoint
