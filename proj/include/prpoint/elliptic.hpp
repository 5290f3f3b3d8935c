#pragma once

// Elliptic curves over Q in long Weierstrass form
//   y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6.

#include <array>
#include <string>
#include <vector>

#include "prpoint/exact.hpp"
#include "prpoint/padic.hpp"

namespace prpoint {

struct CurveData {
  Integer a1, a2, a3, a4, a6;
  Integer conductor;
  Integer b2, b4, b6, b8, c4, c6, disc;

  // Computes the derived invariants and checks Delta != 0 and that every
  // prime dividing the conductor divides Delta. Throws InvalidCurve.
  static CurveData make(const std::array<Integer, 5>& a, const Integer& conductor);

  std::array<Integer, 5> coefficients() const { return {a1, a2, a3, a4, a6}; }
  std::string label() const;  // "[a1,a2,a3,a4,a6]"
};

struct CurvePoint {
  bool infinity = true;
  Rat x, y;

  static CurvePoint at_infinity() { return {}; }
  static CurvePoint affine(Rat x, Rat y) { return {false, std::move(x), std::move(y)}; }
  bool operator==(const CurvePoint& o) const {
    return infinity == o.infinity && (infinity || (x == o.x && y == o.y));
  }
};

bool on_curve(const CurveData& E, const CurvePoint& P);
// Throws PointNotOnCurve.
CurvePoint make_point(const CurveData& E, const Rat& x, const Rat& y);

CurvePoint negate(const CurveData& E, const CurvePoint& P);
CurvePoint add(const CurveData& E, const CurvePoint& P, const CurvePoint& Q);
CurvePoint scalar_mul(const CurveData& E, long n, const CurvePoint& P);

// Order <= 12 (Mazur).
bool is_torsion(const CurveData& E, const CurvePoint& P);

// q - #{affine points of the reduction mod q}; for good q this is a_q.
long trace_of_frobenius(const CurveData& E, unsigned long q);
// Good primes only; throws BadReductionPrime for q | N.
long ap(const CurveData& E, unsigned long p);

enum class ReductionType { GoodOrdinary, GoodSupersingular, Multiplicative, Additive };
ReductionType reduction_type(const CurveData& E, unsigned long p);
std::string to_string(ReductionType t);

// Supersingular primes p >= 5 (a_p = 0, p good) in [lo, hi].
std::vector<unsigned long> supersingular_primes(const CurveData& E, unsigned long lo, unsigned long hi);

bool is_prime(unsigned long n);
std::vector<unsigned long> prime_factors(Integer n);

// ------------------------------------------------------------ formal group

// Truncated power series sum_k c[k] t^k over Q.
using RatSeries = std::vector<Rat>;

struct FormalLog {
  long K = 0;          // truncation order
  RatSeries coeffs;    // coeffs[k] for k = 0..K, coeffs[0] = 0, coeffs[1] = 1
};

// Invariant differential omega = dx/(2y + a1 x + a3) as a series in t = -x/y,
// through t^(K-1).
RatSeries invariant_differential(const CurveData& E, long K);
// The same differential from dy/(3x^2 + 2a2 x + a4 - a1 y); independent route.
RatSeries invariant_differential_alt(const CurveData& E, long K);
// w(t) = -1/y as a series in t through t^K.
RatSeries formal_w(const CurveData& E, long K);

FormalLog formal_log(const CurveData& E, long K);
// Compositional inverse of the logarithm through t^K.
RatSeries formal_exp(const FormalLog& log);

RatSeries series_mul(const RatSeries& a, const RatSeries& b, long K);
RatSeries series_compose(const RatSeries& f, const RatSeries& g, long K);  // f(g), g(0) = 0

// log_E(P) in Q_p with absolute precision N (p good, p >= 3). The point is
// first multiplied by m = #E(F_p) * extra_multiplier. Throws TorsionPoint.
PadicElement padic_log_point(const CurveData& E, const CurvePoint& P, unsigned long p, long N,
                             long extra_multiplier = 1);

}  // namespace prpoint
