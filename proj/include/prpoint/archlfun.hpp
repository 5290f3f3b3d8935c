#pragma once

// Archimedean data: Dirichlet coefficients, central L-values, the real
// period, canonical heights and the Gross-Zagier ratio.

#include <vector>

#include "prpoint/elliptic.hpp"
#include "prpoint/exact.hpp"

namespace prpoint {

using Real = long double;

struct AnList {
  long bound = 0;
  std::vector<long> a;  // a[0] unused, a[1] = 1
  long operator[](long n) const { return a[static_cast<std::size_t>(n)]; }
};

AnList anlist(const CurveData& E, long B);

// Smallest B with the geometric tail bound below tol.
long default_terms(const Integer& N, Real tol = 1e-18L);

struct SeriesValue {
  Real value = 0;
  Real error_bound = 0;
};

Real exponential_integral_e1(Real x);

// L'(E,1) for root number w = -1. Throws InsufficientTerms when the tail
// bound of the first B terms exceeds tol.
SeriesValue l_derivative(const CurveData& E, long B, int w = -1, Real tol = 1e-12L);
// L(E,1) = sum a_n/n (exp(-2 pi n/(A sqrt N)) + w exp(-2 pi n A/sqrt N)).
// The value is independent of A > 0 only when w is the true root number.
SeriesValue l_value(const CurveData& E, long B, int w = 1, Real A = 1, Real tol = 1e-12L);

struct RealPeriod {
  Real omega = 0;            // Omega^+ > 0
  bool two_components = false;
  std::vector<Real> roots;   // real roots of 4x^3 + b2 x^2 + 2 b4 x + b6, decreasing
};

RealPeriod real_period(const CurveData& E);

Real agm(Real a, Real b);

struct HeightValue {
  Real value = 0;            // BSD normalization (twice Silverman's)
  Real error_bound = 0;
  long multiplier = 1;       // m with mP nonsingular at every bad prime
};

// Throws CoordinateOverflow when the multiple needed exceeds max_bits.
HeightValue neron_tate_height(const CurveData& E, const CurvePoint& P, long iterations = 40,
                              long max_bits = 1L << 20);

struct GZConstant {
  Rat value;
  Real float_residual = 0;
  Real ratio = 0;            // (L'/Omega)/h as a float
  Real l_derivative = 0;
  Real omega = 0;
  Real height = 0;
  // The reconstructed denominator has a square factor that torsion cannot
  // explain: the supplied point is likely a proper multiple.
  bool suspect_multiple = false;
};

struct GZOptions {
  long terms = 0;            // 0: default_terms(N)
  Real tolerance = 1e-6L;
  long max_denominator = 100;
};

// Throws ReconstructionFailed.
GZConstant gross_zagier_constant(const CurveData& E, const CurvePoint& gen, const GZOptions& opts = {});

// gcd of #E(F_q) over small good odd primes; a multiple of #E(Q)_tors.
long torsion_order_bound(const CurveData& E);

}  // namespace prpoint
