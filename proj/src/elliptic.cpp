#include "prpoint/elliptic.hpp"

#include <sstream>

#include "prpoint/errors.hpp"

namespace prpoint {

CurveData CurveData::make(const std::array<Integer, 5>& a, const Integer& conductor) {
  CurveData E;
  E.a1 = a[0];
  E.a2 = a[1];
  E.a3 = a[2];
  E.a4 = a[3];
  E.a6 = a[4];
  E.conductor = conductor;
  E.b2 = E.a1 * E.a1 + 4 * E.a2;
  E.b4 = 2 * E.a4 + E.a1 * E.a3;
  E.b6 = E.a3 * E.a3 + 4 * E.a6;
  E.b8 = E.a1 * E.a1 * E.a6 + 4 * E.a2 * E.a6 - E.a1 * E.a3 * E.a4 + E.a2 * E.a3 * E.a3 - E.a4 * E.a4;
  E.c4 = E.b2 * E.b2 - 24 * E.b4;
  E.c6 = -E.b2 * E.b2 * E.b2 + 36 * E.b2 * E.b4 - 216 * E.b6;
  E.disc = -E.b2 * E.b2 * E.b8 - 8 * E.b4 * E.b4 * E.b4 - 27 * E.b6 * E.b6 + 9 * E.b2 * E.b4 * E.b6;
  if (E.disc == 0) throw InvalidCurve("singular model " + E.label());
  if (conductor <= 0) throw InvalidCurve("conductor must be positive");
  for (auto q : prime_factors(conductor))
    if (E.disc % Integer(q) != 0)
      throw InvalidCurve("prime " + std::to_string(q) + " divides N but not the discriminant of " + E.label());
  return E;
}

std::string CurveData::label() const {
  std::ostringstream os;
  os << "[" << a1 << "," << a2 << "," << a3 << "," << a4 << "," << a6 << "]";
  return os.str();
}

// ------------------------------------------------------------- group law

bool on_curve(const CurveData& E, const CurvePoint& P) {
  if (P.infinity) return true;
  const Rat &x = P.x, &y = P.y;
  return y * y + Rat(E.a1) * x * y + Rat(E.a3) * y == x * x * x + Rat(E.a2) * x * x + Rat(E.a4) * x + Rat(E.a6);
}

CurvePoint make_point(const CurveData& E, const Rat& x, const Rat& y) {
  CurvePoint P = CurvePoint::affine(x, y);
  if (!on_curve(E, P)) throw PointNotOnCurve("(" + to_string(x) + ", " + to_string(y) + ") is not on " + E.label());
  return P;
}

CurvePoint negate(const CurveData& E, const CurvePoint& P) {
  if (P.infinity) return P;
  return CurvePoint::affine(P.x, -P.y - Rat(E.a1) * P.x - Rat(E.a3));
}

CurvePoint add(const CurveData& E, const CurvePoint& P, const CurvePoint& Q) {
  if (P.infinity) return Q;
  if (Q.infinity) return P;
  const Rat a1(E.a1), a2(E.a2), a3(E.a3), a4(E.a4), a6(E.a6);
  Rat lambda, nu;
  if (P.x == Q.x) {
    if (P.y + Q.y + a1 * Q.x + a3 == 0) return CurvePoint::at_infinity();
    Rat den = 2 * P.y + a1 * P.x + a3;
    lambda = (3 * P.x * P.x + 2 * a2 * P.x + a4 - a1 * P.y) / den;
    nu = (-P.x * P.x * P.x + a4 * P.x + 2 * a6 - a3 * P.y) / den;
  } else {
    Rat dx = Q.x - P.x;
    lambda = (Q.y - P.y) / dx;
    nu = (P.y * Q.x - Q.y * P.x) / dx;
  }
  Rat x3 = lambda * lambda + a1 * lambda - a2 - P.x - Q.x;
  Rat y3 = -(lambda + a1) * x3 - nu - a3;
  return CurvePoint::affine(x3, y3);
}

CurvePoint scalar_mul(const CurveData& E, long n, const CurvePoint& P) {
  if (n < 0) return scalar_mul(E, -n, negate(E, P));
  CurvePoint result = CurvePoint::at_infinity(), base = P;
  while (n > 0) {
    if (n & 1) result = add(E, result, base);
    n >>= 1;
    if (n) base = add(E, base, base);
  }
  return result;
}

bool is_torsion(const CurveData& E, const CurvePoint& P) {
  CurvePoint Q = P;
  for (int k = 1; k <= 12; ++k) {
    if (Q.infinity) return true;
    Q = add(E, Q, P);
  }
  return false;
}

// ------------------------------------------------------- point counting

bool is_prime(unsigned long n) {
  if (n < 2) return false;
  for (unsigned long d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

std::vector<unsigned long> prime_factors(Integer n) {
  std::vector<unsigned long> out;
  n = abs(n);
  for (unsigned long d = 2; Integer(d) * d <= n; ++d) {
    if (n % d != 0) continue;
    out.push_back(d);
    while (n % d == 0) n /= d;
  }
  if (n > 1) {
    if (!n.fits_ulong_p()) throw InvalidCurve("conductor has a large prime factor");
    out.push_back(n.get_ui());
  }
  return out;
}

namespace {

long mod_ul(const Integer& z, unsigned long q) {
  Integer r;
  mpz_fdiv_r_ui(r.get_mpz_t(), z.get_mpz_t(), q);
  return static_cast<long>(r.get_ui());
}

}  // namespace

long trace_of_frobenius(const CurveData& E, unsigned long q) {
  const long Q = static_cast<long>(q);
  if (q == 2) {
    long count = 0;
    const long a1 = mod_ul(E.a1, 2), a2 = mod_ul(E.a2, 2), a3 = mod_ul(E.a3, 2), a4 = mod_ul(E.a4, 2),
               a6 = mod_ul(E.a6, 2);
    for (long x = 0; x < 2; ++x)
      for (long y = 0; y < 2; ++y)
        if ((y * y + a1 * x * y + a3 * y - x * x * x - a2 * x * x - a4 * x - a6) % 2 == 0) ++count;
    return Q - count;
  }
  // #{y : y^2 + (a1 x + a3) y = f(x)} = 1 + chi(4x^3 + b2 x^2 + 2 b4 x + b6).
  std::vector<signed char> chi(q, -1);
  chi[0] = 0;
  for (long y = 1; y < Q; ++y) chi[static_cast<std::size_t>((y * y) % Q)] = 1;
  const long b2 = mod_ul(E.b2, q), b4 = mod_ul(2 * E.b4, q), b6 = mod_ul(E.b6, q);
  long s = 0;
  for (long x = 0; x < Q; ++x) {
    long d = (((4 * x + b2) % Q * x + b4) % Q * x + b6) % Q;
    s += chi[static_cast<std::size_t>(d)];
  }
  return -s;
}

long ap(const CurveData& E, unsigned long p) {
  if (E.conductor % Integer(p) == 0) throw BadReductionPrime(std::to_string(p) + " divides the conductor");
  return trace_of_frobenius(E, p);
}

ReductionType reduction_type(const CurveData& E, unsigned long p) {
  long v = valuation(E.conductor, p);
  if (v == 1) return ReductionType::Multiplicative;
  if (v >= 2) return ReductionType::Additive;
  long a = ap(E, p);
  return a % static_cast<long>(p) == 0 ? ReductionType::GoodSupersingular : ReductionType::GoodOrdinary;
}

std::string to_string(ReductionType t) {
  switch (t) {
    case ReductionType::GoodOrdinary: return "good-ordinary";
    case ReductionType::GoodSupersingular: return "good-supersingular";
    case ReductionType::Multiplicative: return "multiplicative";
    case ReductionType::Additive: return "additive";
  }
  return "unknown";
}

std::vector<unsigned long> supersingular_primes(const CurveData& E, unsigned long lo, unsigned long hi) {
  std::vector<unsigned long> out;
  for (unsigned long p = std::max(lo, 5ul); p <= hi; ++p)
    if (is_prime(p) && E.conductor % Integer(p) != 0 && ap(E, p) == 0) out.push_back(p);
  return out;
}

}  // namespace prpoint
