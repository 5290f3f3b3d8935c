#include "prpoint/archlfun.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "prpoint/errors.hpp"

namespace prpoint {

namespace {

constexpr Real kPi = 3.141592653589793238462643383279502884L;
constexpr Real kEuler = 0.577215664901532860606512090082402431L;

Real to_real(const Integer& z) {
  long e = 0;
  double m = mpz_get_d_2exp(&e, z.get_mpz_t());
  return std::ldexp(static_cast<Real>(m), static_cast<int>(e));
}

// log|z| for a nonzero integer of any size.
Real log_abs(const Integer& z) {
  long e = 0;
  double m = mpz_get_d_2exp(&e, z.get_mpz_t());
  return std::log(std::fabs(static_cast<Real>(m))) + static_cast<Real>(e) * std::log(2.0L);
}

Real tail_bound(const Integer& N, long B) {
  Real r = std::exp(-2 * kPi / std::sqrt(to_real(N)));
  return 2 * std::pow(r, static_cast<Real>(B + 1)) / (1 - r);
}

std::vector<Real> cubic_real_roots(Real b2, Real b4, Real b6, bool three) {
  const Real B = b2 / 4, C = b4 / 2, D = b6 / 4;
  const Real p = C - B * B / 3;
  const Real q = 2 * B * B * B / 27 - B * C / 3 + D;
  std::vector<Real> zs;
  if (three) {
    Real rad = 2 * std::sqrt(-p / 3);
    Real arg = std::clamp((3 * q / (2 * p)) * std::sqrt(-3 / p), -1.0L, 1.0L);
    Real th = std::acos(arg) / 3;
    for (int k = 0; k < 3; ++k) zs.push_back(rad * std::cos(th - 2 * kPi * k / 3));
  } else {
    Real disc = q * q / 4 + p * p * p / 27;
    Real s = std::sqrt(std::max(disc, 0.0L));
    zs.push_back(std::cbrt(-q / 2 + s) + std::cbrt(-q / 2 - s));
  }
  std::vector<Real> roots;
  for (Real z : zs) {
    Real x = z - B / 3;
    for (int it = 0; it < 6; ++it) {
      Real f = ((4 * x + b2) * x + 2 * b4) * x + b6;
      Real df = (12 * x + 2 * b2) * x + 2 * b4;
      if (df == 0) break;
      Real nx = x - f / df;
      if (!std::isfinite(nx)) break;
      x = nx;
    }
    roots.push_back(x);
  }
  std::sort(roots.rbegin(), roots.rend());
  return roots;
}

bool nonsingular_mod(const CurveData& E, const CurvePoint& Q, unsigned long q) {
  if (Q.infinity) return true;
  if (valuation(Q.x, q) < 0) return true;
  Integer m(q);
  auto red = [&](const Rat& r) {
    Integer inv;
    mpz_invert(inv.get_mpz_t(), r.get_den_mpz_t(), m.get_mpz_t());
    Integer v = r.get_num() * inv;
    mpz_fdiv_r(v.get_mpz_t(), v.get_mpz_t(), m.get_mpz_t());
    return v;
  };
  Integer x = red(Q.x), y = red(Q.y);
  Integer fx = E.a1 * y - 3 * x * x - 2 * E.a2 * x - E.a4;
  Integer fy = 2 * y + E.a1 * x + E.a3;
  return fx % m != 0 || fy % m != 0;
}

std::size_t bit_size(const CurvePoint& Q) {
  if (Q.infinity) return 0;
  return mpz_sizeinbase(Q.x.get_num_mpz_t(), 2) + mpz_sizeinbase(Q.x.get_den_mpz_t(), 2);
}

}  // namespace

AnList anlist(const CurveData& E, long B) {
  if (B < 1) throw std::invalid_argument("anlist bound must be positive");
  AnList L;
  L.bound = B;
  L.a.assign(static_cast<std::size_t>(B + 1), 0);
  std::vector<long> spf(static_cast<std::size_t>(B + 1), 0);
  for (long i = 2; i <= B; ++i)
    if (spf[i] == 0)
      for (long j = i; j <= B; j += i)
        if (spf[j] == 0) spf[j] = i;
  L.a[1] = 1;
  for (long n = 2; n <= B; ++n) {
    const long p = spf[n];
    long m = n, pk = 1;
    while (m % p == 0) {
      m /= p;
      pk *= p;
    }
    if (m > 1) {
      L.a[n] = L.a[m] * L.a[pk];
      continue;
    }
    // n = p^k
    if (pk == p) {
      L.a[n] = trace_of_frobenius(E, static_cast<unsigned long>(p));
    } else if (E.conductor % Integer(p) == 0) {
      L.a[n] = L.a[n / p] * L.a[p];
    } else {
      L.a[n] = L.a[p] * L.a[n / p] - p * L.a[n / p / p];
    }
  }
  return L;
}

long default_terms(const Integer& N, Real tol) {
  long B = 10;
  while (tail_bound(N, B) > tol) B += 10;
  return B;
}

Real exponential_integral_e1(Real x) {
  if (x <= 0) throw std::invalid_argument("E1 needs x > 0");
  if (x <= 1) {
    Real sum = 0, term = 1;
    for (int k = 1; k < 200; ++k) {
      term *= -x / k;
      Real add = term / k;
      sum += add;
      if (std::fabs(add) < 1e-22L) break;
    }
    return -kEuler - std::log(x) - sum;
  }
  // Modified Lentz on the continued fraction.
  const Real tiny = 1e-4000L;
  Real b = x + 1, c = 1 / tiny, d = 1 / b, h = d;
  for (int i = 1; i < 10000; ++i) {
    Real a = -static_cast<Real>(i) * i;
    b += 2;
    d = 1 / (a * d + b);
    c = b + a / c;
    Real del = c * d;
    h *= del;
    if (std::fabs(del - 1) < 1e-21L) break;
  }
  return h * std::exp(-x);
}

SeriesValue l_derivative(const CurveData& E, long B, int w, Real tol) {
  if (w != -1) throw std::invalid_argument("the derivative series is implemented for root number -1");
  SeriesValue out;
  out.error_bound = tail_bound(E.conductor, B);
  if (out.error_bound > tol) throw InsufficientTerms(std::to_string(B) + " terms leave a tail bound above tolerance");
  const AnList an = anlist(E, B);
  const Real c = 2 * kPi / std::sqrt(to_real(E.conductor));
  Real sum = 0;
  for (long n = B; n >= 1; --n)
    if (an[n] != 0) sum += static_cast<Real>(an[n]) / n * exponential_integral_e1(c * n);
  out.value = 2 * sum;
  return out;
}

SeriesValue l_value(const CurveData& E, long B, int w, Real A, Real tol) {
  if (w != 1 && w != -1) throw std::invalid_argument("root number must be +1 or -1");
  if (A <= 0) throw std::invalid_argument("cutoff parameter must be positive");
  const Real amin = std::min(A, 1 / A);
  SeriesValue out;
  {
    Real r = std::exp(-2 * kPi * amin / std::sqrt(to_real(E.conductor)));
    out.error_bound = 2 * std::pow(r, static_cast<Real>(B + 1)) / (1 - r);
  }
  if (out.error_bound > tol) throw InsufficientTerms(std::to_string(B) + " terms leave a tail bound above tolerance");
  const AnList an = anlist(E, B);
  const Real c = 2 * kPi / std::sqrt(to_real(E.conductor));
  Real sum = 0;
  for (long n = B; n >= 1; --n)
    if (an[n] != 0) sum += static_cast<Real>(an[n]) / n * (std::exp(-c * n / A) + w * std::exp(-c * n * A));
  out.value = sum;
  return out;
}

Real agm(Real a, Real b) {
  for (int i = 0; i < 100 && std::fabs(a - b) > 1e-19L * std::fabs(a); ++i) {
    Real na = (a + b) / 2;
    b = std::sqrt(a * b);
    a = na;
  }
  return (a + b) / 2;
}

RealPeriod real_period(const CurveData& E) {
  RealPeriod out;
  const Real b2 = to_real(E.b2), b4 = to_real(E.b4), b6 = to_real(E.b6);
  out.two_components = E.disc > 0;
  out.roots = cubic_real_roots(b2, b4, b6, out.two_components);
  if (out.two_components) {
    const Real e1 = out.roots[0], e2 = out.roots[1], e3 = out.roots[2];
    out.omega = 2 * kPi / agm(std::sqrt(e1 - e3), std::sqrt(e1 - e2));
  } else {
    const Real e1 = out.roots[0];
    const Real beta = std::sqrt(3 * e1 * e1 + b2 * e1 / 2 + b4 / 2);
    out.omega = 2 * kPi / agm(2 * std::sqrt(beta), std::sqrt(2 * beta + 3 * e1 + b2 / 4));
  }
  return out;
}

HeightValue neron_tate_height(const CurveData& E, const CurvePoint& P, long iterations, long max_bits) {
  HeightValue out;
  if (!on_curve(E, P)) throw PointNotOnCurve("height of a point off the curve");
  if (P.infinity || is_torsion(E, P)) return out;

  const auto bad = prime_factors(E.conductor);
  CurvePoint Q = P;
  long m = 1;
  for (;; ++m) {
    if (m > 1) Q = add(E, Q, P);
    if (bit_size(Q) > static_cast<std::size_t>(max_bits))
      throw CoordinateOverflow("multiple " + std::to_string(m) + " exceeds the coordinate budget");
    bool ok = std::all_of(bad.begin(), bad.end(), [&](unsigned long q) { return nonsingular_mod(E, Q, q); });
    if (ok) break;
  }
  out.multiplier = m;

  // Archimedean local height by Tate's series on the model shifted so that
  // x >= 1 on E(R).
  const RealPeriod rp = real_period(E);
  const Real r = rp.roots.back() - 1;
  const Real b2 = to_real(E.b2), b4 = to_real(E.b4), b6 = to_real(E.b6), b8 = to_real(E.b8);
  const Real B2 = b2 + 12 * r;
  const Real B4 = b4 + r * b2 + 6 * r * r;
  const Real B6 = b6 + 2 * r * b4 + r * r * b2 + 4 * r * r * r;
  const Real B8 = b8 + 3 * r * b6 + 3 * r * r * b4 + r * r * r * b2 + 3 * r * r * r * r;

  Real log_x, t;
  const Real log_num = log_abs(Q.x.get_num()), log_den = log_abs(Q.x.get_den());
  if (log_num - log_den > 1000) {
    log_x = log_num - log_den;
    t = 0;
  } else {
    Real xs = static_cast<Real>(to_real(Q.x.get_num()) / to_real(Q.x.get_den())) - r;
    log_x = std::log(xs);
    t = 1 / xs;
  }
  Real series = 0, scale = 1, max_term = 0;
  for (long n = 0; n < iterations; ++n) {
    Real z = 1 - B4 * t * t - 2 * B6 * t * t * t - B8 * t * t * t * t;
    Real w = 4 * t + B2 * t * t + 2 * B4 * t * t * t + B6 * t * t * t * t;
    Real lz = std::log(std::fabs(z));
    max_term = std::max(max_term, std::fabs(lz));
    series += scale * lz;
    scale /= 4;
    t = w / z;
  }
  const Real lambda_inf = log_x / 2 + series / 8;
  const Real log_d = log_den / 2;
  const Real mm = static_cast<Real>(m) * m;
  out.value = 2 * (lambda_inf + log_d) / mm;
  out.error_bound = 2 * (max_term + 1) * scale / 6 / mm;
  return out;
}

long torsion_order_bound(const CurveData& E) {
  long g = 0;
  for (unsigned long q = 3; q < 200; ++q) {
    if (!is_prime(q) || E.conductor % Integer(q) == 0) continue;
    g = std::gcd(g, static_cast<long>(q) + 1 - ap(E, q));
  }
  return g;
}

GZConstant gross_zagier_constant(const CurveData& E, const CurvePoint& gen, const GZOptions& opts) {
  if (gen.infinity || is_torsion(E, gen)) throw TorsionPoint("Gross-Zagier ratio needs a point of infinite order");
  const long B = opts.terms > 0 ? opts.terms : default_terms(E.conductor);
  GZConstant out;
  out.l_derivative = l_derivative(E, B, -1, 1e-15L).value;
  out.omega = real_period(E).omega;
  out.height = neron_tate_height(E, gen).value;
  out.ratio = out.l_derivative / out.omega / out.height;
  out.value = best_rational(out.ratio, opts.max_denominator);
  out.float_residual = std::fabs(out.ratio - to_real(out.value.get_num()) / to_real(out.value.get_den()));
  if (out.value == 0 || out.float_residual >= opts.tolerance)
    throw ReconstructionFailed("L'(E,1)/(Omega h) = " + std::to_string(static_cast<double>(out.ratio)) +
                               " is not a rational with denominator <= " + std::to_string(opts.max_denominator));
  const long tors = torsion_order_bound(E);
  const Integer den = out.value.get_den();
  for (long k = 2; Integer(k) * k <= den; ++k)
    if (den % (k * k) == 0 && tors % k != 0) out.suspect_multiple = true;
  return out;
}

}  // namespace prpoint
