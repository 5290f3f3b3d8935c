#include "prpoint/elliptic.hpp"
#include "prpoint/errors.hpp"

namespace prpoint {

namespace {

RatSeries truncate(RatSeries a, long K) {
  a.resize(static_cast<std::size_t>(K + 1), Rat(0));
  return a;
}

RatSeries series_add(const RatSeries& a, const RatSeries& b, long K) {
  RatSeries r(static_cast<std::size_t>(K + 1), Rat(0));
  for (long i = 0; i <= K; ++i) {
    if (i < static_cast<long>(a.size())) r[i] += a[i];
    if (i < static_cast<long>(b.size())) r[i] += b[i];
  }
  return r;
}

RatSeries series_scale(const RatSeries& a, const Rat& s, long K) {
  RatSeries r = truncate(a, K);
  for (auto& c : r) c *= s;
  return r;
}

// t^k * a
RatSeries series_shift(const RatSeries& a, long k, long K) {
  RatSeries r(static_cast<std::size_t>(K + 1), Rat(0));
  for (long i = 0; i + k <= K && i < static_cast<long>(a.size()); ++i) r[i + k] = a[i];
  return r;
}

RatSeries series_inverse(const RatSeries& a, long K) {
  if (a.empty() || a[0] == 0) throw std::invalid_argument("series not invertible");
  RatSeries r(static_cast<std::size_t>(K + 1), Rat(0));
  r[0] = 1 / a[0];
  for (long n = 1; n <= K; ++n) {
    Rat s = 0;
    for (long k = 1; k <= n && k < static_cast<long>(a.size()); ++k) s += a[k] * r[n - k];
    r[n] = -s * r[0];
  }
  return r;
}

RatSeries series_derivative(const RatSeries& a, long K) {
  RatSeries r(static_cast<std::size_t>(K + 1), Rat(0));
  for (long i = 1; i < static_cast<long>(a.size()) && i - 1 <= K; ++i) r[i - 1] = a[i] * i;
  return r;
}

// u = w / t^3 through t^K.
RatSeries formal_u(const CurveData& E, long K) {
  RatSeries w = formal_w(E, K + 3);
  RatSeries u(static_cast<std::size_t>(K + 1), Rat(0));
  for (long i = 0; i <= K; ++i) u[i] = w[i + 3];
  return u;
}

}  // namespace

RatSeries series_mul(const RatSeries& a, const RatSeries& b, long K) {
  RatSeries r(static_cast<std::size_t>(K + 1), Rat(0));
  for (long i = 0; i < static_cast<long>(a.size()) && i <= K; ++i) {
    if (a[i] == 0) continue;
    for (long j = 0; j < static_cast<long>(b.size()) && i + j <= K; ++j)
      if (b[j] != 0) r[i + j] += a[i] * b[j];
  }
  return r;
}

RatSeries series_compose(const RatSeries& f, const RatSeries& g, long K) {
  if (!g.empty() && g[0] != 0) throw std::invalid_argument("inner series must vanish at 0");
  RatSeries r(static_cast<std::size_t>(K + 1), Rat(0));
  for (long i = std::min<long>(K, static_cast<long>(f.size()) - 1); i >= 0; --i) {
    r = series_mul(r, g, K);
    r[0] += f[i];
  }
  return r;
}

RatSeries formal_w(const CurveData& E, long K) {
  const Rat a1(E.a1), a2(E.a2), a3(E.a3), a4(E.a4), a6(E.a6);
  RatSeries t3(static_cast<std::size_t>(K + 1), Rat(0));
  if (K >= 3) t3[3] = 1;
  RatSeries w = t3;
  // Each pass fixes at least one further coefficient.
  for (long iter = 0; iter <= K; ++iter) {
    RatSeries w2 = series_mul(w, w, K);
    RatSeries w3 = series_mul(w2, w, K);
    RatSeries next = t3;
    next = series_add(next, series_scale(series_shift(w, 1, K), a1, K), K);
    next = series_add(next, series_scale(series_shift(w, 2, K), a2, K), K);
    next = series_add(next, series_scale(w2, a3, K), K);
    next = series_add(next, series_scale(series_shift(w2, 1, K), a4, K), K);
    next = series_add(next, series_scale(w3, a6, K), K);
    if (next == w) break;
    w = next;
  }
  return w;
}

RatSeries invariant_differential(const CurveData& E, long K) {
  // With w = t^3 u: omega = (2u + t u') / (2u - a1 t u - a3 t^3 u^2) dt.
  const long M = K - 1;
  RatSeries u = formal_u(E, M);
  RatSeries du = series_derivative(u, M);
  RatSeries num = series_add(series_scale(u, 2, M), series_shift(du, 1, M), M);
  RatSeries den = series_scale(u, 2, M);
  den = series_add(den, series_scale(series_shift(u, 1, M), -Rat(E.a1), M), M);
  den = series_add(den, series_scale(series_shift(series_mul(u, u, M), 3, M), -Rat(E.a3), M), M);
  return series_mul(num, series_inverse(den, M), M);
}

RatSeries invariant_differential_alt(const CurveData& E, long K) {
  // omega = (3u + t u') / (3 + a1 t u + 2 a2 t^2 u + a4 t^4 u^2) dt.
  const long M = K - 1;
  RatSeries u = formal_u(E, M);
  RatSeries du = series_derivative(u, M);
  RatSeries num = series_add(series_scale(u, 3, M), series_shift(du, 1, M), M);
  RatSeries den(static_cast<std::size_t>(M + 1), Rat(0));
  den[0] = 3;
  den = series_add(den, series_scale(series_shift(u, 1, M), Rat(E.a1), M), M);
  den = series_add(den, series_scale(series_shift(u, 2, M), 2 * Rat(E.a2), M), M);
  den = series_add(den, series_scale(series_shift(series_mul(u, u, M), 4, M), Rat(E.a4), M), M);
  return series_mul(num, series_inverse(den, M), M);
}

FormalLog formal_log(const CurveData& E, long K) {
  if (K < 2) throw std::invalid_argument("formal log needs K >= 2");
  RatSeries w = invariant_differential(E, K);
  FormalLog L;
  L.K = K;
  L.coeffs.assign(static_cast<std::size_t>(K + 1), Rat(0));
  for (long k = 1; k <= K; ++k) L.coeffs[k] = w[k - 1] / k;
  return L;
}

RatSeries formal_exp(const FormalLog& log) {
  const long K = log.K;
  RatSeries higher = log.coeffs;
  higher[1] = 0;
  RatSeries s(static_cast<std::size_t>(K + 1), Rat(0));
  s[1] = 1;
  RatSeries e = s;
  // e = s - sum_{k>=2} c_k e^k; one new coefficient per pass.
  for (long iter = 1; iter < K; ++iter) {
    RatSeries next = series_add(s, series_scale(series_compose(higher, e, K), -1, K), K);
    if (next == e) break;
    e = next;
  }
  return e;
}

PadicElement padic_log_point(const CurveData& E, const CurvePoint& P, unsigned long p, long N, long extra_multiplier) {
  if (P.infinity || is_torsion(E, P)) throw TorsionPoint("log of a torsion point");
  if (extra_multiplier < 1) throw std::invalid_argument("multiplier must be positive");
  const long m = (static_cast<long>(p) + 1 - ap(E, p)) * extra_multiplier;
  CurvePoint Q = scalar_mul(E, m, P);
  Rat t = -Q.x / Q.y;
  long v = valuation(t, p);
  if (v < 1) throw BadReductionPrime("multiple of the point does not reduce to O mod " + std::to_string(p));
  const long vm = valuation(Integer(m), p);
  const long target = N + vm;
  auto floor_log = [p](long k) {
    long l = 0;
    for (long q = k; q >= static_cast<long>(p); q /= static_cast<long>(p)) ++l;
    return l;
  };
  long K = 2;
  while ((K + 1) * v - floor_log(K + 1) < target) ++K;
  FormalLog L = formal_log(E, K);
  const long W = target + floor_log(K) + 2;
  PadicElement tp = PadicElement::from_rat(p, t, W);
  PadicElement power = tp;
  PadicElement sum = PadicElement::zero(p, W);
  for (long k = 1; k <= K; ++k) {
    if (L.coeffs[k] != 0) sum = sum + power * L.coeffs[k];
    power = power * tp;
  }
  return (sum * make_rat(1, m)).with_precision(N);
}

}  // namespace prpoint
