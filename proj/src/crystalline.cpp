#include "prpoint/crystalline.hpp"

#include <string>
#include <vector>

#include "prpoint/errors.hpp"
#include "prpoint/parallel.hpp"

namespace prpoint {

namespace {

using Poly = std::vector<Integer>;  // coefficients mod M, low degree first

struct Ring {
  Integer M;
  Integer reduce(const Integer& z) const {
    Integer r = z % M;
    if (r < 0) r += M;
    return r;
  }
  Integer from_rat(const Rat& q) const {
    Integer inv;
    Integer den = q.get_den();
    if (mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), M.get_mpz_t()) == 0)
      throw BadPrime("denominator " + den.get_str() + " is not a unit");
    return reduce(q.get_num() * inv);
  }
  Poly mul(const Poly& a, const Poly& b) const {
    if (a.empty() || b.empty()) return {};
    Poly r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (a[i] == 0) continue;
      for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    }
    for (auto& c : r) c = reduce(c);
    return r;
  }
  void add_into(Poly& a, const Poly& b) const {
    if (a.size() < b.size()) a.resize(b.size(), 0);
    for (std::size_t i = 0; i < b.size(); ++i) a[i] = reduce(a[i] + b[i]);
  }
};

long vp(long m, unsigned long p) {
  long v = 0;
  while (m % static_cast<long>(p) == 0) {
    m /= static_cast<long>(p);
    ++v;
  }
  return v;
}

long floor_log(unsigned long p, long k) {
  long r = 0;
  for (long q = static_cast<long>(p); q <= k; q *= static_cast<long>(p)) ++r;
  return r;
}

// gb with ga Q + gb Q' = 1 over Q for Q = x^3 + A x + B.
std::vector<Rat> bezout_gb(const Integer& A, const Integer& B) {
  // Unknowns g0, g1 (ga) and h0, h1, h2 (gb); equations are the coefficients of x^0..x^4.
  QMatrix m(5, 6);
  const Rat q[4] = {Rat(B), Rat(A), 0, 1};
  const Rat dq[3] = {Rat(A), 0, 3};
  for (int i = 0; i < 2; ++i)
    for (int k = 0; k < 4; ++k) m(i + k, i) += q[k];
  for (int i = 0; i < 3; ++i)
    for (int k = 0; k < 3; ++k) m(i + k, 2 + i) += dq[k];
  m(0, 5) = -1;
  auto ker = kernel_basis(m);
  if (ker.size() != 1 || ker[0][5] == 0) throw BadPrime("x^3 + A x + B is not squarefree");
  RatVector s = ker[0];
  for (auto& c : s) c /= ker[0][5];
  return {s[2], s[3], s[4]};
}

struct Reducer {
  unsigned long p;
  Ring ring;
  Integer A, B;
  Poly gB;
  Integer ppow(long k) const { return ipow(Integer(p), static_cast<unsigned long>(k)); }

  // x divided by p^v; the representative must be divisible.
  Integer divide(const Integer& x, long v) const {
    if (v == 0) return x;
    Integer d = ppow(v);
    if (x % d != 0) throw PrecisionExhausted("scale too small for the reduction denominators");
    return x / d;
  }

  // Coefficients of x^0 and x^1 after reducing sum_s terms[s] dx/y^{2s+1}.
  std::array<Integer, 2> reduce(std::vector<Poly> terms) const {
    Poly cur;
    for (long s = static_cast<long>(terms.size()) - 1; s >= 1; --s) {
      Poly R = cur;
      ring.add_into(R, terms[static_cast<std::size_t>(s)]);
      // R = U Q + V Q': V = R gB mod Q, U = (R - V Q') / Q.
      Poly V = ring.mul(R, gB);
      for (std::size_t j = V.size(); j-- > 3;) {
        Integer c = V[j];
        if (c == 0) continue;
        V[j] = 0;
        V[j - 2] = ring.reduce(V[j - 2] - c * A);
        V[j - 3] = ring.reduce(V[j - 3] - c * B);
      }
      V.resize(3, 0);
      Poly D = R;
      ring.add_into(D, ring.mul(V, {ring.reduce(-A), 0, ring.reduce(Integer(-3))}));
      Poly U(D.size() > 3 ? D.size() - 3 : 1, 0);
      for (std::size_t j = D.size(); j-- > 3;) {
        Integer c = D[j];
        U[j - 3] = c;
        D[j] = 0;
        D[j - 2] = ring.reduce(D[j - 2] - c * A);
        D[j - 3] = ring.reduce(D[j - 3] - c * B);
      }
      // R dx/y^{2s+1} = (U + 2V'/(2s-1)) dx/y^{2s-1} + exact.
      long m = 2 * s - 1, v = vp(m, p);
      Integer unit = m / static_cast<long>(ipow(Integer(p), static_cast<unsigned long>(v)).get_si());
      Integer inv = ring.from_rat(make_rat(2, unit));
      for (std::size_t j = 1; j < 3; ++j) {
        Integer t = divide(ring.reduce(V[j] * Integer(static_cast<long>(j)) * inv), v);
        if (U.size() < j) U.resize(j, 0);
        U[j - 1] = ring.reduce(U[j - 1] + t);
      }
      cur = std::move(U);
    }
    Poly R = cur;
    ring.add_into(R, terms[0]);
    // x^{i+2} = -(A (2i+1) x^i + 2 B i x^{i-1}) / (2i+3) modulo exact forms.
    for (std::size_t j = R.size(); j-- > 2;) {
      Integer c = R[j];
      if (c == 0) continue;
      long i = static_cast<long>(j) - 2, m = 2 * i + 3, v = vp(m, p);
      Integer unit = m / static_cast<long>(ipow(Integer(p), static_cast<unsigned long>(v)).get_si());
      Integer f = divide(ring.reduce(c * ring.from_rat(make_rat(1, unit))), v);
      R[j] = 0;
      R[static_cast<std::size_t>(i)] = ring.reduce(R[static_cast<std::size_t>(i)] - f * A * (2 * i + 1));
      if (i >= 1) R[static_cast<std::size_t>(i - 1)] = ring.reduce(R[static_cast<std::size_t>(i - 1)] - f * B * 2 * i);
    }
    R.resize(2, 0);
    return {R[0], R[1]};
  }
};

}  // namespace

ShortModel short_model(const CurveData& E) { return {-27 * E.c4, -54 * E.c6, Rat(3)}; }

PadicVector2 FrobeniusData::apply(const PadicVector2& v) const {
  return {matrix[0][0] * v[0] + matrix[0][1] * v[1], matrix[1][0] * v[0] + matrix[1][1] * v[1]};
}

FrobeniusData kedlaya_frobenius(const CurveData& E, unsigned long p, long m, const KedlayaOptions& opts) {
  if (p < 5 || !is_prime(p)) throw BadPrime("Kedlaya's algorithm needs a prime p >= 5, got " + std::to_string(p));
  if (E.disc % Integer(p) == 0) throw BadPrime(std::to_string(p) + " divides the discriminant");
  if (m < 1) throw std::invalid_argument("precision must be positive");
  const ShortModel sm = short_model(E);
  const long K = opts.series_terms > 0 ? opts.series_terms : m + 2 + floor_log(p, 2 * m + 7) + 1;
  // Each term has valuation >= k + 1, less the reduction denominators at its pole order.
  if (K + 1 - floor_log(p, static_cast<long>(p) * (2 * K + 3)) - 1 < m)
    throw PrecisionExhausted(std::to_string(K) + " series terms cannot reach precision " + std::to_string(m));
  const long smax = (static_cast<long>(p) * (2 * K + 1) - 1) / 2;
  const long top_degree = 2 * static_cast<long>(p) + 3;
  long lost = 0;
  for (long s = 1; s <= smax; ++s) lost += vp(2 * s - 1, p);
  for (long i = 0; i <= top_degree; ++i) lost += vp(2 * i + 3, p);
  const long scale = lost;
  const long W = m + scale + lost + 2;

  Reducer red;
  red.p = p;
  red.ring.M = ipow(Integer(p), static_cast<unsigned long>(W));
  red.A = red.ring.reduce(sm.A);
  red.B = red.ring.reduce(sm.B);
  for (auto& c : bezout_gb(sm.A, sm.B)) red.gB.push_back(red.ring.from_rat(c));
  const Ring& ring = red.ring;

  // E(x) = Q(x^p) - Q(x)^p.
  Poly Q = {red.B, red.A, 0, 1};
  Poly Qp = {1};
  for (unsigned long i = 0; i < p; ++i) Qp = ring.mul(Qp, Q);
  Poly Ex(3 * p + 1, 0);
  Ex[0] = red.B;
  Ex[p] = red.A;
  Ex[3 * p] = 1;
  for (std::size_t i = 0; i < Qp.size(); ++i) Ex[i] = ring.reduce(Ex[i] - Qp[i]);

  const Integer scaled_p = ipow(Integer(p), static_cast<unsigned long>(scale + 1));
  std::array<std::array<Integer, 2>, 2> cols;
  parallel_chunks(2, opts.threads, [&](std::size_t lo, std::size_t hi, unsigned) {
    for (std::size_t i = lo; i < hi; ++i) {
      // sigma(x^i dx/y) = p x^{p(i+1)-1} sum_k binom(-1/2, k) E^k dx / y^{p(2k+1)}.
      std::vector<Poly> terms(static_cast<std::size_t>(smax) + 1);
      Poly Ek = {1};
      Rat binom = 1;
      for (long k = 0; k <= K; ++k) {
        Poly base(p * (i + 1), 0);
        base.back() = ring.reduce(scaled_p * ring.from_rat(binom));
        std::size_t s = static_cast<std::size_t>((static_cast<long>(p) * (2 * k + 1) - 1) / 2);
        terms[s] = ring.mul(base, Ek);
        Ek = ring.mul(Ek, Ex);
        binom *= make_rat(-(2 * k + 1), 2 * (k + 1));
      }
      cols[i] = red.reduce(std::move(terms));
    }
  });

  FrobeniusData F;
  F.p = p;
  F.precision = m;
  F.model = sm;
  F.series_terms = K;
  F.working_digits = W;
  F.precision_loss = lost;
  const Integer M = ring.M;
  for (int i = 0; i < 2; ++i)
    for (int r = 0; r < 2; ++r) {
      Integer x = cols[static_cast<std::size_t>(i)][static_cast<std::size_t>(r)];
      if (x > M / 2) x -= M;
      F.matrix[static_cast<std::size_t>(r)][static_cast<std::size_t>(i)] =
          PadicElement::from_parts(p, 1, -scale, x, 0, 2 * m);
    }
  return F;
}

std::array<std::array<Rat, 2>, 2> pairing_matrix(const FrobeniusData&) {
  return {{{Rat(0), Rat(1)}, {Rat(-1), Rat(0)}}};
}

PadicElement pairing(const PadicVector2& x, const PadicVector2& y) { return x[0] * y[1] - x[1] * y[0]; }

EigenData eigen_data(const FrobeniusData& F, const Rat& c_e) {
  const unsigned long p = F.p;
  if (!F.trace().with_precision(1).is_zero()) throw OutOfScope("eigen data is implemented for a_p = 0 only");
  if (c_e == 0) throw std::invalid_argument("C(E) must be nonzero");
  EigenData d;
  d.alpha = PadicElement::pi(p);
  d.beta = -d.alpha;
  d.c_e = c_e;
  PadicMatrix2 Fr;
  for (int r = 0; r < 2; ++r)
    for (int c = 0; c < 2; ++c) Fr[r][c] = F.matrix[r][c].as_ramified();
  PadicElement u = PadicElement::from_rat(p, F.model.u, F.precision + 4, 2);
  PadicElement zero = PadicElement::exact(p, 0, 2);
  d.omega_cris = {u, zero};
  PadicVector2 Fw = {Fr[0][0] * u, Fr[1][0] * u};
  if (Fw[1].is_zero()) throw DegenerateDecomposition("the Neron class is a Frobenius eigenvector");
  PadicElement ba = (d.beta - d.alpha).with_precision(F.precision + 4);
  for (int j = 0; j < 2; ++j) {
    d.omega_alpha[j] = (Fw[j] - d.alpha * d.omega_cris[j]) / ba;
    d.omega_beta[j] = (Fw[j] - d.beta * d.omega_cris[j]) / (-ba);
  }
  d.omega_star = {zero, u.inverse()};
  d.bracket = pairing(d.omega_beta, d.omega_alpha);
  d.delta = d.bracket * PadicElement::from_rat(p, 1 / c_e, F.precision + 4, 2);
  return d;
}

EigenData eigen_data(const FrobeniusData& F, const GZConstant& c_e) { return eigen_data(F, c_e.value); }

}  // namespace prpoint
