#include "doctest.h"
#include "prpoint/crystalline.hpp"
#include "prpoint/errors.hpp"

using namespace prpoint;

namespace {

CurveData curve(std::array<long, 5> a, long N) {
  return CurveData::make({Integer(a[0]), Integer(a[1]), Integer(a[2]), Integer(a[3]), Integer(a[4])}, Integer(N));
}

const std::vector<CurveData>& curves() {
  static const std::vector<CurveData> cs = {
      curve({0, 0, 1, -1, 0}, 37),    curve({0, 1, 1, 0, 0}, 43),  curve({1, -1, 1, 0, 0}, 53),
      curve({0, -1, 1, -10, -20}, 11), curve({1, 0, 0, -1, 0}, 65), curve({0, 1, 1, -2, 0}, 389),
  };
  return cs;
}

PadicElement padic(unsigned long p, long v, long m) { return PadicElement::from_rat(p, Rat(v), m); }

}  // namespace

TEST_CASE("short model") {
  CurveData E = curves()[0];
  ShortModel s = short_model(E);
  CHECK(s.A == -27 * E.c4);
  CHECK(s.B == -54 * E.c6);
  CHECK(s.u == 3);
}

TEST_CASE("trace and determinant of Frobenius") {
  long checked = 0;
  for (const CurveData& E : curves())
    for (unsigned long p : {5ul, 7ul, 11ul, 13ul}) {
      if (E.disc % Integer(p) == 0) {
        CHECK_THROWS_AS(kedlaya_frobenius(E, p, 6), BadPrime);
        continue;
      }
      const long m = 6;
      FrobeniusData F = kedlaya_frobenius(E, p, m);
      CAPTURE(E.label());
      CAPTURE(p);
      CHECK(F.trace().equals(padic(p, ap(E, p), m)));
      CHECK(F.det().equals(padic(p, static_cast<long>(p), m)));
      // [F x, F y] = p [x, y] on a pair of classes.
      PadicVector2 x = {padic(p, 2, m), padic(p, -3, m)}, y = {padic(p, 5, m), padic(p, 7, m)};
      CHECK(pairing(F.apply(x), F.apply(y)).equals(pairing(x, y) * Rat(static_cast<long>(p))));
      ++checked;
    }
  CHECK(checked >= 16);
}

TEST_CASE("more series terms leave the digits unchanged") {
  for (unsigned long p : {5ul, 7ul}) {
    const CurveData& E = curves()[2];
    FrobeniusData a = kedlaya_frobenius(E, p, 6);
    KedlayaOptions o;
    o.series_terms = 2 * a.series_terms;
    FrobeniusData b = kedlaya_frobenius(E, p, 6, o);
    for (int r = 0; r < 2; ++r)
      for (int c = 0; c < 2; ++c) CHECK(a.matrix[r][c].equals(b.matrix[r][c]));
    KedlayaOptions two;
    two.threads = 2;
    FrobeniusData t = kedlaya_frobenius(E, p, 6, two);
    for (int r = 0; r < 2; ++r)
      for (int c = 0; c < 2; ++c) CHECK(a.matrix[r][c].equals(t.matrix[r][c]));
  }
}

TEST_CASE("higher precision") {
  const CurveData& E = curves()[0];
  FrobeniusData F = kedlaya_frobenius(E, 17, 12);
  CHECK(F.trace().is_zero());
  CHECK(F.det().equals(padic(17, 17, 12)));
  KedlayaOptions o;
  o.series_terms = 3;
  CHECK_THROWS_AS(kedlaya_frobenius(E, 17, 12, o), PrecisionExhausted);
  CHECK_THROWS_AS(kedlaya_frobenius(E, 3, 6), BadPrime);
}

TEST_CASE("pairing matrix") {
  FrobeniusData F = kedlaya_frobenius(curves()[0], 5, 4);
  auto P = pairing_matrix(F);
  CHECK(P[0][0] == 0);
  CHECK(P[1][1] == 0);
  CHECK(P[0][1] == 1);
  CHECK(P[1][0] == -1);
  const unsigned long p = 5;
  PadicVector2 w = {padic(p, 1, 8), padic(p, 0, 8)}, e = {padic(p, 0, 8), padic(p, 1, 8)};
  CHECK(pairing(w, w).is_zero());
  CHECK(pairing(e, w).equals(padic(p, -1, 8)));
  PadicVector2 x = {padic(p, 3, 8), padic(p, 11, 8)}, y = {padic(p, -4, 8), padic(p, 9, 8)};
  PadicVector2 z = {padic(p, 7, 8), padic(p, 2, 8)};
  PadicVector2 xz = {x[0] * Rat(2) + z[0], x[1] * Rat(2) + z[1]};
  CHECK(pairing(xz, y).equals(pairing(x, y) * Rat(2) + pairing(z, y)));
  CHECK(pairing(x, y).equals(-pairing(y, x)));
}

TEST_CASE("eigen data at supersingular primes") {
  struct Case {
    std::size_t curve;
    unsigned long p;
  };
  for (Case cs : {Case{0, 17}, Case{1, 7}, Case{2, 5}, Case{3, 19}}) {
    const CurveData& E = curves()[cs.curve];
    const long m = 8;
    FrobeniusData F = kedlaya_frobenius(E, cs.p, m);
    EigenData d = eigen_data(F, Rat(1));
    CAPTURE(E.label());
    for (int j = 0; j < 2; ++j) CHECK((d.omega_alpha[j] + d.omega_beta[j]).equals(d.omega_cris[j]));
    // phi = F/p acts by 1/alpha on omega_alpha.
    PadicMatrix2 Fr;
    for (int r = 0; r < 2; ++r)
      for (int c = 0; c < 2; ++c) Fr[r][c] = F.matrix[r][c].as_ramified();
    for (int j = 0; j < 2; ++j) {
      PadicElement fa = Fr[j][0] * d.omega_alpha[0] + Fr[j][1] * d.omega_alpha[1];
      PadicElement fb = Fr[j][0] * d.omega_beta[0] + Fr[j][1] * d.omega_beta[1];
      PadicElement p_el = PadicElement::exact(cs.p, static_cast<long>(cs.p), 2);
      CHECK((fa / p_el).equals(d.omega_alpha[j] / d.alpha));
      CHECK((fb / p_el).equals(d.omega_beta[j] / d.beta));
      CHECK(d.omega_beta[j].equals(d.omega_alpha[j].galois_conjugate()));
    }
    CHECK((d.bracket + pairing(d.omega_alpha, d.omega_beta)).is_zero());
    CHECK(d.bracket.even_part().is_zero());
    CHECK(pairing(d.omega_alpha, d.omega_beta).equals(d.bracket.galois_conjugate()));
    CHECK(pairing(d.omega_cris, d.omega_star).equals(PadicElement::exact(cs.p, 1, 2)));
    CHECK(d.delta.equals(d.bracket));
    EigenData half = eigen_data(F, make_rat(1, 2));
    CHECK(half.delta.equals(d.bracket * Rat(2)));
  }
  FrobeniusData ord = kedlaya_frobenius(curves()[0], 5, 6);
  CHECK_THROWS_AS(eigen_data(ord, Rat(1)), OutOfScope);
}
