#include <random>

#include "doctest.h"
#include "prpoint/elliptic.hpp"
#include "prpoint/errors.hpp"

using namespace prpoint;

namespace {

CurveData curve(std::array<long, 5> a, long N) {
  return CurveData::make({Integer(a[0]), Integer(a[1]), Integer(a[2]), Integer(a[3]), Integer(a[4])}, Integer(N));
}

const CurveData E37 = curve({0, 0, 1, -1, 0}, 37);

long brute_count(const CurveData& E, long q) {
  auto md = [q](const Integer& z) {
    Integer r;
    mpz_fdiv_r_ui(r.get_mpz_t(), z.get_mpz_t(), static_cast<unsigned long>(q));
    return r.get_si();
  };
  long a1 = md(E.a1), a2 = md(E.a2), a3 = md(E.a3), a4 = md(E.a4), a6 = md(E.a6), n = 0;
  for (long x = 0; x < q; ++x)
    for (long y = 0; y < q; ++y)
      if (((y * y + a1 * x * y + a3 * y - x * x * x - a2 * x * x - a4 * x - a6) % q + q) % q == 0) ++n;
  return n;
}

}  // namespace

TEST_CASE("curve invariants") {
  CHECK(E37.disc == 37);
  CHECK(E37.c4 * E37.c4 * E37.c4 - E37.c6 * E37.c6 == 1728 * E37.disc);
  CHECK_THROWS_AS(curve({0, 0, 1, -1, 0}, 74), InvalidCurve);
  CHECK_THROWS_AS(curve({0, 0, 0, 0, 0}, 1), InvalidCurve);
}

TEST_CASE("group law") {
  auto P = make_point(E37, 0, 0);
  CHECK(add(E37, P, CurvePoint::at_infinity()) == P);
  CHECK(add(E37, P, P) == CurvePoint::affine(1, 0));
  CHECK(add(E37, P, negate(E37, P)).infinity);
  CHECK_THROWS_AS(make_point(E37, 1, 1), PointNotOnCurve);
  CHECK(scalar_mul(E37, -3, P) == negate(E37, scalar_mul(E37, 3, P)));
}

TEST_CASE("associativity and commutativity on a rank-2 curve") {
  auto E = curve({0, 1, 1, -2, 0}, 389);
  auto P = make_point(E, -1, 1), Q = make_point(E, 0, 0);
  std::mt19937 rng(42);
  std::uniform_int_distribution<long> d(-3, 3);
  auto rnd = [&] { return add(E, scalar_mul(E, d(rng), P), scalar_mul(E, d(rng), Q)); };
  for (int i = 0; i < 200; ++i) {
    auto A = rnd(), B = rnd(), C = rnd();
    CHECK(on_curve(E, A));
    CHECK(add(E, A, B) == add(E, B, A));
    CHECK(add(E, add(E, A, B), C) == add(E, A, add(E, B, C)));
  }
}

TEST_CASE("torsion") {
  CHECK(is_torsion(E37, CurvePoint::at_infinity()));
  CHECK_FALSE(is_torsion(E37, make_point(E37, 0, 0)));
  auto E65 = curve({1, 0, 0, -1, 0}, 65);
  CHECK(is_torsion(E65, make_point(E65, 0, 0)));
  auto E11 = curve({0, -1, 1, -10, -20}, 11);
  CHECK(is_torsion(E11, make_point(E11, 5, 5)));
}

TEST_CASE("a_p") {
  CHECK(ap(E37, 2) == -2);
  CHECK(ap(E37, 5) == -2);
  CHECK_THROWS_AS(ap(E37, 37), BadReductionPrime);
  for (auto E : {E37, curve({0, -1, 1, -10, -20}, 11), curve({1, -1, 1, 0, 0}, 53), curve({0, 1, 1, 0, 0}, 43)})
    for (unsigned long q = 2; q < 60; ++q) {
      if (!is_prime(q)) continue;
      long t = trace_of_frobenius(E, q);
      CHECK(t == static_cast<long>(q) - brute_count(E, static_cast<long>(q)));
      if (E.conductor % q != 0) CHECK(t * t <= 4 * static_cast<long>(q));
    }
}

TEST_CASE("reduction types and supersingular fixtures") {
  CHECK(reduction_type(E37, 5) == ReductionType::GoodOrdinary);
  CHECK(reduction_type(E37, 37) == ReductionType::Multiplicative);
  CHECK(supersingular_primes(E37, 5, 50).front() == 17);
  CHECK(supersingular_primes(curve({0, 1, 1, 0, 0}, 43), 5, 50).front() == 7);
  CHECK(supersingular_primes(curve({1, -1, 1, 0, 0}, 53), 5, 50).front() == 5);
  CHECK(supersingular_primes(curve({0, -1, 1, -10, -20}, 11), 5, 50).front() == 19);
  CHECK(reduction_type(E37, 17) == ReductionType::GoodSupersingular);
  CHECK(reduction_type(curve({0, -1, 1, -7, 10}, 121), 11) == ReductionType::Additive);
}

TEST_CASE("formal group") {
  for (auto E : {E37, curve({1, -1, 1, 0, 0}, 53), curve({0, -1, 1, -10, -20}, 11), curve({1, 0, 1, 4, -6}, 14)}) {
    auto L = formal_log(E, 20);
    CHECK(L.coeffs[0] == 0);
    CHECK(L.coeffs[1] == 1);
    auto ex = formal_exp(L);
    auto id = series_compose(ex, L.coeffs, 20);
    for (long k = 0; k <= 20; ++k) CHECK(id[k] == (k == 1 ? 1 : 0));
    CHECK(invariant_differential(E, 20) == invariant_differential_alt(E, 20));
    for (long k = 1; k <= 20; ++k) CHECK(Rat(L.coeffs[k] * k).get_den() == 1);
  }
}

TEST_CASE("p-adic logarithm of points") {
  auto P = make_point(E37, 0, 0);
  for (unsigned long p : {5ul, 7ul, 17ul}) {
    auto l1 = padic_log_point(E37, P, p, 12);
    CHECK(l1.precision() == 12);
    for (long n = 2; n <= 5; ++n) {
      auto ln = padic_log_point(E37, scalar_mul(E37, n, P), p, 12);
      CHECK(ln.equals(l1 * Rat(n)));
    }
    CHECK(padic_log_point(E37, P, p, 12, 3).equals(l1));
    CHECK(padic_log_point(E37, P, p, 6).equals(padic_log_point(E37, P, p, 20)));
  }
  CHECK_THROWS_AS(padic_log_point(E37, CurvePoint::at_infinity(), 5, 10), TorsionPoint);
}
