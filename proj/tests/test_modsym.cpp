#include <numeric>
#include <random>

#include "doctest.h"
#include "prpoint/errors.hpp"
#include "prpoint/modsym.hpp"

using namespace prpoint;

namespace {

CurveData curve(std::array<long, 5> a, long N) {
  return CurveData::make({Integer(a[0]), Integer(a[1]), Integer(a[2]), Integer(a[3]), Integer(a[4])}, Integer(N));
}

int kronecker(long a, long p) {
  return mpz_kronecker(Integer(a).get_mpz_t(), Integer(p).get_mpz_t());
}

// 2g + c - 1 from the classical genus and cusp formulas for X_0(N).
long expected_dimension(long N) {
  long mu = N, nu2 = 1, nu3 = 1, cusps = 0;
  for (auto q : prime_factors(Integer(N))) {
    long qq = static_cast<long>(q);
    mu = mu / qq * (qq + 1);
    nu2 *= (qq == 2) ? 1 : 1 + kronecker(-1, qq);
    nu3 *= (qq == 3) ? 1 : 1 + kronecker(-3, qq);
  }
  if (N % 4 == 0) nu2 = 0;
  if (N % 9 == 0) nu3 = 0;
  for (long d = 1; d <= N; ++d)
    if (N % d == 0) {
      long g = std::gcd(d, N / d), phi = 0;
      for (long k = 1; k <= g; ++k) phi += std::gcd(k, g) == 1;
      cusps += phi;
    }
  long twelve_g = 12 + mu - 3 * nu2 - 4 * nu3 - 6 * cusps;
  REQUIRE(twelve_g % 12 == 0);
  return 2 * (twelve_g / 12) + cusps - 1;
}

Rat eval_poly(const std::vector<Rat>& c, const Rat& x) {
  Rat s = 0;
  for (std::size_t i = c.size(); i-- > 0;) s = s * x + c[i];
  return s;
}

}  // namespace

TEST_CASE("Manin space sizes") {
  auto S11 = ManinSpace::build(11);
  CHECK(S11->num_symbols() == 12);
  CHECK(S11->dimension() == 3);
  auto S1 = ManinSpace::build(1);
  CHECK(S1->num_symbols() == 1);
  CHECK(S1->dimension() == 0);
  for (long N = 2; N <= 120; ++N) {
    auto S = ManinSpace::build(N);
    long mu = N;
    for (auto q : prime_factors(Integer(N))) mu = mu / static_cast<long>(q) * (static_cast<long>(q) + 1);
    CHECK(static_cast<long>(S->num_symbols()) == mu);
    CHECK(static_cast<long>(S->dimension()) == expected_dimension(N));
  }
}

TEST_CASE("relations vanish in the quotient") {
  for (long N : {11, 37, 54, 64, 90}) {
    auto S = ManinSpace::build(N);
    for (const auto& rel : S->relations()) {
      RatVector sum(S->dimension(), Rat(0));
      for (auto [i, c] : rel.terms)
        for (std::size_t k = 0; k < sum.size(); ++k) sum[k] += c * S->expression(i)[k];
      for (auto& x : sum) CHECK(x == 0);
    }
  }
}

TEST_CASE("Hecke operators") {
  auto S = ManinSpace::build(11);
  auto T2 = S->hecke_matrix(2), T3 = S->hecke_matrix(3);
  CHECK(T2 * T3 == T3 * T2);
  auto cp = charpoly(T2);
  CHECK(eval_poly(cp, -2) == 0);
  CHECK(cp == std::vector<Rat>{-12, -8, 1, 1});  // (x + 2)^2 (x - 3)
  CHECK_THROWS_AS(S->hecke_matrix(11), BadLevelPrime);

  auto S37 = ManinSpace::build(37);
  auto c37 = charpoly(S37->hecke_matrix(2));
  // 37a (a_2 = -2), 37b (a_2 = 0), Eisenstein 3
  CHECK(c37 == std::vector<Rat>{0, 0, -12, -8, 1, 1});
  auto T5 = S37->hecke_matrix(5), T7 = S37->hecke_matrix(7);
  CHECK(T5 * T7 == T7 * T5);
  CHECK(S37->star_matrix() * S37->star_matrix() == QMatrix::identity(S37->dimension()));
}

TEST_CASE("plus symbol for 11a") {
  auto E = curve({0, -1, 1, -10, -20}, 11);
  auto P = PlusSymbol::build(ManinSpace::build(11), E);
  CHECK(P.eval(0) == Rat(1, 5));
  std::vector<Rat> fifths;
  for (long a = 0; a < 5; ++a) fifths.push_back(P.eval(make_rat(a, 5)));
  CHECK(fifths == std::vector<Rat>{Rat(1, 5), Rat(6, 5), Rat(-13, 10), Rat(-13, 10), Rat(6, 5)});
  // T_5 {oo -> 0} = sum_j {oo -> j/5} + {oo -> 0}, a_5 = 1
  Rat s = 0;
  for (auto& v : fifths) s += v;
  CHECK(s == ap(E, 5) * P.eval(0) - P.eval(0));
  CHECK(P.normalization().residual < 1e-8L);
}

TEST_CASE("plus symbols across curves") {
  struct Fx {
    std::array<long, 5> a;
    long N;
    bool rank1;
  };
  const Fx fixtures[] = {{{0, 0, 1, -1, 0}, 37, true},   {{0, 1, 1, 0, 0}, 43, true},   {{1, -1, 1, 0, 0}, 53, true},
                         {{1, 0, 1, 4, -6}, 14, false},  {{0, 0, 1, 0, -7}, 27, false}, {{1, 0, 0, -1, 0}, 65, true},
                         {{0, -1, 1, -2, 2}, 57, true},  {{1, -1, 0, -1, 1}, 58, true}, {{1, 0, 0, -2, 1}, 61, true}};
  std::mt19937 rng(17);
  for (const auto& fx : fixtures) {
    auto E = curve(fx.a, fx.N);
    auto P = PlusSymbol::build(ManinSpace::build(fx.N), E);
    CAPTURE(fx.N);
    if (fx.rank1) CHECK(P.eval(0) == 0);
    else CHECK(P.eval(0) != 0);
    std::uniform_int_distribution<long> num(-500, 500), den(1, 300);
    for (int t = 0; t < 20; ++t) {
      Rat r = make_rat(num(rng), den(rng));
      CHECK(P.eval(r) == P.eval(-r));
      CHECK(P.eval(r) == P.eval(r + 1));
      CHECK(P.eval(r) * P.denominator() == Rat(P.eval_scaled(r.get_num().get_si(), r.get_den().get_si())));
      // {oo -> g r} = {oo -> g oo} + g {oo -> r} for g in Gamma_0(N)
      long c = fx.N * den(rng), a = 1 + 2 * den(rng);
      while (std::gcd(a, c) != 1) ++a;
      Integer ai;
      mpz_invert(ai.get_mpz_t(), Integer(a).get_mpz_t(), Integer(c).get_mpz_t());
      Integer d = ai, b = (a * d - 1) / c;
      Rat gr = (Rat(a) * r + Rat(b)) / (Rat(c) * r + Rat(d));
      CHECK(P.eval(gr) == P.eval(make_rat(a, c)) + P.eval(r));
      for (long l : {2L, 3L, 5L, 7L}) {
        if (fx.N % l == 0) continue;
        Rat s = P.eval(r * l);
        for (long j = 0; j < l; ++j) s += P.eval((r + j) / l);
        CHECK(s == ap(E, static_cast<unsigned long>(l)) * P.eval(r));
      }
    }
  }
}

TEST_CASE("denominators stay bounded in p-power cusps") {
  auto E = curve({1, -1, 1, 0, 0}, 53);
  auto P = PlusSymbol::build(ManinSpace::build(53), E);
  for (long pn : {5L, 25L, 125L, 625L, 3125L})
    for (long a = 1; a < pn; ++a)
      if (a % 5) CHECK((P.denominator() % P.eval(make_rat(a, pn)).get_den()) == 0);
}
