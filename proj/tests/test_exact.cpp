#include <random>

#include "doctest.h"
#include "prpoint/errors.hpp"
#include "prpoint/exact.hpp"

using namespace prpoint;

TEST_CASE("kernel of small matrices") {
  CHECK(kernel_basis(QMatrix::identity(2)).empty());
  CHECK(kernel_basis(QMatrix(2, 2)).size() == 2);
  auto k = kernel_basis(QMatrix::from_rows({{1, 2}, {2, 4}}));
  REQUIRE(k.size() == 1);
  CHECK(k[0][0] == -2 * k[0][1]);
}

TEST_CASE("kernel vectors are annihilated") {
  std::mt19937 rng(7);
  std::uniform_int_distribution<int> d(-3, 3);
  for (int trial = 0; trial < 50; ++trial) {
    QMatrix m(5, 8);
    for (std::size_t r = 0; r < 5; ++r)
      for (std::size_t c = 0; c < 8; ++c) m(r, c) = make_rat(d(rng), 1 + (d(rng) + 3));
    // force a dependency
    for (std::size_t c = 0; c < 8; ++c) m(4, c) = m(0, c) * Rat(2, 3) - m(1, c);
    auto k = kernel_basis(m);
    CHECK(k.size() == 8 - rank(m));
    CHECK(k.size() >= 4);
    for (auto& v : k)
      for (auto& x : m * v) CHECK(x == 0);
  }
}

TEST_CASE("charpoly") {
  auto c = charpoly(QMatrix::from_rows({{2, 1}, {1, 2}}));
  CHECK(c == std::vector<Rat>{3, -4, 1});
}

TEST_CASE("rational reconstruction") {
  Integer m = ipow(5, 6);
  Integer inv;
  mpz_invert(inv.get_mpz_t(), Integer(3).get_mpz_t(), m.get_mpz_t());
  Integer x = (7 * inv) % m;
  CHECK(rational_reconstruct(x, m, 100) == Rat(7, 3));
  CHECK(rational_reconstruct(5, 1000003, 100) == 5);
  // 500000 * 2 = -3 mod 10^6+3 (exhaustive search over v <= 10)
  CHECK(rational_reconstruct(500000, 1000003, 10) == Rat(-3, 2));
  CHECK_THROWS_AS(rational_reconstruct(500007, 1000003, 10), NoReconstruction);

  std::mt19937 rng(11);
  Integer M = 1000003;
  std::uniform_int_distribution<int> du(-700, 700), dv(1, 700);
  for (int i = 0; i < 500; ++i) {
    Rat q(du(rng), dv(rng));
    q.canonicalize();
    Integer vi;
    mpz_invert(vi.get_mpz_t(), q.get_den_mpz_t(), M.get_mpz_t());
    Integer r = q.get_num() * vi % M;
    if (r < 0) r += M;
    CHECK(rational_reconstruct(r, M, 700) == q);
  }
}

TEST_CASE("convergents") {
  CHECK(contfrac_convergents(Rat(10, 7)) == std::vector<Rat>{1, Rat(3, 2), Rat(10, 7)});
  CHECK(contfrac_convergents(Rat(4)) == std::vector<Rat>{4});
  CHECK(contfrac_convergents(Rat(0)) == std::vector<Rat>{0});
  CHECK(contfrac_convergents(Rat(-7, 3)).back() == Rat(-7, 3));

  std::mt19937 rng(3);
  std::uniform_int_distribution<long> d(-100000, 100000), e(1, 100000);
  for (int i = 0; i < 1000; ++i) {
    Rat q(d(rng), e(rng));
    q.canonicalize();
    auto cs = contfrac_convergents(q);
    CHECK(cs.back() == q);
    for (std::size_t k = 1; k < cs.size(); ++k) {
      Integer det = cs[k].get_num() * cs[k - 1].get_den() - cs[k - 1].get_num() * cs[k].get_den();
      CHECK(abs(det) == 1);
    }
  }
}

TEST_CASE("best rational") {
  CHECK(best_rational(0.2L, 100) == Rat(1, 5));
  CHECK(best_rational(-0.5L + 1e-12L, 100) == Rat(-1, 2));
}
