#include "prpoint/padiclfun.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "prpoint/elliptic.hpp"
#include "prpoint/errors.hpp"
#include "prpoint/parallel.hpp"

namespace prpoint {

namespace {

using u128 = unsigned __int128;

int64_t mulmod(int64_t a, int64_t b, int64_t m) {
  return static_cast<int64_t>(static_cast<u128>(a) * static_cast<u128>(b) % static_cast<u128>(m));
}

int64_t powmod(int64_t b, uint64_t e, int64_t m) {
  int64_t r = 1 % m;
  b %= m;
  while (e) {
    if (e & 1) r = mulmod(r, b, m);
    b = mulmod(b, b, m);
    e >>= 1;
  }
  return r;
}

int64_t checked_power(unsigned long p, long k) {
  int64_t r = 1;
  for (long i = 0; i < k; ++i) {
    if (r > (int64_t{1} << 62) / static_cast<int64_t>(p)) throw OutOfScope("p^" + std::to_string(k) + " exceeds 64 bits");
    r *= static_cast<int64_t>(p);
  }
  return r;
}

long floor_log(unsigned long p, long k) {
  long r = 0;
  for (long q = static_cast<long>(p); q <= k; q *= static_cast<long>(p)) ++r;
  return r;
}

}  // namespace

Rat MazurTateElement::coefficient(int64_t a) const { return make_rat(scaled_coefficient(a), den_); }

int64_t MazurTateElement::scaled_coefficient(int64_t a) const {
  if (!has_full_table()) throw OutOfScope("theta_" + std::to_string(n_) + " was built without its full table");
  a %= modulus_;
  if (a < 0) a += modulus_;
  return full_[static_cast<std::size_t>(a)];
}

MazurTateElement mazur_tate(const PlusSymbol& phi, unsigned long p, long n, const MazurTateOptions& opts) {
  if (n < -1) throw std::invalid_argument("depth must be at least -1");
  if (!is_prime(p)) throw BadPrime(std::to_string(p) + " is not prime");
  if (phi.space().level() % static_cast<long>(p) == 0) throw BadReductionPrime("p divides the level");
  MazurTateElement t;
  t.p_ = p;
  t.n_ = n;
  t.den_ = phi.denominator();
  if (n == -1) {
    int64_t v = phi.eval_scaled(0, 1);
    t.full_ = {v};
    t.proj_ = {v};
    return t;
  }
  const int64_t M = checked_power(p, n + 1);
  const int64_t pn = M / static_cast<int64_t>(p);
  const int64_t gamma = (1 + static_cast<int64_t>(p)) % M;
  t.modulus_ = M;
  std::vector<int64_t> teich;
  for (unsigned long k = 1; k < p; ++k) teich.push_back(powmod(static_cast<int64_t>(k), static_cast<uint64_t>(pn), M));
  if (M <= opts.full_table_limit) t.full_.assign(static_cast<std::size_t>(M), 0);
  t.proj_.assign(static_cast<std::size_t>(pn), 0);
  int64_t* full = t.full_.empty() ? nullptr : t.full_.data();
  parallel_chunks(static_cast<std::size_t>(pn), opts.threads, [&](std::size_t lo, std::size_t hi, unsigned) {
    int64_t g = powmod(gamma, lo, M);
    for (std::size_t j = lo; j < hi; ++j) {
      int64_t s = 0;
      for (int64_t w : teich) {
        int64_t a = mulmod(w, g, M);
        int64_t v = phi.eval_scaled(a, M);
        s += v;
        if (full) full[a] = v;
      }
      t.proj_[j] = s;
      g = mulmod(g, gamma, M);
    }
  });
  return t;
}

std::vector<Rat> norm_relation_defect(const PlusSymbol& phi, unsigned long p, long n, const MazurTateOptions& opts) {
  if (n < 1) throw std::invalid_argument("the norm relation needs n >= 1");
  const long a_p = ap(phi.curve(), p);
  MazurTateElement top = mazur_tate(phi, p, n, opts);
  MazurTateElement mid = mazur_tate(phi, p, n - 1, opts);
  MazurTateElement low = mazur_tate(phi, p, n - 2, opts);
  const int64_t Mn = mid.modulus();
  const int64_t M = top.modulus();
  std::vector<Rat> defect(static_cast<std::size_t>(Mn), 0);
  for (int64_t b = 0; b < Mn; ++b) {
    if (b % static_cast<int64_t>(p) == 0) continue;
    int64_t s = 0;
    for (int64_t a = b; a < M; a += Mn) s += top.scaled_coefficient(a);
    int64_t rhs = a_p * mid.scaled_coefficient(b) - low.scaled_coefficient(b % low.modulus());
    defect[static_cast<std::size_t>(b)] = make_rat(s - rhs, top.denominator());
  }
  return defect;
}

PadicElement PadicLSeries::evaluate(const PadicElement& T) const {
  PadicElement r = coeffs_.back();
  for (long k = degree() - 1; k >= 0; --k) r = r * T + coeffs_[static_cast<std::size_t>(k)];
  return r;
}

std::pair<PadicElement, PadicElement> supersingular_roots(unsigned long p) {
  PadicElement pi = PadicElement::pi(p);
  return {pi, -pi};
}

PadicElement unit_root(long a_p, unsigned long p, long N) {
  if (a_p % static_cast<long>(p) == 0) throw UnsupportedStabilization("no unit root when p | a_p");
  // Newton on f(X) = X^2 - a_p X + p from X = a_p.
  PadicElement x = PadicElement::from_rat(p, Rat(a_p), N + 2);
  PadicElement ap_el = PadicElement::exact(p, a_p), pp = PadicElement::exact(p, static_cast<long>(p));
  for (long k = 1; k < 2 * (N + 2); k *= 2) {
    PadicElement f = x * x - ap_el * x + pp;
    PadicElement df = x * Rat(2) - ap_el;
    x = x - f / df;
  }
  return x.with_precision(N);
}

long guaranteed_precision2(unsigned long p, long n, long k, long den_valuation, bool supersingular) {
  long loss = floor_log(p, k);
  if (supersingular) return n - 2 - 2 * den_valuation - 2 * loss;
  return 2 * (n - den_valuation - loss);
}

PadicLSeries stabilize(const std::vector<MazurTateElement>& thetas, const PadicElement& root, long a_p,
                       long degree) {
  if (thetas.size() < 2) throw std::invalid_argument("stabilization needs two consecutive depths");
  const MazurTateElement& top = thetas.back();
  const MazurTateElement& prev = thetas[thetas.size() - 2];
  if (prev.depth() + 1 != top.depth() || prev.prime() != top.prime() || top.depth() < 0)
    throw std::invalid_argument("Mazur-Tate elements must have consecutive depths");
  if (degree < 0) throw std::invalid_argument("degree must be nonnegative");
  const unsigned long p = top.prime();
  const long n = top.depth();
  if (root.prime() != p) throw RootMismatch("root lives over a different prime");
  const bool supersingular = a_p % static_cast<long>(p) == 0;
  PadicElement check = root * root - root * Rat(a_p) + PadicElement::exact(p, static_cast<long>(p), root.ramification());
  if (!check.is_zero()) throw RootMismatch(root.to_string() + " is not a root of X^2 - a_p X + p");
  if (!supersingular && root.valuation2() != 0)
    throw UnsupportedStabilization("the non-unit root at an ordinary prime loses all precision");
  if (top.denominator() != prev.denominator()) throw IncompatibleOperands("theta denominators differ");

  const auto& cur = top.tame_projection();
  const auto& old = prev.tame_projection();
  const std::size_t pn = cur.size();
  const std::size_t pm = old.size();
  const long dv = prpoint::valuation(top.denominator(), p);

  // X_k = sum binom(j, k) cur[j], Y_k = sum binom(j, k) lift[j].
  const std::size_t K = static_cast<std::size_t>(degree) + 1;
  std::vector<Integer> X(K, 0), Y(K, 0), binom(K, 0);
  binom[0] = 1;
  Integer lift_scale = prev.depth() < 0 ? Integer(static_cast<long>(p) - 1) : Integer(1);
  for (std::size_t j = 0; j < pn; ++j) {
    Integer c = cur[j];
    Integer l = Integer(old[j % pm]) * lift_scale;
    for (std::size_t k = 0; k < K; ++k) {
      if (binom[k] == 0) break;
      X[k] += binom[k] * c;
      Y[k] += binom[k] * l;
    }
    for (std::size_t k = K - 1; k >= 1; --k) binom[k] += binom[k - 1];
  }

  PadicElement inv = root.inverse();
  PadicElement s1 = inv.pow(n + 1);
  PadicElement s2 = s1 * inv;
  const int e = root.ramification();
  std::vector<PadicElement> coeffs;
  for (std::size_t k = 0; k < K; ++k) {
    long cap2 = guaranteed_precision2(p, n, static_cast<long>(k), dv, supersingular);
    long work = cap2 / 2 + n + 8;
    PadicElement x = PadicElement::from_rat(p, make_rat(X[k], top.denominator()), work, e);
    PadicElement y = PadicElement::from_rat(p, make_rat(Y[k], top.denominator()), work, e);
    coeffs.push_back((s1 * x - s2 * y).with_precision2(cap2));
  }
  return PadicLSeries(p, root, n, std::move(coeffs));
}

PadicLSeries padic_l_series(const PlusSymbol& phi, unsigned long p, long n, const PadicElement& root, long degree,
                            const MazurTateOptions& opts) {
  std::vector<MazurTateElement> thetas;
  thetas.push_back(mazur_tate(phi, p, n - 1, opts));
  thetas.push_back(mazur_tate(phi, p, n, opts));
  return stabilize(thetas, root, ap(phi.curve(), p), degree);
}

PadicElement derivative_at_triv(const PadicLSeries& series) {
  const unsigned long p = series.prime();
  if (series.degree() < 1) throw PrecisionExhausted("series has no linear term");
  const PadicElement& c1 = series.coefficients()[1];
  long N = std::max<long>(c1.precision2() / 2 + 4, 4);
  if (c1.is_exact()) N = 40;
  PadicElement lg = PadicElement::from_rat(p, Rat(1 + static_cast<long>(p)), N).iwasawa_log();
  if (c1.ramification() == 2) lg = lg.as_ramified();
  return c1 * lg;
}

VanishingOrder order_of_vanishing(const PadicLSeries& series) {
  const auto& c = series.coefficients();
  for (std::size_t k = 0; k < c.size(); ++k)
    if (!c[k].is_zero()) return {static_cast<long>(k), false};
  return {series.degree() + 1, true};
}

}  // namespace prpoint
