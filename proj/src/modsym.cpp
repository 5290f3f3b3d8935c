#include "prpoint/modsym.hpp"

#include <cmath>
#include <complex>
#include <numeric>

#include "prpoint/errors.hpp"

namespace prpoint {

namespace {

constexpr Real kPi = 3.141592653589793238462643383279502884L;

long floor_div(long a, long b) {
  long q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

void add_into(RatVector& acc, const RatVector& v, const Rat& s = 1) {
  for (std::size_t i = 0; i < v.size(); ++i)
    if (v[i] != 0) acc[i] += s * v[i];
}

}  // namespace

// ------------------------------------------------------------- the space

std::shared_ptr<const ManinSpace> ManinSpace::build(long N) {
  if (N < 1) throw std::invalid_argument("level must be positive");
  auto sp = std::make_shared<ManinSpace>();
  ManinSpace& M = *sp;
  M.N_ = N;
  M.table_.assign(static_cast<std::size_t>(N * N), -1);
  std::vector<long> units;
  for (long u = 1; u <= N; ++u)
    if (std::gcd(u, N) == 1) units.push_back(u % N);
  for (long c = 0; c < N; ++c)
    for (long d = 0; d < N; ++d) {
      if (std::gcd(std::gcd(c, d), N) != 1 && N > 1) continue;
      if (M.table_[static_cast<std::size_t>(c * N + d)] >= 0) continue;
      const auto k = static_cast<int32_t>(M.reps_.size());
      M.reps_.emplace_back(c, d);
      for (long u : units) M.table_[static_cast<std::size_t>((u * c % N) * N + (u * d % N))] = k;
    }
  const std::size_t mu = M.reps_.size();

  // Two-term relations: x + x sigma = 0, solved by sign bookkeeping.
  std::vector<long> var(mu, -2);
  std::vector<int> sign(mu, 0);
  long nv = 0;
  for (std::size_t i = 0; i < mu; ++i) {
    auto [c, d] = M.reps_[i];
    std::size_t j = M.index(d, -c);
    ManinRelation rel;
    if (j == i) {
      rel.terms = {{i, 2}};
    } else {
      rel.terms = {{i, 1}, {j, 1}};
    }
    M.relations_.push_back(rel);
    if (var[i] != -2) continue;
    if (j == i) {
      var[i] = -1;
    } else {
      var[i] = nv;
      sign[i] = 1;
      var[j] = nv;
      sign[j] = -1;
      ++nv;
    }
  }

  // Three-term relations x + x tau + x tau^2 = 0 on the surviving variables.
  std::vector<RatVector> rows;
  std::vector<bool> seen(mu, false);
  for (std::size_t i = 0; i < mu; ++i) {
    auto [c, d] = M.reps_[i];
    std::size_t j = M.index(d, -c - d), k = M.index(-c - d, c);
    ManinRelation rel;
    for (std::size_t s : {i, j, k}) {
      bool merged = false;
      for (auto& t : rel.terms)
        if (t.first == s) {
          ++t.second;
          merged = true;
        }
      if (!merged) rel.terms.emplace_back(s, 1);
    }
    M.relations_.push_back(rel);
    if (seen[i]) continue;
    seen[i] = seen[j] = seen[k] = true;
    RatVector row(static_cast<std::size_t>(nv), Rat(0));
    bool nonzero = false;
    for (std::size_t s : {i, j, k})
      if (var[s] >= 0) {
        row[static_cast<std::size_t>(var[s])] += sign[s];
        nonzero = true;
      }
    if (nonzero) rows.push_back(std::move(row));
  }

  std::vector<RatVector> var_expr(static_cast<std::size_t>(nv));
  std::vector<std::size_t> free_vars;
  if (nv > 0) {
    RowEchelon ech = rows.empty() ? RowEchelon{QMatrix(0, static_cast<std::size_t>(nv)), {}}
                                  : row_echelon(QMatrix::from_rows(rows));
    std::vector<long> pivot_row(static_cast<std::size_t>(nv), -1);
    for (std::size_t r = 0; r < ech.rank(); ++r) pivot_row[ech.pivots[r]] = static_cast<long>(r);
    for (std::size_t v = 0; v < static_cast<std::size_t>(nv); ++v)
      if (pivot_row[v] < 0) free_vars.push_back(v);
    const std::size_t dim = free_vars.size();
    for (std::size_t f = 0; f < dim; ++f) {
      var_expr[free_vars[f]].assign(dim, Rat(0));
      var_expr[free_vars[f]][f] = 1;
    }
    for (std::size_t v = 0; v < static_cast<std::size_t>(nv); ++v) {
      if (pivot_row[v] < 0) continue;
      var_expr[v].assign(dim, Rat(0));
      for (std::size_t f = 0; f < dim; ++f) var_expr[v][f] = -ech.reduced(static_cast<std::size_t>(pivot_row[v]), free_vars[f]);
    }
  }
  const std::size_t dim = free_vars.size();
  for (std::size_t f : free_vars)
    for (std::size_t i = 0; i < mu; ++i)
      if (var[i] == static_cast<long>(f) && sign[i] == 1) {
        M.basis_.push_back(i);
        break;
      }
  M.expr_.assign(mu, RatVector(dim, Rat(0)));
  for (std::size_t i = 0; i < mu; ++i) {
    if (var[i] < 0) continue;
    M.expr_[i] = var_expr[static_cast<std::size_t>(var[i])];
    if (sign[i] < 0)
      for (auto& x : M.expr_[i]) x = -x;
  }
  return sp;
}

std::vector<std::array<long, 4>> heilbronn_matrices(long l) {
  std::vector<std::array<long, 4>> out;
  for (long a = 1; a <= l; ++a)
    for (long d = 1; d <= l; ++d) {
      long bc = a * d - l;
      if (bc < 0) continue;
      if (bc == 0) {
        if (a * d != l) continue;
        for (long c = 0; c < d; ++c) out.push_back({a, 0, c, d});
        for (long b = 1; b < a; ++b) out.push_back({a, b, 0, d});
        continue;
      }
      for (long b = 1; b < a; ++b)
        if (bc % b == 0 && bc / b < d) out.push_back({a, b, bc / b, d});
    }
  return out;
}

QMatrix ManinSpace::hecke_matrix(long l) const {
  if (N_ % l == 0) throw BadLevelPrime("T_" + std::to_string(l) + " at level " + std::to_string(N_));
  const std::size_t dim = dimension();
  const auto H = heilbronn_matrices(l);
  QMatrix T(dim, dim);
  for (std::size_t k = 0; k < dim; ++k) {
    auto [c, d] = reps_[basis_[k]];
    RatVector col(dim, Rat(0));
    for (const auto& h : H) {
      std::size_t j = index(c * h[0] + d * h[2], c * h[1] + d * h[3]);
      add_into(col, expr_[j]);
    }
    for (std::size_t r = 0; r < dim; ++r) T(r, k) = col[r];
  }
  return T;
}

QMatrix ManinSpace::star_matrix() const {
  const std::size_t dim = dimension();
  QMatrix S(dim, dim);
  for (std::size_t k = 0; k < dim; ++k) {
    auto [c, d] = reps_[basis_[k]];
    const RatVector& e = expr_[index(-c, d)];
    for (std::size_t r = 0; r < dim; ++r) S(r, k) = e[r];
  }
  return S;
}

// ------------------------------------------------------------ plus symbol

namespace {

// Re of 2 pi i times the integral of f from (-d+i)/c to (a+i)/c, where
// ad - bc = 1; equals the period of {oo -> a/c} up to the normalization fixed
// by comparison with the exact symbol.
Real period_real_part(const AnList& an, long a, long c) {
  long inv = 1;
  {
    Integer r;
    mpz_invert(r.get_mpz_t(), Integer(a).get_mpz_t(), Integer(c).get_mpz_t());
    inv = r.get_si();
  }
  const long d = inv;
  auto F = [&](Real x, Real y) {
    std::complex<Real> q = std::polar(std::exp(-2 * kPi * y), 2 * kPi * x);
    std::complex<Real> qn = 1, s = 0;
    for (long n = 1; n <= an.bound; ++n) {
      qn *= q;
      if (an[n] != 0) s += qn * (static_cast<Real>(an[n]) / n);
    }
    return s;
  };
  const Real cc = static_cast<Real>(c);
  auto diff = F(static_cast<Real>(a) / cc, 1 / cc) - F(static_cast<Real>(-d) / cc, 1 / cc);
  return diff.real();
}

}  // namespace

PlusSymbol PlusSymbol::build(std::shared_ptr<const ManinSpace> space, const CurveData& E, const PlusSymbolOptions& opts) {
  const long N = space->level();
  if (E.conductor != N) throw InvalidCurve("conductor " + E.conductor.get_str() + " differs from level " + std::to_string(N));
  PlusSymbol P;
  P.space_ = space;
  P.curve_ = E;
  const std::size_t dim = space->dimension();
  if (dim == 0) throw EigenlineNotIsolated("the space of modular symbols is zero");

  QMatrix stacked = (space->star_matrix() - QMatrix::identity(dim)).transpose();
  std::vector<RatVector> ker = kernel_basis(stacked);
  for (long l = 2; l <= opts.hecke_bound && ker.size() > 1; ++l) {
    if (!is_prime(static_cast<unsigned long>(l)) || N % l == 0) continue;
    const long al = ap(E, static_cast<unsigned long>(l));
    stacked.append_rows((space->hecke_matrix(l) - QMatrix::identity(dim).scaled(al)).transpose());
    P.hecke_primes_.push_back(l);
    ker = kernel_basis(stacked);
  }
  if (ker.size() != 1)
    throw EigenlineNotIsolated("eigenspace has dimension " + std::to_string(ker.size()) + " after Hecke primes <= " +
                               std::to_string(opts.hecke_bound));

  const RatVector& phi = ker[0];
  P.values_.assign(space->num_symbols(), Rat(0));
  for (std::size_t i = 0; i < space->num_symbols(); ++i) {
    const RatVector& e = space->expression(i);
    for (std::size_t k = 0; k < dim; ++k)
      if (e[k] != 0) P.values_[i] += e[k] * phi[k];
  }
  // Primitive integral vector.
  Integer l = lcm_of_denominators(P.values_), g = 0;
  for (auto& v : P.values_) {
    v *= l;
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_num_mpz_t());
  }
  if (g == 0) throw EigenlineNotIsolated("eigen functional vanishes on every symbol");
  for (auto& v : P.values_) v /= g;
  P.rebuild_scaled_table();

  // Pin the scalar against the numerical period at cusps a/c with N | c.
  const Real omega = real_period(E).omega;
  std::vector<std::pair<long, long>> cusps;
  for (long k = 1; k <= 20 && cusps.size() < 2; ++k) {
    const long c = N * k;
    for (long a = 1; a < c && cusps.size() < 2; ++a)
      if (std::gcd(a, c) == 1 && P.eval_scaled(a, c) != 0) cusps.emplace_back(a, c);
  }
  if (cusps.empty()) throw NormalizationMismatch("no cusp with nonzero symbol found");
  const long cmax = std::max(cusps.front().second, cusps.back().second);
  const long B = std::max(opts.min_terms, 8 * cmax + 50);
  const AnList an = anlist(E, B);
  std::vector<Real> ratios;
  for (auto [a, c] : cusps) {
    Rat raw = P.eval(make_rat(a, c));
    ratios.push_back(period_real_part(an, a, c) / omega / static_cast<Real>(raw.get_d()));
  }
  Normalization& nm = P.norm_;
  nm.terms = B;
  nm.test_cusp = make_rat(cusps[0].first, cusps[0].second);
  nm.numeric_ratio = ratios[0];
  nm.scalar = best_rational(ratios[0], opts.max_denominator);
  nm.residual = std::fabs(ratios[0] - static_cast<Real>(nm.scalar.get_d()));
  nm.check_cusp = make_rat(cusps.back().first, cusps.back().second);
  nm.check_residual = std::fabs(ratios.back() - static_cast<Real>(nm.scalar.get_d()));
  if (nm.scalar == 0 || nm.residual > opts.tolerance || nm.check_residual > opts.tolerance)
    throw NormalizationMismatch("period ratio " + std::to_string(static_cast<double>(ratios[0])) +
                                " is not a small rational (residuals " + std::to_string(static_cast<double>(nm.residual)) +
                                ", " + std::to_string(static_cast<double>(nm.check_residual)) + ")");
  for (auto& v : P.values_) v *= nm.scalar;
  P.rebuild_scaled_table();
  return P;
}

void PlusSymbol::rebuild_scaled_table() {
  den_ = lcm_of_denominators(values_);
  scaled_.resize(values_.size());
  for (std::size_t i = 0; i < values_.size(); ++i) {
    Rat s = values_[i] * den_;
    if (!s.get_num().fits_slong_p()) throw std::overflow_error("symbol value does not fit a machine word");
    scaled_[i] = s.get_num().get_si();
  }
}

PlusSymbol PlusSymbol::scaled(const Rat& s) const {
  PlusSymbol out = *this;
  for (auto& v : out.values_) v *= s;
  out.norm_.scalar *= s;
  out.rebuild_scaled_table();
  return out;
}

Rat PlusSymbol::eval(const Rat& r) const {
  const auto conv = contfrac_convergents(r);
  const unsigned long N = static_cast<unsigned long>(space_->level());
  Rat total = 0;
  long qprev = 0;
  for (std::size_t k = 0; k < conv.size(); ++k) {
    long qk = static_cast<long>(mpz_fdiv_ui(conv[k].get_den_mpz_t(), N));
    long c = (k % 2 == 0) ? -qk : qk;
    total += values_[space_->index(c, qprev)];
    qprev = qk;
  }
  return total;
}

int64_t PlusSymbol::eval_scaled(int64_t a, int64_t b) const {
  const long N = space_->level();
  // q_k = t_k q_{k-1} + q_{k-2} mod N with q_{-1} = 0, q_{-2} = 1.
  long qprev = 0, qprev2 = 1 % N;
  int64_t total = 0, x = a, y = b;
  for (std::size_t k = 0;; ++k) {
    int64_t t = floor_div(x, y);
    int64_t r = x - t * y;
    long qk = static_cast<long>((((t % N) + N) % N * qprev + qprev2) % N);
    total += scaled_[space_->index(k % 2 == 0 ? -qk : qk, qprev)];
    qprev2 = qprev;
    qprev = qk;
    if (r == 0) break;
    x = y;
    y = r;
  }
  return total;
}

}  // namespace prpoint
