#include "prpoint/exact.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "prpoint/errors.hpp"

namespace prpoint {

Rat make_rat(const Integer& num, const Integer& den) {
  if (den == 0) throw std::invalid_argument("zero denominator");
  Rat q(num, den);
  q.canonicalize();
  return q;
}

Rat parse_rat(std::string_view text) {
  std::string s(text);
  s.erase(std::remove_if(s.begin(), s.end(), [](char c) { return c == ' ' || c == '+'; }), s.end());
  if (s.empty()) throw std::invalid_argument("empty rational");
  auto slash = s.find('/');
  try {
    if (slash == std::string::npos) return Rat(Integer(s));
    return make_rat(Integer(s.substr(0, slash)), Integer(s.substr(slash + 1)));
  } catch (const std::invalid_argument&) {
    throw std::invalid_argument("malformed rational '" + std::string(text) + "'");
  }
}

std::string to_string(const Rat& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

std::string to_string(const Integer& z) { return z.get_str(); }

Integer ipow(const Integer& base, unsigned long exp) {
  Integer r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), exp);
  return r;
}

long valuation(const Integer& z, unsigned long p) {
  if (z == 0) return kInfiniteValuation;
  Integer pp(p);
  return static_cast<long>(mpz_remove(Integer().get_mpz_t(), z.get_mpz_t(), pp.get_mpz_t()));
}

long valuation(const Rat& q, unsigned long p) {
  if (q == 0) return kInfiniteValuation;
  return valuation(q.get_num(), p) - valuation(q.get_den(), p);
}

Integer lcm_of_denominators(const RatVector& v) {
  Integer l = 1;
  for (const auto& x : v) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.get_den_mpz_t());
  return l;
}

// ---------------------------------------------------------------- QMatrix

QMatrix::QMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), entries_(rows * cols, Rat(0)) {}

QMatrix QMatrix::identity(std::size_t n) {
  QMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

QMatrix QMatrix::from_rows(const std::vector<RatVector>& rows) {
  if (rows.empty()) return QMatrix();
  QMatrix m(rows.size(), rows.front().size());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != m.cols_) throw std::invalid_argument("ragged matrix rows");
    for (std::size_t c = 0; c < m.cols_; ++c) m(r, c) = rows[r][c];
  }
  return m;
}

RatVector QMatrix::row(std::size_t r) const {
  return RatVector(entries_.begin() + static_cast<std::ptrdiff_t>(r * cols_),
                   entries_.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols_));
}

QMatrix QMatrix::transpose() const {
  QMatrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  return t;
}

QMatrix QMatrix::operator*(const QMatrix& o) const {
  if (cols_ != o.rows_) throw std::invalid_argument("matrix shape mismatch");
  QMatrix out(rows_, o.cols_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t k = 0; k < cols_; ++k) {
      const Rat& a = (*this)(r, k);
      if (a == 0) continue;
      for (std::size_t c = 0; c < o.cols_; ++c)
        if (o(k, c) != 0) out(r, c) += a * o(k, c);
    }
  return out;
}

RatVector QMatrix::operator*(const RatVector& v) const {
  if (v.size() != cols_) throw std::invalid_argument("matrix/vector shape mismatch");
  RatVector out(rows_, Rat(0));
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c)
      if ((*this)(r, c) != 0) out[r] += (*this)(r, c) * v[c];
  return out;
}

QMatrix QMatrix::operator-(const QMatrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("matrix shape mismatch");
  QMatrix out(*this);
  for (std::size_t i = 0; i < entries_.size(); ++i) out.entries_[i] -= o.entries_[i];
  return out;
}

QMatrix QMatrix::operator+(const QMatrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("matrix shape mismatch");
  QMatrix out(*this);
  for (std::size_t i = 0; i < entries_.size(); ++i) out.entries_[i] += o.entries_[i];
  return out;
}

QMatrix QMatrix::scaled(const Rat& s) const {
  QMatrix out(*this);
  for (auto& e : out.entries_) e *= s;
  return out;
}

void QMatrix::append_rows(const QMatrix& other) {
  if (rows_ == 0 && cols_ == 0) {
    *this = other;
    return;
  }
  if (other.cols_ != cols_) throw std::invalid_argument("column count mismatch");
  entries_.insert(entries_.end(), other.entries_.begin(), other.entries_.end());
  rows_ += other.rows_;
}

// ------------------------------------------------------- elimination

RowEchelon row_echelon(const QMatrix& m) {
  const std::size_t rows = m.rows(), cols = m.cols();
  // Integer scaling of every row.
  std::vector<std::vector<Integer>> a(rows, std::vector<Integer>(cols));
  for (std::size_t r = 0; r < rows; ++r) {
    Integer l = 1;
    for (std::size_t c = 0; c < cols; ++c)
      mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), m(r, c).get_den_mpz_t());
    for (std::size_t c = 0; c < cols; ++c) a[r][c] = m(r, c).get_num() * (l / m(r, c).get_den());
  }

  // Fraction-free forward elimination. Every entry stays a minor of the
  // input, so the division by the previous pivot is exact.
  std::vector<std::size_t> pivots;
  Integer prev = 1;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t piv = rows;
    for (std::size_t i = r; i < rows; ++i)
      if (a[i][c] != 0) {
        piv = i;
        break;
      }
    if (piv == rows) continue;
    std::swap(a[piv], a[r]);
    const Integer pv = a[r][c];
    for (std::size_t i = r + 1; i < rows; ++i) {
      const Integer f = a[i][c];
      for (std::size_t j = c + 1; j < cols; ++j) {
        if (f == 0) {
          if (a[i][j] == 0) continue;
          a[i][j] = pv * a[i][j];
        } else {
          a[i][j] = pv * a[i][j] - f * a[r][j];
        }
        mpz_divexact(a[i][j].get_mpz_t(), a[i][j].get_mpz_t(), prev.get_mpz_t());
      }
      a[i][c] = 0;
    }
    prev = pv;
    pivots.push_back(c);
    ++r;
  }

  // Backward elimination on the pivot rows, integer-only with content
  // removal to keep entries small.
  const std::size_t rk = pivots.size();
  auto strip_content = [&](std::vector<Integer>& row) {
    Integer g = 0;
    for (const auto& x : row)
      if (x != 0) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
    if (g > 1)
      for (auto& x : row)
        if (x != 0) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), g.get_mpz_t());
  };
  for (std::size_t i = 0; i < rk; ++i) strip_content(a[i]);
  for (std::size_t ii = rk; ii-- > 0;) {
    const std::size_t c = pivots[ii];
    for (std::size_t k = 0; k < ii; ++k) {
      if (a[k][c] == 0) continue;
      const Integer f = a[k][c];
      const Integer pv = a[ii][c];
      for (std::size_t j = 0; j < cols; ++j) {
        if (a[ii][j] == 0 && a[k][j] == 0) continue;
        a[k][j] = pv * a[k][j] - f * a[ii][j];
      }
      strip_content(a[k]);
    }
  }

  RowEchelon out;
  out.pivots = pivots;
  out.reduced = QMatrix(rk, cols);
  for (std::size_t i = 0; i < rk; ++i) {
    const Integer pv = a[i][pivots[i]];
    for (std::size_t j = 0; j < cols; ++j)
      if (a[i][j] != 0) out.reduced(i, j) = make_rat(a[i][j], pv);
  }
  return out;
}

std::size_t rank(const QMatrix& m) { return row_echelon(m).rank(); }

std::vector<RatVector> kernel_basis(const QMatrix& m) {
  const std::size_t cols = m.cols();
  const RowEchelon ech = row_echelon(m);
  std::vector<bool> is_pivot(cols, false);
  for (auto c : ech.pivots) is_pivot[c] = true;
  std::vector<RatVector> basis;
  for (std::size_t f = 0; f < cols; ++f) {
    if (is_pivot[f]) continue;
    RatVector v(cols, Rat(0));
    v[f] = 1;
    for (std::size_t i = 0; i < ech.rank(); ++i) v[ech.pivots[i]] = -ech.reduced(i, f);
    basis.push_back(std::move(v));
  }
  return basis;
}

std::vector<Rat> charpoly(const QMatrix& m) {
  const std::size_t n = m.rows();
  if (n != m.cols()) throw std::invalid_argument("charpoly needs a square matrix");
  std::vector<Rat> c(n + 1, Rat(0));
  c[n] = 1;
  QMatrix mk(n, n);  // M_0 = 0
  for (std::size_t k = 1; k <= n; ++k) {
    QMatrix next = m * mk;
    for (std::size_t i = 0; i < n; ++i) next(i, i) += c[n - k + 1];
    mk = next;
    Rat tr = 0;
    QMatrix am = m * mk;
    for (std::size_t i = 0; i < n; ++i) tr += am(i, i);
    c[n - k] = -tr / Rat(static_cast<long>(k));
  }
  return c;
}

// ------------------------------------------------ reconstruction

Rat rational_reconstruct(const Integer& x, const Integer& modulus, const Integer& bound) {
  if (modulus <= 0 || x < 0 || x >= modulus) throw std::invalid_argument("residue out of range");
  if (bound <= 0) throw std::invalid_argument("bound must be positive");
  // Half-extended Euclid on (modulus, x): invariant r_i = t_i x (mod modulus).
  Integer r0 = modulus, r1 = x, t0 = 0, t1 = 1;
  while (r1 > bound) {
    Integer q = r0 / r1;
    Integer r2 = r0 - q * r1;
    Integer t2 = t0 - q * t1;
    r0 = r1;
    r1 = r2;
    t0 = t1;
    t1 = t2;
  }
  Integer u = r1, v = t1;
  if (v < 0) {
    u = -u;
    v = -v;
  }
  if (v == 0 || v > bound || abs(u) > bound) throw NoReconstruction("no u/v within bound " + bound.get_str());
  Integer g;
  mpz_gcd(g.get_mpz_t(), v.get_mpz_t(), modulus.get_mpz_t());
  if (g != 1) throw NoReconstruction("denominator shares a factor with the modulus");
  Integer check = (u - x * v) % modulus;
  if (check != 0) throw NoReconstruction("inconsistent reconstruction");
  return make_rat(u, v);
}

std::vector<Rat> contfrac_convergents(const Rat& q) {
  std::vector<Rat> out;
  Integer a = q.get_num(), b = q.get_den();
  Integer p0 = 0, q0 = 1, p1 = 1, q1 = 0;
  while (true) {
    Integer t;
    Integer r;
    mpz_fdiv_qr(t.get_mpz_t(), r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    Integer p2 = t * p1 + p0, q2 = t * q1 + q0;
    p0 = p1;
    q0 = q1;
    p1 = p2;
    q1 = q2;
    out.push_back(make_rat(p1, q1));
    if (r == 0) break;
    a = b;
    b = r;
  }
  return out;
}

Rat best_rational(long double x, long max_den) {
  // Walk the convergents of x; keep the last one whose denominator fits.
  long double rem = x;
  long long p0 = 0, q0 = 1, p1 = 1, q1 = 0;
  for (int iter = 0; iter < 64; ++iter) {
    long double fl = std::floor(rem);
    if (std::fabs(fl) > 1e15L) break;
    long long t = static_cast<long long>(fl);
    long long p2 = t * p1 + p0, q2 = t * q1 + q0;
    if (q2 > max_den) break;
    p0 = p1;
    q0 = q1;
    p1 = p2;
    q1 = q2;
    long double frac = rem - fl;
    if (frac < 1e-18L) break;
    rem = 1.0L / frac;
  }
  if (q1 == 0) return Rat(0);
  return make_rat(Integer(static_cast<long>(p1)), Integer(static_cast<long>(q1)));
}

}  // namespace prpoint
