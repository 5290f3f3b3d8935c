#pragma once

// Exact integer/rational scalars, dense linear algebra over Q, continued
// fractions and rational reconstruction.

#include <gmpxx.h>

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace prpoint {

using Integer = mpz_class;
// mpq_class keeps numerator/denominator coprime with a positive denominator
// after every arithmetic operation, which is exactly the Rat invariant.
using Rat = mpq_class;
using RatVector = std::vector<Rat>;

Rat make_rat(const Integer& num, const Integer& den);
Rat parse_rat(std::string_view text);
std::string to_string(const Rat& q);
std::string to_string(const Integer& z);

Integer ipow(const Integer& base, unsigned long exp);
// v_p(z); returns a large sentinel for z == 0.
long valuation(const Integer& z, unsigned long p);
long valuation(const Rat& q, unsigned long p);
inline constexpr long kInfiniteValuation = 1L << 40;

Integer lcm_of_denominators(const RatVector& v);

class QMatrix {
 public:
  QMatrix() = default;
  QMatrix(std::size_t rows, std::size_t cols);
  static QMatrix identity(std::size_t n);
  static QMatrix from_rows(const std::vector<RatVector>& rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Rat& operator()(std::size_t r, std::size_t c) { return entries_[r * cols_ + c]; }
  const Rat& operator()(std::size_t r, std::size_t c) const { return entries_[r * cols_ + c]; }

  RatVector row(std::size_t r) const;
  QMatrix transpose() const;
  QMatrix operator*(const QMatrix& other) const;
  RatVector operator*(const RatVector& v) const;
  QMatrix operator-(const QMatrix& other) const;
  QMatrix operator+(const QMatrix& other) const;
  QMatrix scaled(const Rat& s) const;
  bool operator==(const QMatrix& other) const = default;

  // Appends the rows of `other` (same column count).
  void append_rows(const QMatrix& other);

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rat> entries_;
};

// Reduced row echelon form computed with fraction-free (Bareiss) elimination
// on an integer scaling of the input, then normalised over Q.
struct RowEchelon {
  QMatrix reduced;                  // rank x cols, pivot entries equal to 1
  std::vector<std::size_t> pivots;  // pivot column of each row
  std::size_t rank() const { return pivots.size(); }
};

RowEchelon row_echelon(const QMatrix& m);
std::size_t rank(const QMatrix& m);

// Basis of {v : M v = 0}; one vector per non-pivot column.
std::vector<RatVector> kernel_basis(const QMatrix& m);

// Characteristic polynomial coefficients c_0..c_n (monic, c_n = 1), computed
// exactly by the Faddeev-LeVerrier recursion.
std::vector<Rat> charpoly(const QMatrix& m);

// u/v with |u| <= bound, 0 < v <= bound, gcd(v, modulus) = 1 and
// u = x v (mod modulus). Requires 0 <= x < modulus; unique when
// 2 bound^2 < modulus. Throws NoReconstruction.
Rat rational_reconstruct(const Integer& x, const Integer& modulus, const Integer& bound);

// Convergents p_k/q_k of q, ending with q itself.
std::vector<Rat> contfrac_convergents(const Rat& q);

// Best rational approximation with denominator <= max_den (continued
// fraction truncation); used for floating-point reconstruction.
Rat best_rational(long double x, long max_den);

}  // namespace prpoint
