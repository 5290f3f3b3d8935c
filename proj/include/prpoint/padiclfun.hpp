#pragma once

// Mazur-Tate elements and the p-adic L-series obtained by stabilizing them.
//
// A unit a of Z/p^{n+1} is written a = w * gamma^j with w a Teichmuller
// representative and gamma = 1 + p, j in [0, p^n). The trivial tame branch
// sums over w; the series variable is T with [gamma^j] -> (1 + T)^j.

#include <cstdint>
#include <utility>
#include <vector>

#include "prpoint/exact.hpp"
#include "prpoint/modsym.hpp"
#include "prpoint/padic.hpp"

namespace prpoint {

struct MazurTateOptions {
  unsigned threads = 1;
  // Keep the full coefficient map only when p^{n+1} is at most this.
  int64_t full_table_limit = int64_t{1} << 22;
};

class MazurTateElement {
 public:
  unsigned long prime() const { return p_; }
  // -1 denotes theta_{-1} = Phi(0) on the trivial group.
  long depth() const { return n_; }
  int64_t modulus() const { return modulus_; }
  // Common denominator: every coefficient is an integer over it.
  const Integer& denominator() const { return den_; }

  bool has_full_table() const { return !full_.empty(); }
  // c_a for a mod p^{n+1}; 0 at non-units. Throws OutOfScope without a full table.
  Rat coefficient(int64_t a) const;
  int64_t scaled_coefficient(int64_t a) const;

  // Entry j is the sum of c_a over a = w gamma^j.
  const std::vector<int64_t>& tame_projection() const { return proj_; }

 private:
  friend MazurTateElement mazur_tate(const PlusSymbol&, unsigned long, long, const MazurTateOptions&);

  unsigned long p_ = 0;
  long n_ = 0;
  int64_t modulus_ = 1;
  Integer den_ = 1;
  std::vector<int64_t> full_;
  std::vector<int64_t> proj_;
};

// theta_n = sum over a in (Z/p^{n+1})^x of [a/p^{n+1}]^+ [a]. Requires p not dividing N.
MazurTateElement mazur_tate(const PlusSymbol& phi, unsigned long p, long n,
                            const MazurTateOptions& opts = {});

// proj(theta_n) - a_p theta_{n-1} + nu(theta_{n-2}) on (Z/p^n)^x, indexed
// by residue. Zero everywhere when the norm relation holds.
std::vector<Rat> norm_relation_defect(const PlusSymbol& phi, unsigned long p, long n,
                                      const MazurTateOptions& opts = {});

class PadicLSeries {
 public:
  PadicLSeries(unsigned long p, PadicElement root, long depth, std::vector<PadicElement> coeffs)
      : p_(p), root_(std::move(root)), n_(depth), coeffs_(std::move(coeffs)) {}

  unsigned long prime() const { return p_; }
  const PadicElement& root() const { return root_; }
  long depth() const { return n_; }
  // Coefficients of T^0 .. T^degree.
  const std::vector<PadicElement>& coefficients() const { return coeffs_; }
  long degree() const { return static_cast<long>(coeffs_.size()) - 1; }

  PadicElement value_at_zero() const { return coeffs_.front(); }
  // The truncated polynomial at T.
  PadicElement evaluate(const PadicElement& T) const;

 private:
  unsigned long p_;
  PadicElement root_;
  long n_;
  std::vector<PadicElement> coeffs_;
};

// alpha = pi, beta = -pi.
std::pair<PadicElement, PadicElement> supersingular_roots(unsigned long p);
// The root of X^2 - a_p X + p that is a unit, to precision N. Throws UnsupportedStabilization when p | a_p.
PadicElement unit_root(long a_p, unsigned long p, long N);

// Guaranteed absolute precision, in half units, of the T^k coefficient at depth n.
long guaranteed_precision2(unsigned long p, long n, long k, long den_valuation, bool supersingular);

// Uses the last two elements of thetas, which must have consecutive depths n - 1, n.
// Throws RootMismatch, UnsupportedStabilization.
PadicLSeries stabilize(const std::vector<MazurTateElement>& thetas, const PadicElement& root, long a_p,
                       long degree = 4);

// mazur_tate at depths n - 1 and n followed by stabilize.
PadicLSeries padic_l_series(const PlusSymbol& phi, unsigned long p, long n, const PadicElement& root,
                            long degree = 4, const MazurTateOptions& opts = {});

// F'(0) log_p(1 + p).
PadicElement derivative_at_triv(const PadicLSeries& series);

struct VanishingOrder {
  long order = 0;
  // All computed coefficients vanish at precision; order is degree + 1 as a bound.
  bool lower_bound = false;
};

VanishingOrder order_of_vanishing(const PadicLSeries& series);

}  // namespace prpoint
