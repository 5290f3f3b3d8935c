#pragma once

// Weight-2 modular symbols for Gamma_0(N) via Manin symbols (c:d) in
// P^1(Z/N), with the right action conventions
//   (c:d) sigma = (d:-c),  (c:d) tau = (d:-c-d),  star (c:d) = (-c:d).

#include <cstdint>
#include <memory>
#include <utility>
#include <vector>

#include "prpoint/archlfun.hpp"
#include "prpoint/elliptic.hpp"
#include "prpoint/exact.hpp"

namespace prpoint {

struct ManinRelation {
  std::vector<std::pair<std::size_t, int>> terms;  // (symbol index, coefficient)
};

class ManinSpace {
 public:
  static std::shared_ptr<const ManinSpace> build(long N);

  long level() const { return N_; }
  std::size_t num_symbols() const { return reps_.size(); }
  std::size_t dimension() const { return basis_.size(); }
  const std::vector<std::pair<long, long>>& representatives() const { return reps_; }
  const std::vector<ManinRelation>& relations() const { return relations_; }
  // Generator index of each basis element.
  const std::vector<std::size_t>& basis() const { return basis_; }
  // Coordinates of symbol i in the quotient basis.
  const RatVector& expression(std::size_t i) const { return expr_[i]; }

  // Index of (c:d); requires gcd(c, d, N) = 1.
  std::size_t index(long c, long d) const {
    long cc = c % N_, dd = d % N_;
    if (cc < 0) cc += N_;
    if (dd < 0) dd += N_;
    return static_cast<std::size_t>(table_[static_cast<std::size_t>(cc * N_ + dd)]);
  }

  // Matrix of T_l on the quotient basis (column k = image of basis k).
  // Throws BadLevelPrime for l | N.
  QMatrix hecke_matrix(long l) const;
  QMatrix star_matrix() const;

 private:
  long N_ = 1;
  std::vector<std::pair<long, long>> reps_;
  std::vector<int32_t> table_;
  std::vector<ManinRelation> relations_;
  std::vector<std::size_t> basis_;
  std::vector<RatVector> expr_;
};

// Merel's Heilbronn matrices (a, b, c, d) with ad - bc = l, a > b >= 0,
// d > c >= 0.
std::vector<std::array<long, 4>> heilbronn_matrices(long l);

struct Normalization {
  Rat scalar;                 // applied to the primitive integral eigenvector
  Rat test_cusp;
  Real numeric_ratio = 0;     // Re(period)/Omega divided by the raw value
  Real residual = 0;
  long terms = 0;
  Rat check_cusp;             // auxiliary cusp used as cross-check
  Real check_residual = 0;
};

struct PlusSymbolOptions {
  long hecke_bound = 50;
  long min_terms = 2000;
  Real tolerance = 1e-8L;
  long max_denominator = 1000;
};

class PlusSymbol {
 public:
  // Throws EigenlineNotIsolated, NormalizationMismatch.
  static PlusSymbol build(std::shared_ptr<const ManinSpace> space, const CurveData& E,
                          const PlusSymbolOptions& opts = {});

  const ManinSpace& space() const { return *space_; }
  const CurveData& curve() const { return curve_; }
  const RatVector& symbol_values() const { return values_; }
  const Normalization& normalization() const { return norm_; }
  const std::vector<long>& hecke_primes() const { return hecke_primes_; }

  // Phi({oo -> r}) = [r]^+.
  Rat eval(const Rat& r) const;
  // [a/b]^+ * denominator(), exact, for machine-size a, b > 0.
  int64_t eval_scaled(int64_t a, int64_t b) const;
  const Integer& denominator() const { return den_; }

  // A copy with every value multiplied by s.
  PlusSymbol scaled(const Rat& s) const;

 private:
  void rebuild_scaled_table();

  std::shared_ptr<const ManinSpace> space_;
  CurveData curve_;
  RatVector values_;
  Normalization norm_;
  std::vector<long> hecke_primes_;
  Integer den_ = 1;
  std::vector<int64_t> scaled_;
};

}  // namespace prpoint
