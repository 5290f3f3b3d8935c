#pragma once

// Point recovery at a good supersingular prime: the square-root argument
// built from the two p-adic L-series, its square root as log_E of a point,
// and identification of that point as lambda * gen.

#include <string>

#include "prpoint/archlfun.hpp"
#include "prpoint/crystalline.hpp"
#include "prpoint/elliptic.hpp"
#include "prpoint/modsym.hpp"
#include "prpoint/padic.hpp"
#include "prpoint/padiclfun.hpp"

namespace prpoint {

// A = delta ((1 - 1/alpha)^-2 L_alpha - (1 - 1/beta)^-2 L_beta) with
// beta = conj(alpha), coerced into Q_p. Throws NotRational.
PadicElement sqrt_argument(const PadicElement& delta, const PadicElement& l_alpha, const PadicElement& l_beta,
                           const PadicElement& alpha);

struct RecoveryOptions {
  long depth = 5;
  long kedlaya_precision = 0;  // 0: depth + 6
  long degree = 2;
  long guard = 1;
  long max_height = 1000;
  bool throw_on_failure = true;
  unsigned threads = 1;
  GZOptions gz;
};

struct RecoveryReport {
  // inputs
  std::string curve;
  unsigned long p = 0;
  long depth = 0;
  long kedlaya_precision = 0;
  long guard = 0;
  CurvePoint gen;

  PadicElement l_alpha, l_beta;  // L'_{p,alpha}(E,1), L'_{p,beta}(E,1)
  long order_alpha = -1, order_beta = -1;
  PadicElement bracket, delta;
  Rat c_e;

  PadicElement A;                // in Q_p
  Rat pi_part_valuation;         // capped at the precision of A
  Rat A_precision;
  int square_sign = 0;           // ell^2 = square_sign * A
  PadicElement ell_plus, ell_minus;
  PadicElement log_gen;

  Rat lambda;                    // ell_plus = lambda log_gen
  long lambda_precision = 0;     // relative digits used for reconstruction
  Rat check_valuation;           // v(v ell_plus - u log_gen), capped at precision

  bool A_rational = false;
  bool A_square = false;
  bool lambda_reconstructed = false;
  bool exact_multiple_check = false;

  PadicElement observed_ratio;   // A / (lambda log_gen)^2
  Rat theorem_scalar;            // -(1 + 1/p) C(E)
  std::string diagnostic;
};

// Fills the square root and reconstruction fields of a report whose A,
// curve and generator are set. Uses the first of A, -A whose square root
// reconstructs. With throw_on_failure,
// throws NotASquare or ReconstructionFailed.
void recover_lambda(RecoveryReport& report, const CurveData& E, const RecoveryOptions& opts);

// The full pipeline from the plus symbol. Throws OutOfScope unless a_p = 0
// and both series vanish at T = 0.
RecoveryReport recover_point(const PlusSymbol& phi, const CurvePoint& gen, unsigned long p,
                             const RecoveryOptions& opts = {});

enum class VerdictKind { Pass, PassExact, Fail, Skipped };
std::string to_string(VerdictKind v);

struct Verdict {
  VerdictKind kind = VerdictKind::Skipped;
  Rat constant;        // A / (lambda log_gen)^2, reconstructed
  Rat theorem_scalar;  // -(1 + 1/p) C(E)
  Rat normalization;   // constant / theorem_scalar
  std::string detail;
};

Verdict verify_supersingular_identity(const RecoveryReport& report, const GZConstant& c_e, long max_height = 1000);

}  // namespace prpoint
