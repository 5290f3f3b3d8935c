#pragma once

// Frobenius on H^1_dR of y^2 = x^3 + A x + B at a good prime p >= 5
// (Kedlaya), and the eigen-decomposition of the Neron class.
//
// Basis: omega = dx/y, eta = x dx/y on the short model. Matrices act on
// column vectors; column j is the image of basis vector j.

#include <array>

#include "prpoint/archlfun.hpp"
#include "prpoint/elliptic.hpp"
#include "prpoint/padic.hpp"

namespace prpoint {

using PadicVector2 = std::array<PadicElement, 2>;
using PadicMatrix2 = std::array<PadicVector2, 2>;  // [row][column]

struct ShortModel {
  Integer A, B;
  // omega_min = u * omega_short.
  Rat u;
};

// x_s = 36 x + 3 b2, y_s = 108 (2y + a1 x + a3), A = -27 c4, B = -54 c6.
ShortModel short_model(const CurveData& E);

struct KedlayaOptions {
  long series_terms = 0;  // 0: chosen from the precision
  unsigned threads = 1;
};

struct FrobeniusData {
  unsigned long p = 0;
  long precision = 0;
  ShortModel model;
  PadicMatrix2 matrix;
  long series_terms = 0;
  long working_digits = 0;
  long precision_loss = 0;  // digits consumed by divisions during reduction

  PadicElement trace() const { return matrix[0][0] + matrix[1][1]; }
  PadicElement det() const { return matrix[0][0] * matrix[1][1] - matrix[0][1] * matrix[1][0]; }
  PadicVector2 apply(const PadicVector2& v) const;
};

// Throws BadPrime (p < 5, p | disc), PrecisionExhausted.
FrobeniusData kedlaya_frobenius(const CurveData& E, unsigned long p, long m, const KedlayaOptions& opts = {});

// Cup product on the basis, [omega, eta] = 1.
std::array<std::array<Rat, 2>, 2> pairing_matrix(const FrobeniusData& F);
PadicElement pairing(const PadicVector2& x, const PadicVector2& y);

struct EigenData {
  PadicElement alpha, beta;
  PadicVector2 omega_cris;   // the Neron class, u * omega
  PadicVector2 omega_alpha;  // F acts by beta, phi = F/p by 1/alpha
  PadicVector2 omega_beta;
  PadicVector2 omega_star;   // eta-direction representative of D/Fil^0
  PadicElement bracket;      // [omega_beta, omega_alpha]
  PadicElement delta;        // bracket / C(E)
  Rat c_e;
};

// Requires a_p = 0. Throws OutOfScope, DegenerateDecomposition.
EigenData eigen_data(const FrobeniusData& F, const Rat& c_e);
EigenData eigen_data(const FrobeniusData& F, const GZConstant& c_e);

}  // namespace prpoint
