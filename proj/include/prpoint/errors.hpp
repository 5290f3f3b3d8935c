#pragma once

#include <stdexcept>
#include <string>

namespace prpoint {

// Base class for every domain error raised by the library. The CLI maps
// subclasses onto exit codes, so keep the hierarchy flat.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define PRPOINT_DEFINE_ERROR(Name)                                   \
  class Name : public Error {                                        \
   public:                                                           \
    explicit Name(const std::string& what) : Error(#Name ": " + what) {} \
  };

// exact
PRPOINT_DEFINE_ERROR(NoReconstruction)
// padic
PRPOINT_DEFINE_ERROR(DivisionByIndistinguishableZero)
PRPOINT_DEFINE_ERROR(OddValuation)
PRPOINT_DEFINE_ERROR(NonResidue)
PRPOINT_DEFINE_ERROR(NotAUnit)
PRPOINT_DEFINE_ERROR(IncompatibleOperands)
// elliptic
PRPOINT_DEFINE_ERROR(PointNotOnCurve)
PRPOINT_DEFINE_ERROR(BadReductionPrime)
PRPOINT_DEFINE_ERROR(TorsionPoint)
PRPOINT_DEFINE_ERROR(InvalidCurve)
// modsym
PRPOINT_DEFINE_ERROR(BadLevelPrime)
PRPOINT_DEFINE_ERROR(EigenlineNotIsolated)
PRPOINT_DEFINE_ERROR(NormalizationMismatch)
// archlfun
PRPOINT_DEFINE_ERROR(InsufficientTerms)
PRPOINT_DEFINE_ERROR(CoordinateOverflow)
PRPOINT_DEFINE_ERROR(ReconstructionFailed)
// padiclfun
PRPOINT_DEFINE_ERROR(RootMismatch)
PRPOINT_DEFINE_ERROR(UnsupportedStabilization)
// crystalline
PRPOINT_DEFINE_ERROR(BadPrime)
PRPOINT_DEFINE_ERROR(PrecisionExhausted)
PRPOINT_DEFINE_ERROR(DegenerateDecomposition)
// recover
PRPOINT_DEFINE_ERROR(NotRational)
PRPOINT_DEFINE_ERROR(NotASquare)
PRPOINT_DEFINE_ERROR(OutOfScope)

#undef PRPOINT_DEFINE_ERROR

}  // namespace prpoint
