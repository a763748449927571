#pragma once

#include <stdexcept>

namespace waxsolve {

// Base class for every failure raised by this library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

#define WAXSOLVE_DEFINE_ERROR(Name)     \
    class Name : public Error {         \
    public:                             \
        using Error::Error;             \
    }

WAXSOLVE_DEFINE_ERROR(DimensionMismatch);
WAXSOLVE_DEFINE_ERROR(SingularFactorization);
WAXSOLVE_DEFINE_ERROR(SingularResolvent);
WAXSOLVE_DEFINE_ERROR(DegenerateDenominator);
WAXSOLVE_DEFINE_ERROR(BracketFailure);
WAXSOLVE_DEFINE_ERROR(SecantStall);
WAXSOLVE_DEFINE_ERROR(NoBracket);
WAXSOLVE_DEFINE_ERROR(InvalidDelta);
WAXSOLVE_DEFINE_ERROR(DefectivePair);
WAXSOLVE_DEFINE_ERROR(DeflationBreakdown);
WAXSOLVE_DEFINE_ERROR(NewtonStall);
WAXSOLVE_DEFINE_ERROR(ZeroDerivative);
WAXSOLVE_DEFINE_ERROR(ZeroVector);
WAXSOLVE_DEFINE_ERROR(ParseError);
WAXSOLVE_DEFINE_ERROR(DimensionError);
WAXSOLVE_DEFINE_ERROR(IoError);

#undef WAXSOLVE_DEFINE_ERROR

} // namespace waxsolve
