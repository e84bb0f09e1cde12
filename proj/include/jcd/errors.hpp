// errors.hpp — error types thrown across the library
#pragma once

#include <stdexcept>
#include <string>

namespace jcd {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A lower hypergeometric parameter sits on (or too close to) a nonpositive
// integer within the generated coefficient range.
struct SingularLowerParameter : Error {
    using Error::Error;
};

// No upper parameter is a nonpositive integer, so the series does not
// terminate and cannot be evaluated as a polynomial.
struct NotTerminating : Error {
    using Error::Error;
};

// 4a(k+1) is too close to 1: the branch eigenvalues coalesce and the mode
// family degenerates. Such parameters are refused.
struct ExceptionalPoint : Error {
    using Error::Error;
};

// A residue was requested at a power not covered by a truncated series.
struct InsufficientTruncation : Error {
    using Error::Error;
};

struct TraceNotNormalized : Error {
    using Error::Error;
};

struct NegativePopulation : Error {
    using Error::Error;
};

// An imaginary part survived where the result must be real; signals a
// construction bug rather than a data problem.
struct RealityViolation : Error {
    using Error::Error;
};

struct TruncationTooTight : Error {
    using Error::Error;
};

struct GridMismatch : Error {
    using Error::Error;
};

}  // namespace jcd
