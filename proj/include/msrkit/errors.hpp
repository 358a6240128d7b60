#pragma once

#include <stdexcept>
#include <string>

namespace msrkit {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// gf
struct NotPrime : Error { using Error::Error; };
struct NoModulusAvailable : Error { using Error::Error; };
struct DivisionByZero : Error { using Error::Error; };
struct NoOrder3Roots : Error { using Error::Error; };

// linalg
struct DimensionMismatch : Error { using Error::Error; };
struct Singular : Error { using Error::Error; };

// matchings
struct BadIndex : Error { using Error::Error; };
struct TooSmall : Error { using Error::Error; };

// constructions
struct BadLength : Error { using Error::Error; };
struct ZeroLambda : Error { using Error::Error; };
struct ZeroConstant : Error { using Error::Error; };
struct BadCharacteristic : Error { using Error::Error; };
struct FieldTooSmall : Error { using Error::Error; };
struct VerificationFailed : Error { using Error::Error; };
struct NoValidH : Error { using Error::Error; };
struct Infeasible : Error { using Error::Error; };

// verify
struct UnsupportedR : Error { using Error::Error; };

// engine
struct LengthMismatch : Error { using Error::Error; };
struct BadSubset : Error { using Error::Error; };
struct InterferenceSolveFailed : Error { using Error::Error; };

// serialization
struct MalformedInput : Error { using Error::Error; };

} // namespace msrkit
