#pragma once

#include <stdexcept>
#include <string>

namespace realop {

/// Root of the library's exception hierarchy.
///
/// Two branches: InputError for malformed or out-of-domain arguments, and
/// VerdictError for well-formed inputs on which an analysis reaches a
/// negative mathematical conclusion (a matrix that is not positive, an
/// algebra that is not irreducible, ...). The command-line driver maps the
/// branches to distinct exit codes.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct InputError : Error {
  using Error::Error;
};

struct VerdictError : Error {
  using Error::Error;
};

// ---- input errors ----------------------------------------------------------

struct NonFinite : InputError { using InputError::InputError; };
struct NonSquare : InputError { using InputError::InputError; };
struct NotSymmetric : InputError { using InputError::InputError; };
struct DimensionMismatch : InputError { using InputError::InputError; };
struct OddDimension : InputError { using InputError::InputError; };
struct DimensionTooSmall : InputError { using InputError::InputError; };
struct NotProjector : InputError { using InputError::InputError; };
struct MissingGenerators : InputError { using InputError::InputError; };
struct NonPositiveEnergy : InputError { using InputError::InputError; };
struct FunctionUndefinedAtEigenvalue : InputError { using InputError::InputError; };
struct ParseError : InputError { using InputError::InputError; };
struct UnknownProbe : InputError { using InputError::InputError; };
struct UnknownCommand : InputError { using InputError::InputError; };

// ---- verdict errors --------------------------------------------------------

struct TooFarFromIdentity : VerdictError { using VerdictError::VerdictError; };
struct ViolatesConjugation : VerdictError { using VerdictError::VerdictError; };
struct NotPositive : VerdictError { using VerdictError::VerdictError; };
struct NotUnitaryAtSample : VerdictError { using VerdictError::VerdictError; };
struct NotIrreducible : VerdictError { using VerdictError::VerdictError; };
struct UnexpectedCommutantDim : VerdictError { using VerdictError::VerdictError; };
struct NotComplexLinear : VerdictError { using VerdictError::VerdictError; };
struct PrerequisiteOrderFails : VerdictError { using VerdictError::VerdictError; };
struct ZeroProbabilityConditioning : VerdictError { using VerdictError::VerdictError; };
struct NotAState : VerdictError { using VerdictError::VerdictError; };
struct NotCommutingWithStructure : VerdictError { using VerdictError::VerdictError; };
struct NotUnitary : VerdictError { using VerdictError::VerdictError; };
struct NegativeSquaredMass : VerdictError { using VerdictError::VerdictError; };
struct TimeTranslationNotInjective : VerdictError { using VerdictError::VerdictError; };
struct PolarNotComplexStructure : VerdictError { using VerdictError::VerdictError; };
struct NotAntiHermitian : VerdictError { using VerdictError::VerdictError; };

}  // namespace realop
