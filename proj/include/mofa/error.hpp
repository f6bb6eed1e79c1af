#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace mofa {

enum class ErrorKind {
    NotInGroup,
    NotLinearMotion,
    ExceptionalPoint,
    NotOnStudyQuadric,
    NonRealNorm,
    NonInvertibleLeading,
    ZeroNorm,
    NonInvertibleDivisorLeading,
    DivisionByZero,
    NotNonnegative,
    OddDegree,
    ConstantRemainder,
    ExceptionalCase,
    NotMonic,
    NotGeneric,
    Unbounded,
    DegeneratePoses,
    NonGenericConic,
    DegenerateFlip,
    UnboundedCurve,
    InsufficientFactorizations,
    NoFactorization,
    ClosureMismatch,
    InvalidLinkGraph,
    SingularParameter,
    NotPlanar,
    ParseError,
};

std::string_view to_string(ErrorKind kind);

/// Domain error carrying a machine-readable kind.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

}  // namespace mofa
