#include "mofa/error.hpp"

namespace mofa {

std::string_view to_string(ErrorKind kind)
{
    switch (kind) {
    case ErrorKind::NotInGroup: return "NotInGroup";
    case ErrorKind::NotLinearMotion: return "NotLinearMotion";
    case ErrorKind::ExceptionalPoint: return "ExceptionalPoint";
    case ErrorKind::NotOnStudyQuadric: return "NotOnStudyQuadric";
    case ErrorKind::NonRealNorm: return "NonRealNorm";
    case ErrorKind::NonInvertibleLeading: return "NonInvertibleLeading";
    case ErrorKind::ZeroNorm: return "ZeroNorm";
    case ErrorKind::NonInvertibleDivisorLeading: return "NonInvertibleDivisorLeading";
    case ErrorKind::DivisionByZero: return "DivisionByZero";
    case ErrorKind::NotNonnegative: return "NotNonnegative";
    case ErrorKind::OddDegree: return "OddDegree";
    case ErrorKind::ConstantRemainder: return "ConstantRemainder";
    case ErrorKind::ExceptionalCase: return "ExceptionalCase";
    case ErrorKind::NotMonic: return "NotMonic";
    case ErrorKind::NotGeneric: return "NotGeneric";
    case ErrorKind::Unbounded: return "Unbounded";
    case ErrorKind::DegeneratePoses: return "DegeneratePoses";
    case ErrorKind::NonGenericConic: return "NonGenericConic";
    case ErrorKind::DegenerateFlip: return "DegenerateFlip";
    case ErrorKind::UnboundedCurve: return "UnboundedCurve";
    case ErrorKind::InsufficientFactorizations: return "InsufficientFactorizations";
    case ErrorKind::NoFactorization: return "NoFactorization";
    case ErrorKind::ClosureMismatch: return "ClosureMismatch";
    case ErrorKind::InvalidLinkGraph: return "InvalidLinkGraph";
    case ErrorKind::SingularParameter: return "SingularParameter";
    case ErrorKind::NotPlanar: return "NotPlanar";
    case ErrorKind::ParseError: return "ParseError";
    }
    return "Unknown";
}

}  // namespace mofa
