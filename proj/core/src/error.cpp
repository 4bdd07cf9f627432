#include "fixspace/error.hpp"

namespace fixspace {

std::string_view errc_name(Errc code) noexcept {
  switch (code) {
    case Errc::NotPrime: return "NotPrime";
    case Errc::DegreeOutOfRange: return "DegreeOutOfRange";
    case Errc::DivisorZero: return "DivisorZero";
    case Errc::NotMonic: return "NotMonic";
    case Errc::NotBijection: return "NotBijection";
    case Errc::DegreeMismatch: return "DegreeMismatch";
    case Errc::GroupTooLarge: return "GroupTooLarge";
    case Errc::NotInGroup: return "NotInGroup";
    case Errc::LiftFailure: return "LiftFailure";
    case Errc::NonIntegerResult: return "NonIntegerResult";
    case Errc::IllTyped: return "IllTyped";
    case Errc::FieldMismatch: return "FieldMismatch";
    case Errc::NotSemisimple: return "NotSemisimple";
    case Errc::Inconclusive: return "Inconclusive";
    case Errc::OrbitTooLarge: return "OrbitTooLarge";
    case Errc::NotInvertible: return "NotInvertible";
    case Errc::NotTransitive: return "NotTransitive";
    case Errc::NotFound: return "NotFound";
    case Errc::Overflow: return "Overflow";
    case Errc::NotIrreducible: return "NotIrreducible";
    case Errc::NotDominant: return "NotDominant";
    case Errc::TooLarge: return "TooLarge";
    case Errc::ZeroTorusValue: return "ZeroTorusValue";
    case Errc::HypothesisViolated: return "HypothesisViolated";
    case Errc::NotRestricted: return "NotRestricted";
    case Errc::Parse: return "Parse";
    case Errc::Io: return "Io";
    case Errc::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

} // namespace fixspace
