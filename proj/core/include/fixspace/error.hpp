#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace fixspace {

enum class Errc {
  NotPrime,
  DegreeOutOfRange,
  DivisorZero,
  NotMonic,
  NotBijection,
  DegreeMismatch,
  GroupTooLarge,
  NotInGroup,
  LiftFailure,
  NonIntegerResult,
  IllTyped,
  FieldMismatch,
  NotSemisimple,
  Inconclusive,
  OrbitTooLarge,
  NotInvertible,
  NotTransitive,
  NotFound,
  Overflow,
  NotIrreducible,
  NotDominant,
  TooLarge,
  ZeroTorusValue,
  HypothesisViolated,
  NotRestricted,
  Parse,
  Io,
  InvalidArgument,
};

std::string_view errc_name(Errc code) noexcept;

// All library failures are reported through this exception; `code()` is the
// machine-checkable part, `what()` carries context for humans.
class Error : public std::runtime_error {
public:
  Error(Errc code, const std::string& detail)
      : std::runtime_error(std::string(errc_name(code)) + ": " + detail),
        code_(code) {}

  Errc code() const noexcept { return code_; }

private:
  Errc code_;
};

} // namespace fixspace
