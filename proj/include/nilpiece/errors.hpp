#pragma once

#include <stdexcept>
#include <string>

namespace nilpiece {

/// Base class for every error raised by the library. `code()` is a stable
/// identifier used by the CLI diagnostics.
class Error : public std::runtime_error {
 public:
  Error(std::string code, const std::string& what)
      : std::runtime_error(code + ": " + what), code_(std::move(code)) {}

  const std::string& code() const noexcept { return code_; }

 private:
  std::string code_;
};

#define NILPIECE_DEFINE_ERROR(Name)                                        \
  class Name : public Error {                                              \
   public:                                                                 \
    explicit Name(const std::string& what) : Error(#Name, what) {}         \
  }

NILPIECE_DEFINE_ERROR(ConstructionError);
NILPIECE_DEFINE_ERROR(SizeError);
NILPIECE_DEFINE_ERROR(FieldMismatch);
NILPIECE_DEFINE_ERROR(DivideByZero);
NILPIECE_DEFINE_ERROR(CharacteristicError);
NILPIECE_DEFINE_ERROR(DimensionMismatch);
NILPIECE_DEFINE_ERROR(ContainmentViolation);
NILPIECE_DEFINE_ERROR(NotWellDefined);
NILPIECE_DEFINE_ERROR(InternalInvariantViolation);
NILPIECE_DEFINE_ERROR(NotOGood);
NILPIECE_DEFINE_ERROR(NotInEta);
NILPIECE_DEFINE_ERROR(NotGraded);
NILPIECE_DEFINE_ERROR(ZeroInput);
NILPIECE_DEFINE_ERROR(NotNilpotent);
NILPIECE_DEFINE_ERROR(ParseError);

#undef NILPIECE_DEFINE_ERROR

}  // namespace nilpiece
