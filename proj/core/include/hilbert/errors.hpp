#pragma once

#include <stdexcept>
#include <string>

namespace hilbert {

// Every failure raised by the library derives from MathError so callers (the
// CLI in particular) can report a stable error kind.
class MathError : public std::runtime_error {
 public:
  MathError(std::string kind, const std::string& what)
      : std::runtime_error(kind + ": " + what), kind_(std::move(kind)) {}
  const std::string& kind() const noexcept { return kind_; }

 private:
  std::string kind_;
};

#define HILBERT_DECLARE_ERROR(Name)                                   \
  class Name : public MathError {                                     \
   public:                                                            \
    explicit Name(const std::string& what) : MathError(#Name, what) {} \
  };

HILBERT_DECLARE_ERROR(UnsupportedField)
HILBERT_DECLARE_ERROR(NoUnits)
HILBERT_DECLARE_ERROR(PoleAtNonPositiveInteger)
HILBERT_DECLARE_ERROR(DomainError)
HILBERT_DECLARE_ERROR(ZeroFrequency)
HILBERT_DECLARE_ERROR(PoleAtOne)
HILBERT_DECLARE_ERROR(PoleAtZeroOrOne)
HILBERT_DECLARE_ERROR(ScatteringPole)
HILBERT_DECLARE_ERROR(SingularBasisMatrix)
HILBERT_DECLARE_ERROR(NotConvergent)
HILBERT_DECLARE_ERROR(DegenerateParameters)
HILBERT_DECLARE_ERROR(QuadratureBudgetExceeded)
HILBERT_DECLARE_ERROR(ArithmeticOverflow)

#undef HILBERT_DECLARE_ERROR

}  // namespace hilbert
