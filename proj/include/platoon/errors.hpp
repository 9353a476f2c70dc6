#pragma once

#include <stdexcept>
#include <string>

namespace platoon {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define PLATOON_DEFINE_ERROR(Name)          \
  class Name : public Error {               \
   public:                                  \
    using Error::Error;                     \
  }

PLATOON_DEFINE_ERROR(ZeroDenominator);
PLATOON_DEFINE_ERROR(ZeroPolynomial);
PLATOON_DEFINE_ERROR(PoleAtPoint);
PLATOON_DEFINE_ERROR(IllPosed);
PLATOON_DEFINE_ERROR(NonPositiveParameter);
PLATOON_DEFINE_ERROR(ParseError);
PLATOON_DEFINE_ERROR(StabilityCheckFailed);
PLATOON_DEFINE_ERROR(PeakExceedsBudget);
PLATOON_DEFINE_ERROR(SearchExhausted);
PLATOON_DEFINE_ERROR(BandwidthViolation);
PLATOON_DEFINE_ERROR(SingularDiagonal);
PLATOON_DEFINE_ERROR(UnstableEntry);
PLATOON_DEFINE_ERROR(DivergentAtOrigin);
PLATOON_DEFINE_ERROR(InvalidRange);
PLATOON_DEFINE_ERROR(DimensionMismatch);

#undef PLATOON_DEFINE_ERROR

}  // namespace platoon
