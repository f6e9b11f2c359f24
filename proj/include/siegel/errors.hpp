#pragma once

#include <stdexcept>
#include <string>

namespace siegel {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DegenerateError : Error { using Error::Error; };          // det = 0 where nondegenerate required
struct OddRankError : Error { using Error::Error; };
struct EvenRankError : Error { using Error::Error; };
struct EvenPrimeError : Error { using Error::Error; };
struct NotRationalError : Error { using Error::Error; };
struct NonIntegralQuotientError : Error { using Error::Error; };
struct MissingIndexError : Error { using Error::Error; };
struct InvalidParamsError : Error { using Error::Error; };
struct PoleAtOneError : Error { using Error::Error; };
struct NotAUnitError : Error { using Error::Error; };
struct NotOnePlusPError : Error { using Error::Error; };
struct PrecisionExhaustedError : Error { using Error::Error; };
struct ValidationFailedError : Error { using Error::Error; };
struct PoleNotCancelledError : Error { using Error::Error; };
struct CostLimitError : Error { using Error::Error; };           // enumeration would exceed the budget

} // namespace siegel
