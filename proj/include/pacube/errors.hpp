#pragma once

#include <stdexcept>

namespace pacube {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DimensionMismatch : Error {
    using Error::Error;
};
struct DimensionOutOfRange : Error {
    using Error::Error;
};
struct NotAntichain : Error {
    using Error::Error;
};
struct NotUpClosed : Error {
    using Error::Error;
};
struct ZeroProbabilityCondition : Error {
    using Error::Error;
};
struct DegenerateParameter : Error {
    using Error::Error;
};
struct NotFkg : Error {
    using Error::Error;
};
struct MonotoneCompletionFailed : Error {
    using Error::Error;
};
struct TooManyUnderlying : Error {
    using Error::Error;
};
struct ParseError : Error {
    using Error::Error;
};
struct UsageError : Error {
    using Error::Error;
};

} // namespace pacube
