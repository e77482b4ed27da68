#pragma once

#include <stdexcept>
#include <string>

namespace gbentlab {

/// Base of every error raised by the library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Malformed input text (JSON, hex polynomial, table file).
struct ParseError : Error {
    using Error::Error;
};

/// A documented data invariant or operation precondition does not hold.
struct InvariantError : Error {
    using Error::Error;
};

/// Requested enumeration or component count exceeds the configured budget.
struct BudgetError : Error {
    using Error::Error;
};

/// Two independent computation paths disagree. Always an implementation bug.
struct DisagreementError : Error {
    using Error::Error;
};

/// Fixed-width coefficient arithmetic would overflow.
struct OverflowError : Error {
    using Error::Error;
};

/// Dual requested for the irregular case (odd n, k = 2).
struct NotRegular : Error {
    using Error::Error;
};

/// Dual requested for a function that is not gbent.
struct NotGbent : Error {
    using Error::Error;
};

/// Sign relation requested at a point where the reference spectrum vanishes.
struct SignUndefined : Error {
    using Error::Error;
};

inline void require(bool cond, const std::string& what) {
    if (!cond) throw InvariantError(what);
}

}  // namespace gbentlab
