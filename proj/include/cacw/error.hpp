#pragma once

#include <stdexcept>
#include <string>

namespace cacw {

/// Raised when an operation is called outside its domain (bad modulus,
/// non-prime where a prime is required, mismatched moduli, ...).
class PreconditionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Raised when a construction's hypotheses fail. The message names the
/// offending parameter, e.g. "Q1 fails for p=5".
class ConstructionError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Raised when an operation needs a verified code and the code fails
/// verification.
class VerificationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Raised when an enumeration would exceed its configured work budget.
class BudgetError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

namespace detail {
inline void require(bool cond, const std::string& what) {
    if (!cond) throw PreconditionError(what);
}
}  // namespace detail

}  // namespace cacw
