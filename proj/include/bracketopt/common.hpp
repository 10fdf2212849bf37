#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace bracketopt {

using Player = std::int32_t;
using Value = std::int64_t;

/// Base class for all library errors.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Malformed input: bad permutation, bad table key, bad formula, ...
class ValidationError : public Error {
public:
    using Error::Error;
};

/// An operation was invoked on an instance kind it does not support.
class KindError : public Error {
public:
    using Error::Error;
};

/// A checked 64-bit computation overflowed.
class OverflowError : public Error {
public:
    using Error::Error;
};

/// Instance too large for an exhaustive solver.
class CapError : public Error {
public:
    using Error::Error;
};

/// A bookkeeping transition that the caller is not allowed to make
/// (e.g. closing a subtournament that is not open).
class IllegalTransitionError : public Error {
public:
    using Error::Error;
};

/// A "must never fire" internal invariant fired.
class InternalError : public Error {
public:
    using Error::Error;
};

inline Value checked_add(Value a, Value b) {
    Value out;
    if (__builtin_add_overflow(a, b, &out))
        throw OverflowError("64-bit overflow in addition: " + std::to_string(a) + " + " +
                            std::to_string(b));
    return out;
}

inline Value checked_mul(Value a, Value b) {
    Value out;
    if (__builtin_mul_overflow(a, b, &out))
        throw OverflowError("64-bit overflow in multiplication: " + std::to_string(a) + " * " +
                            std::to_string(b));
    return out;
}

constexpr bool is_power_of_two(std::int64_t n) { return n >= 1 && (n & (n - 1)) == 0; }

/// log2 of a power of two.
constexpr int log2_exact(std::int64_t n) {
    int r = 0;
    while ((std::int64_t{1} << r) < n) ++r;
    return r;
}

}  // namespace bracketopt
