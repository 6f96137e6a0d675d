#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <stdexcept>
#include <string>

namespace twosq {

// Arbitrary-precision signed integer. Everything in this library is exact;
// no floating point is used anywhere in a mathematical decision.
using Int = boost::multiprecision::cpp_int;

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A caller violated an operation's precondition.
struct DomainError : Error {
    using Error::Error;
};

// den = 2 requested where the ring of integers has no half-integral elements,
// or the half-coordinate parity a = b (mod 2) fails.
struct IntegralityError : Error {
    using Error::Error;
};

// Real-embedding query on an imaginary field.
struct ImaginaryFieldError : Error {
    using Error::Error;
};

// Arithmetic between elements of distinct fields.
struct FieldMismatchError : Error {
    using Error::Error;
};

// Malformed element or descriptor text.
struct ParseError : Error {
    using Error::Error;
};

// Internal consistency failure. Always a bug, never a mathematical outcome.
struct InvariantViolation : Error {
    using Error::Error;
};

// Least nonnegative residue; m must be positive.
inline Int mod_floor(const Int& a, const Int& m) {
    Int r = a % m;
    if (r < 0) r += m;
    return r;
}

inline Int isqrt_floor(const Int& n) {
    if (n < 0) throw DomainError("isqrt_floor: negative argument");
    return boost::multiprecision::sqrt(n);
}

inline bool is_perfect_square(const Int& n, Int* root = nullptr) {
    if (n < 0) return false;
    Int r = boost::multiprecision::sqrt(n);
    if (r * r != n) return false;
    if (root) *root = r;
    return true;
}

// Floor cube root for n >= 0.
inline Int icbrt_floor(const Int& n) {
    if (n < 0) throw DomainError("icbrt_floor: negative argument");
    if (n < 8) return Int(n >= 1 ? 1 : 0);
    Int x = Int(1) << (boost::multiprecision::msb(n) / 3 + 1);
    while (true) {
        Int y = (2 * x + n / (x * x)) / 3;
        if (y >= x) break;
        x = y;
    }
    while (x * x * x > n) --x;
    while ((x + 1) * (x + 1) * (x + 1) <= n) ++x;
    return x;
}

inline Int pow_int(const Int& base, unsigned exp) {
    return boost::multiprecision::pow(base, exp);
}

// q-adic valuation of n; n must be nonzero, q >= 2.
inline unsigned valuation(const Int& n, const Int& q) {
    if (n == 0) throw DomainError("valuation: zero argument");
    Int m = boost::multiprecision::abs(n);
    if (q == 2) return boost::multiprecision::lsb(m);
    unsigned v = 0;
    while (m % q == 0) {
        m /= q;
        ++v;
    }
    return v;
}

}  // namespace twosq
