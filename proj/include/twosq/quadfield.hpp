#pragma once

#include <twosq/ntheory.hpp>

#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <utility>

namespace twosq {

// The two real embeddings of Q(sqrt(d)), d > 0: sqrt(d) -> +sqrt(d) or -sqrt(d).
enum class Embedding { plus_root, minus_root };

struct FieldDesc {
    Int d;             // squarefree, here restricted to +-2 and +-(odd prime)
    Int discriminant;  // d if d = 1 (mod 4), else 4d
    bool half_basis;   // ring of integers is Z[(1+sqrt(d))/2]
    bool is_real;      // d > 0

    friend bool operator==(const FieldDesc& x, const FieldDesc& y) { return x.d == y.d; }
    friend bool operator!=(const FieldDesc& x, const FieldDesc& y) { return x.d != y.d; }
};

inline FieldDesc make_field(const Int& d) {
    if (d == 0 || d == 1 || d == -1) throw DomainError("make_field: d must not be 0 or +-1");
    if (!is_prime(boost::multiprecision::abs(d)))
        throw DomainError("make_field: |d| must be prime, got " + d.str());
    FieldDesc f;
    f.d = d;
    f.half_basis = mod_floor(d, 4) == 1;
    f.discriminant = f.half_basis ? d : 4 * d;
    f.is_real = d > 0;
    return f;
}

// Element (a + b*sqrt(d))/den of the ring of integers, den in {1, 2}.
// Canonical form: den = 2 only when a, b are both odd (requires half_basis).
struct QuadInt {
    FieldDesc field;
    Int a;
    Int b;
    int den = 1;
};

inline QuadInt make(const FieldDesc& field, Int a, Int b, int den = 1) {
    if (den != 1 && den != 2) throw DomainError("make: den must be 1 or 2");
    if (den == 2) {
        if (!field.half_basis)
            throw IntegralityError("make: den = 2 needs d = 1 (mod 4), d = " + field.d.str());
        if (mod_floor(a - b, 2) != 0)
            throw IntegralityError("make: den = 2 needs a = b (mod 2)");
        if (a % 2 == 0) {  // both even: reduce to den = 1
            a /= 2;
            b /= 2;
            den = 1;
        }
    }
    return QuadInt{field, std::move(a), std::move(b), den};
}

namespace detail {

// Normalizes an internal (a + b*sqrt(d))/den with den in {1, 2, 4}. Failure
// here means a product or sum left the ring, which is impossible: a bug.
inline QuadInt reduce(const FieldDesc& field, Int a, Int b, int den) {
    while (den % 2 == 0 && a % 2 == 0 && b % 2 == 0) {
        a /= 2;
        b /= 2;
        den /= 2;
    }
    if (den == 4) throw InvariantViolation("reduce: denominator 4 after reduction");
    if (den == 2 && (!field.half_basis || mod_floor(a - b, 2) != 0))
        throw InvariantViolation("reduce: non-integral half element");
    return QuadInt{field, std::move(a), std::move(b), den};
}

inline void require_same_field(const QuadInt& x, const QuadInt& y) {
    if (x.field != y.field)
        throw FieldMismatchError("mixed fields: d = " + x.field.d.str() + " and d = " + y.field.d.str());
}

}  // namespace detail

inline bool is_zero(const QuadInt& x) { return x.a == 0 && x.b == 0; }

inline bool operator==(const QuadInt& x, const QuadInt& y) {
    return x.field == y.field && x.den == y.den && x.a == y.a && x.b == y.b;
}
inline bool operator!=(const QuadInt& x, const QuadInt& y) { return !(x == y); }

inline QuadInt operator+(const QuadInt& x, const QuadInt& y) {
    detail::require_same_field(x, y);
    if (x.den == y.den) return detail::reduce(x.field, x.a + y.a, x.b + y.b, x.den);
    const QuadInt& h = x.den == 2 ? x : y;  // the half one
    const QuadInt& w = x.den == 2 ? y : x;
    return detail::reduce(x.field, 2 * w.a + h.a, 2 * w.b + h.b, 2);
}

inline QuadInt operator-(const QuadInt& x) { return QuadInt{x.field, -x.a, -x.b, x.den}; }

inline QuadInt operator-(const QuadInt& x, const QuadInt& y) { return x + (-y); }

inline QuadInt operator*(const QuadInt& x, const QuadInt& y) {
    detail::require_same_field(x, y);
    Int a = x.a * y.a + x.field.d * x.b * y.b;
    Int b = x.a * y.b + x.b * y.a;
    return detail::reduce(x.field, std::move(a), std::move(b), x.den * y.den);
}

inline QuadInt conj(const QuadInt& x) { return QuadInt{x.field, x.a, -x.b, x.den}; }

inline QuadInt pow(QuadInt x, unsigned e) {
    QuadInt r = make(x.field, 1, 0, 1);
    while (e) {
        if (e & 1) r = r * x;
        x = x * x;
        e >>= 1;
    }
    return r;
}

inline Int norm(const QuadInt& x) {
    Int n = x.a * x.a - x.field.d * x.b * x.b;
    if (x.den == 2) {
        if (n % 4 != 0) throw InvariantViolation("norm: not divisible by 4");
        n /= 4;
    }
    return n;
}

inline Int trace(const QuadInt& x) {
    if (x.den == 2) return x.a;
    return 2 * x.a;
}

inline std::optional<Int> as_integer(const QuadInt& x) {
    if (x.b == 0 && x.den == 1) return x.a;
    return std::nullopt;
}

// Sign of the image of x under a real embedding: -1, 0 or +1.
// Exact: compares a^2 against d*b^2, no floating point.
inline int embed_sign(const QuadInt& x, Embedding e) {
    if (!x.field.is_real) throw ImaginaryFieldError("embed_sign: field is imaginary");
    Int B = e == Embedding::plus_root ? x.b : -x.b;
    const Int& a = x.a;
    if (B == 0) return a == 0 ? 0 : (a > 0 ? 1 : -1);
    if (a == 0) return B > 0 ? 1 : -1;
    if (a > 0 && B > 0) return 1;
    if (a < 0 && B < 0) return -1;
    Int lhs = a * a, rhs = x.field.d * B * B;
    if (lhs == rhs) throw InvariantViolation("embed_sign: a^2 = d b^2 with b != 0");
    if (a > 0) return lhs > rhs ? 1 : -1;  // B < 0
    return rhs > lhs ? 1 : -1;             // a < 0, B > 0
}

inline std::string render(const QuadInt& x) {
    std::ostringstream os;
    Int babs = boost::multiprecision::abs(x.b);
    os << "(" << x.a << (x.b < 0 ? "-" : "+") << babs << "*sqrt(" << x.field.d << "))/" << x.den;
    return os.str();
}

enum class SplitKind { split, inert, ramified };

struct SplittingType {
    SplitKind kind;
    // For split q: the residue of the canonical root of x^2 = d picking out
    // the first of the two places. Odd q: the smaller root mod q. q = 2: the
    // smaller of the two mod-64 residues that lift to roots mod 128.
    Int seed;
};

inline SplittingType splitting_type(const FieldDesc& f, const Int& q) {
    if (!is_prime(q)) throw DomainError("splitting_type: q must be prime");
    if (q == 2) {
        if (!f.half_basis) return {SplitKind::ramified, 0};
        Int r8 = mod_floor(f.d, 8);
        if (r8 == 5) return {SplitKind::inert, 0};
        auto r = sqrt_mod_prime_power(f.d, 2, 7);
        if (!r) throw InvariantViolation("splitting_type: d = 1 (mod 8) must be a square mod 128");
        Int r64 = mod_floor(*r, 64);
        Int mirror = 64 - r64;
        return {SplitKind::split, std::min(r64, mirror)};
    }
    int j = jacobi(f.discriminant, q);
    if (j == 0) return {SplitKind::ramified, 0};
    if (j == -1) return {SplitKind::inert, 0};
    auto r = sqrt_mod_prime_power(f.d, q, 1);
    if (!r) throw InvariantViolation("splitting_type: jacobi said square, lift failed");
    Int mirror = q - *r;
    return {SplitKind::split, std::min(*r, mirror)};
}

// Canonical root r of x^2 = d (mod q^k) at the first place over split q;
// the second place uses q^k - r. For q = 2 require k >= 6.
inline Int root_embedding(const FieldDesc& f, const Int& q, unsigned k) {
    SplittingType st = splitting_type(f, q);
    if (st.kind != SplitKind::split) throw DomainError("root_embedding: q does not split");
    if (q == 2) {
        if (k < 6) throw DomainError("root_embedding: q = 2 needs k >= 6");
        auto R = sqrt_mod_prime_power(f.d, 2, k + 1);
        if (!R) throw InvariantViolation("root_embedding: no root at requested precision");
        Int M = Int(1) << k;
        Int r = mod_floor(*R, M);
        if (mod_floor(r, 64) != st.seed) r = M - r;
        if (mod_floor(r, 64) != st.seed)
            throw InvariantViolation("root_embedding: neither lift matches the seed");
        return r;
    }
    auto R = sqrt_mod_prime_power(f.d, q, k);
    if (!R) throw InvariantViolation("root_embedding: no root at requested precision");
    Int r = *R;
    if (r % q != st.seed) r = pow_int(q, k) - r;
    if (r % q != st.seed) throw InvariantViolation("root_embedding: neither root matches the seed");
    return r;
}

// Valuations of x at the places above prime q, keyed by place index (1-based).
// Split q yields {1: v1, 2: v2}; inert and ramified yield {1: v}.
inline std::map<int, long> valuations_above(const QuadInt& x, const Int& q) {
    if (is_zero(x)) throw DomainError("valuations_above: zero element");
    SplittingType st = splitting_type(x.field, q);
    Int N = boost::multiprecision::abs(norm(x));
    long w = N == 1 ? 0 : static_cast<long>(valuation(N, q));
    if (st.kind == SplitKind::ramified) return {{1, w}};
    if (st.kind == SplitKind::inert) {
        if (w % 2 != 0) throw InvariantViolation("valuations_above: odd norm valuation at inert q");
        return {{1, w / 2}};
    }
    unsigned K = static_cast<unsigned>(w) + 6;
    if (q == 2 && K < 7) K = 7;
    Int M = pow_int(q, K);
    Int r = root_embedding(x.field, q, K);
    long dencut = (x.den == 2 && q == 2) ? 1 : 0;
    auto val_at = [&](const Int& root) -> long {
        Int img = mod_floor(x.a + x.b * root, M);
        if (img == 0) throw InvariantViolation("valuations_above: image vanished at working precision");
        return static_cast<long>(valuation(img, q)) - dencut;
    };
    long v1 = val_at(r);
    long v2 = val_at(M - r);
    if (v1 + v2 != w) throw InvariantViolation("valuations_above: place valuations do not sum to norm valuation");
    return {{1, v1}, {2, v2}};
}

}  // namespace twosq
