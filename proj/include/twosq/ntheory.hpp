#pragma once

#include <twosq/base.hpp>

#include <algorithm>
#include <map>
#include <optional>
#include <utility>
#include <vector>

namespace twosq {

// Jacobi symbol (a/n) for odd positive n. Multiplicative in both arguments;
// 0 exactly when gcd(a, n) > 1.
inline int jacobi(Int a, Int n) {
    if (n <= 0 || n % 2 == 0) throw DomainError("jacobi: n must be odd and positive");
    a = mod_floor(a, n);
    int result = 1;
    while (a != 0) {
        while (a % 2 == 0) {
            a >>= 1;
            Int r = n % 8;
            if (r == 3 || r == 5) result = -result;
        }
        std::swap(a, n);
        if (a % 4 == 3 && n % 4 == 3) result = -result;
        a = mod_floor(a, n);
    }
    return n == 1 ? result : 0;
}

namespace detail {

inline Int powm(Int base, Int exp, const Int& mod) {
    return boost::multiprecision::powm(std::move(base), std::move(exp), mod);
}

inline bool miller_rabin_witness(const Int& a, const Int& n, const Int& d, unsigned s) {
    Int x = powm(a % n, d, n);
    if (x == 1 || x == n - 1) return false;
    for (unsigned i = 1; i < s; ++i) {
        x = x * x % n;
        if (x == n - 1) return false;
    }
    return true;  // a witnesses compositeness
}

}  // namespace detail

// Deterministic for n < 3.3e24 (first twelve prime bases).
inline bool is_prime(const Int& n) {
    if (n < 2) throw DomainError("is_prime: argument below 2");
    for (int p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
        if (n == p) return true;
        if (n % p == 0) return false;
    }
    Int d = n - 1;
    unsigned s = valuation(d, 2);
    d >>= s;
    for (int a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
        if (detail::miller_rabin_witness(Int(a), n, d, s)) return false;
    }
    return true;
}

struct Factorization {
    int sign = 1;                                    // sign of the input
    std::vector<std::pair<Int, unsigned>> factors;   // ascending primes, exponents >= 1

    Int reconstruct() const {
        Int n = sign;
        for (const auto& [p, e] : factors) n *= pow_int(p, e);
        return n;
    }
};

namespace detail {

// Brent's cycle variant of Pollard rho. n odd composite, > 1. Deterministic
// sequence of polynomial offsets; gives up after a fixed budget.
inline std::optional<Int> pollard_brent(const Int& n) {
    for (int c = 1; c <= 40; ++c) {
        Int y = 2, r = 1, q = 1, g = 1, x = 0, ys = 0;
        const long m = 128;
        long budget = 1L << 22;
        while (g == 1 && budget > 0) {
            x = y;
            for (Int i = 0; i < r; ++i) y = (y * y + c) % n;
            Int k = 0;
            while (k < r && g == 1) {
                ys = y;
                long steps = static_cast<long>(std::min<Int>(Int(m), r - k).convert_to<long>());
                for (long i = 0; i < steps; ++i) {
                    y = (y * y + c) % n;
                    q = q * boost::multiprecision::abs(x - y) % n;
                }
                g = boost::multiprecision::gcd(q, n);
                k += m;
                budget -= steps;
            }
            r *= 2;
        }
        if (g == n) {
            g = 1;
            for (long i = 0; g == 1 && i < (1L << 22); ++i) {
                ys = (ys * ys + c) % n;
                g = boost::multiprecision::gcd(boost::multiprecision::abs(x - ys), n);
            }
            if (g == 1) continue;
        }
        if (g != n && g != 1) return g;
    }
    return std::nullopt;
}

}  // namespace detail

// Complete factorization; throws Error if a cofactor resists splitting
// (an explicit failure, never a silently wrong answer).
inline Factorization factor(const Int& n) {
    if (n == 0) throw DomainError("factor: zero argument");
    Factorization out;
    out.sign = n < 0 ? -1 : 1;
    Int m = boost::multiprecision::abs(n);
    std::map<Int, unsigned> acc;
    for (Int p = 2; p <= 1000000 && p * p <= m; p = (p == 2 ? Int(3) : p + 2)) {
        while (m % p == 0) {
            ++acc[p];
            m /= p;
        }
    }
    std::vector<Int> pending;
    if (m > 1) pending.push_back(m);
    while (!pending.empty()) {
        Int c = pending.back();
        pending.pop_back();
        if (c <= Int(1000000) * Int(1000000) || is_prime(c)) {
            // below the trial bound squared every survivor is prime
            ++acc[c];
            continue;
        }
        auto g = detail::pollard_brent(c);
        if (!g) throw Error("factor: failed to split cofactor " + c.str());
        pending.push_back(*g);
        pending.push_back(c / *g);
    }
    for (auto& [p, e] : acc) out.factors.emplace_back(p, e);
    return out;
}

namespace detail {

// Dense polynomials over F_p, coefficient i belongs to x^i, no trailing zeros.
using Poly = std::vector<Int>;

inline void poly_trim(Poly& f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
}

inline Poly poly_reduce(const std::vector<Int>& coeffs, const Int& p) {
    Poly f;
    f.reserve(coeffs.size());
    for (const Int& c : coeffs) f.push_back(mod_floor(c, p));
    poly_trim(f);
    return f;
}

inline Poly poly_mul(const Poly& a, const Poly& b, const Int& p) {
    if (a.empty() || b.empty()) return {};
    Poly r(a.size() + b.size() - 1, Int(0));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + a[i] * b[j]) % p;
    poly_trim(r);
    return r;
}

// Remainder of a by monic b (b nonempty).
inline Poly poly_rem(Poly a, const Poly& b, const Int& p) {
    while (a.size() >= b.size()) {
        Int lead = a.back();
        if (lead != 0) {
            std::size_t shift = a.size() - b.size();
            for (std::size_t i = 0; i + 1 < b.size(); ++i)
                a[shift + i] = mod_floor(a[shift + i] - lead * b[i], p);
        }
        a.pop_back();
        poly_trim(a);
    }
    return a;
}

inline Poly poly_monic(Poly f, const Int& p) {
    if (f.empty()) return f;
    Int inv = powm(f.back(), p - 2, p);
    for (Int& c : f) c = c * inv % p;
    return f;
}

inline Poly poly_gcd(Poly a, Poly b, const Int& p) {
    while (!b.empty()) {
        Poly r = poly_rem(std::move(a), poly_monic(b, p), p);
        a = std::move(b);
        b = std::move(r);
    }
    return a;
}

// x^e mod h for monic h of degree >= 1.
inline Poly poly_pow_x(const Int& e, const Poly& h, const Int& p) {
    Poly result{Int(1)};
    Poly base = poly_rem(Poly{Int(0), Int(1)}, h, p);
    for (long bit = static_cast<long>(boost::multiprecision::msb(e)); bit >= 0; --bit) {
        result = poly_mul(result, result, p);
        result = poly_rem(std::move(result), h, p);
        if (boost::multiprecision::bit_test(e, static_cast<unsigned>(bit))) {
            result = poly_mul(result, base, p);
            result = poly_rem(std::move(result), h, p);
        }
    }
    return result;
}

}  // namespace detail

// Whether h(x) = 0 (mod p) has a solution, via deg gcd(x^p - x, h) >= 1.
// coeffs[i] is the coefficient of x^i.
inline bool poly_has_root_mod_p(const std::vector<Int>& coeffs, const Int& p) {
    if (!is_prime(p)) throw DomainError("poly_has_root_mod_p: modulus must be prime");
    detail::Poly h = detail::poly_reduce(coeffs, p);
    if (h.empty()) return true;       // zero polynomial
    if (h.size() == 1) return false;  // nonzero constant
    h = detail::poly_monic(std::move(h), p);
    detail::Poly g = detail::poly_pow_x(p, h, p);
    // g := g - x  (mod h)
    if (g.size() < 2) g.resize(2, Int(0));
    g[1] = mod_floor(g[1] - 1, p);
    detail::poly_trim(g);
    return detail::poly_gcd(h, g, p).size() >= 2;
}

namespace detail {

// Square root mod odd prime p; requires jacobi(a, p) == 1, 1 <= a < p.
inline Int tonelli_shanks(const Int& a, const Int& p) {
    if (p % 4 == 3) return powm(a, (p + 1) / 4, p);
    Int q = p - 1;
    unsigned s = valuation(q, 2);
    q >>= s;
    Int z = 2;
    while (jacobi(z, p) != -1) ++z;
    Int m = s, c = powm(z, q, p), t = powm(a, q, p), r = powm(a, (q + 1) / 2, p);
    while (t != 1) {
        Int tt = t;
        Int i = 0;
        while (tt != 1) {
            tt = tt * tt % p;
            ++i;
        }
        Int b = c;
        for (Int j = 0; j < m - i - 1; ++j) b = b * b % p;
        r = r * b % p;
        c = b * b % p;
        t = t * c % p;
        m = i;
    }
    return r;
}

}  // namespace detail

// Some r with r^2 = a (mod q^k), or absent when no such r exists. For q = 2
// the usual unit conditions apply (a = 1 mod 8 when k - v >= 3, and so on).
inline std::optional<Int> sqrt_mod_prime_power(const Int& a_in, const Int& q, unsigned k) {
    if (!is_prime(q)) throw DomainError("sqrt_mod_prime_power: modulus base must be prime");
    if (k < 1) throw DomainError("sqrt_mod_prime_power: exponent must be positive");
    Int M = pow_int(q, k);
    Int a = mod_floor(a_in, M);
    if (a == 0) return Int(0);
    unsigned v = valuation(a, q);
    if (v % 2 != 0) return std::nullopt;
    Int u = a / pow_int(q, v);
    unsigned kk = k - v;  // v < k since a != 0 mod q^k
    Int Mu = pow_int(q, kk);
    Int s;
    if (q == 2) {
        if (kk == 1) {
            s = 1;
        } else if (kk == 2) {
            if (u % 4 != 1) return std::nullopt;
            s = 1;
        } else {
            if (u % 8 != 1) return std::nullopt;
            s = 1;
            // one bit of precision per step: s^2 = u (mod 2^j) throughout
            for (unsigned j = 3; j < kk; ++j) {
                if (mod_floor(s * s - u, Int(1) << (j + 1)) != 0) s += Int(1) << (j - 1);
            }
        }
    } else {
        Int u0 = u % q;
        if (jacobi(u0, q) != 1) return std::nullopt;
        s = detail::tonelli_shanks(u0, q);
        Int inv2s = detail::powm(mod_floor(2 * s, q), q - 2, q);
        Int qj = q;
        for (unsigned j = 1; j < kk; ++j) {
            Int defect = mod_floor(u - s * s, qj * q) / qj;
            Int t = defect * inv2s % q;
            s += t * qj;
            qj *= q;
        }
        s = mod_floor(s, Mu);
    }
    Int r = mod_floor(s * pow_int(q, v / 2), M);
    if (mod_floor(r * r - a, M) != 0) throw InvariantViolation("sqrt_mod_prime_power: lift check failed");
    return r;
}

}  // namespace twosq
