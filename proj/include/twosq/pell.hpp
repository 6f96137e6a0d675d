#pragma once

#include <twosq/quadfield.hpp>

#include <optional>
#include <vector>

namespace twosq {

// Periodic continued fraction of sqrt(D) for nonsquare D >= 2:
// [a0; period...] with the period ending at the term 2*a0.
struct CFExpansion {
    Int a0;
    std::vector<Int> period;
};

inline CFExpansion cf_sqrt(const Int& D) {
    if (D < 2) throw DomainError("cf_sqrt: D must be >= 2");
    Int a0 = isqrt_floor(D);
    if (a0 * a0 == D) throw DomainError("cf_sqrt: D is a perfect square");
    CFExpansion e;
    e.a0 = a0;
    Int P = 0, Q = 1, a = a0;
    do {
        P = a * Q - P;
        Int num = D - P * P;
        if (num % Q != 0) throw InvariantViolation("cf_sqrt: recurrence left the integers");
        Q = num / Q;
        a = (a0 + P) / Q;
        e.period.push_back(a);
    } while (Q != 1);
    return e;
}

struct PellSolution {
    Int D;
    int N;   // one of +1, -1, +2, -2
    Int x0;  // x0^2 - D y0^2 = N, y0 minimal >= 0
    Int y0;
};

// Minimal solution of x^2 - D y^2 = N for N in {+1, -1, +2, -2}, if any.
// Convergent scan over two periods of sqrt(D); for N = +1 the literal
// minimum (1, 0) is returned.
inline std::optional<PellSolution> solve_pm(const Int& D, int N) {
    if (N != 1 && N != -1 && N != 2 && N != -2) throw DomainError("solve_pm: N must be +-1 or +-2");
    if (D < 2) throw DomainError("solve_pm: D must be >= 2");
    {
        Int r;
        if (is_perfect_square(D, &r)) throw DomainError("solve_pm: D is a perfect square");
    }
    if (N == 1) return PellSolution{D, 1, 1, 0};
    if (D < 5) {
        // convergent completeness needs |N| < sqrt(D); scan directly instead
        for (Int y = 0; y <= 8; ++y) {
            Int xx = N + D * y * y, x;
            if (xx >= 0 && is_perfect_square(xx, &x)) return PellSolution{D, N, x, y};
        }
        return std::nullopt;
    }
    CFExpansion cf = cf_sqrt(D);
    std::size_t l = cf.period.size();
    Int hprev = 1, h = cf.a0;  // convergent numerators
    Int kprev = 0, k = 1;      // convergent denominators
    for (std::size_t i = 0; i <= 2 * l; ++i) {
        if (i > 0) {
            const Int& ai = cf.period[(i - 1) % l];
            Int hn = ai * h + hprev;
            Int kn = ai * k + kprev;
            hprev = h;
            h = hn;
            kprev = k;
            k = kn;
        }
        if (h * h - D * k * k == N) return PellSolution{D, N, h, k};
    }
    return std::nullopt;
}

// Fundamental unit of the real field, > 1, exact. For d = 1 (mod 4) the unit
// may have half-integral coordinates; that case is recovered from the
// Z[sqrt(d)] continued-fraction unit u by an integral cube-root descent
// (the index of Z[sqrt(d)]^* in o_F^* divides 3, so u is eps or eps^3).
inline QuadInt fundamental_unit(const FieldDesc& f) {
    if (!f.is_real) throw ImaginaryFieldError("fundamental_unit: field is imaginary");
    CFExpansion cf = cf_sqrt(f.d);
    std::size_t l = cf.period.size();
    Int hprev = 1, h = cf.a0, kprev = 0, k = 1;
    for (std::size_t i = 1; i < l; ++i) {
        const Int& ai = cf.period[i - 1];
        Int hn = ai * h + hprev;
        Int kn = ai * k + kprev;
        hprev = h;
        h = hn;
        kprev = k;
        k = kn;
    }
    QuadInt u = make(f, h, k, 1);
    Int Nu = norm(u);
    if (Nu != 1 && Nu != -1) throw InvariantViolation("fundamental_unit: CF unit has norm != +-1");
    if (f.half_basis) {
        // eps = (t + b*sqrt(d))/2 with u = eps^3 satisfies t^3 - 3*Nu*t = Tr(u)
        Int Tu = trace(u);
        Int t0 = icbrt_floor(Tu);
        for (Int t = t0 > 2 ? t0 - 2 : Int(1); t <= t0 + 2; ++t) {
            if (t * t * t - 3 * Nu * t != Tu) continue;
            Int num = t * t - 4 * Nu;
            if (num % f.d != 0) continue;
            Int bb = num / f.d, b;
            if (bb <= 0 || !is_perfect_square(bb, &b)) continue;
            if (mod_floor(t - b, 2) != 0) throw InvariantViolation("fundamental_unit: cube root parity");
            QuadInt eps = make(f, t, b, 2);
            if (pow(eps, 3) != u) throw InvariantViolation("fundamental_unit: cube check failed");
            return eps;
        }
    }
    return u;
}

enum class PellCase { m1mod4, m7mod8, m3mod8, p2 };

struct PellCaseResult {
    PellCase which;
    PellSolution solution;
};

/// Case-by-residue solvable Pell equation for prime p:
// p = 1 (mod 4) or p = 2  ->  x^2 - p y^2 = -1
// p = 7 (mod 8)           ->  x^2 - p y^2 =  2
// p = 3 (mod 8)           ->  x^2 - p y^2 = -2
// Absence of the promised solution is an implementation bug, not an outcome.
inline PellCaseResult pell_case_check(const Int& p) {
    if (!is_prime(p)) throw DomainError("pell_case_check: p must be prime");
    PellCase which;
    int N;
    if (p == 2) {
        which = PellCase::p2;
        N = -1;
    } else if (p % 4 == 1) {
        which = PellCase::m1mod4;
        N = -1;
    } else if (p % 8 == 7) {
        which = PellCase::m7mod8;
        N = 2;
    } else {
        which = PellCase::m3mod8;
        N = -2;
    }
    auto sol = solve_pm(p, N);
    if (!sol) throw InvariantViolation("pell_case_check: promised solution missing for p = " + p.str());
    if (N == 2 || N == -2) {
        if (solve_pm(p, -N))
            throw InvariantViolation("pell_case_check: both +-2 equations solvable for p = " + p.str());
    }
    return {which, *sol};
}

}  // namespace twosq
