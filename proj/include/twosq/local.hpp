#pragma once

#include <twosq/quadfield.hpp>

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace twosq {

struct Place {
    enum class Kind { real, finite };
    Kind kind = Kind::real;
    Embedding embedding = Embedding::plus_root;  // real places
    Int q = 0;                                   // finite places
    SplittingType split{SplitKind::ramified, 0};
    int index = 1;  // 1 or 2; distinguishes the two places over split q

    static Place real(Embedding e) {
        Place p;
        p.kind = Kind::real;
        p.embedding = e;
        return p;
    }

    static Place finite(const FieldDesc& f, const Int& q, int index = 1) {
        Place p;
        p.kind = Kind::finite;
        p.q = q;
        p.split = splitting_type(f, q);
        if (index != 1 && !(index == 2 && p.split.kind == SplitKind::split))
            throw DomainError("Place::finite: index 2 requires split q");
        p.index = index;
        return p;
    }

    std::string render() const {
        if (kind == Kind::real) return embedding == Embedding::plus_root ? "real(+)" : "real(-)";
        std::string s = "q=" + q.str();
        switch (split.kind) {
            case SplitKind::split: return s + "#" + std::to_string(index);
            case SplitKind::inert: return s + "(inert)";
            case SplitKind::ramified: return s + "(ram)";
        }
        return s;
    }
};

enum class LocalReason {
    sign_obstruction,         // real place, image negative
    minus_one_local_square,   // odd place with residue size = 1 (mod 4)
    even_valuation,           // odd place, -1 not a local square, v even
    odd_valuation_obstruction,// odd place, -1 not a local square, v odd
    dyadic_closed_form,       // split place over 2, odd-part residue test
    dyadic_enumeration        // non-split place over 2, exhaustive residue search
};

inline std::string render(LocalReason r, std::optional<int> modulus_exponent = std::nullopt) {
    switch (r) {
        case LocalReason::sign_obstruction: return "sign_obstruction";
        case LocalReason::minus_one_local_square: return "minus_one_local_square";
        case LocalReason::even_valuation: return "even_valuation";
        case LocalReason::odd_valuation_obstruction: return "odd_valuation_obstruction";
        case LocalReason::dyadic_closed_form: return "dyadic_closed_form";
        case LocalReason::dyadic_enumeration:
            return "dyadic_enumeration(n=" + (modulus_exponent ? std::to_string(*modulus_exponent) : std::string("?")) + ")";
    }
    return "?";
}

struct LocalVerdict {
    Place place;
    bool solvable;
    LocalReason reason;
    std::optional<int> modulus_exponent;  // dyadic_enumeration only
    std::optional<long> valuation;        // finite places
};

struct LocalTable {
    std::vector<LocalVerdict> verdicts;  // reals first, then finite by q ascending, index 1 then 2
    bool all_pass;
};

namespace detail {

// Whether alpha is a sum of two squares in o_F / 2^n, by meeting the set of
// squares with its reflection. States live in the basis (1, w) where w is
// (1+sqrt(d))/2 for half_basis fields and sqrt(d) otherwise; w^2 = c0 + c1*w.
// Cost is 4^n states, so n is capped; larger inputs are a resource error.
inline bool sum_two_squares_mod_2n(const QuadInt& alpha, int n) {
    if (n < 1) throw DomainError("sum_two_squares_mod_2n: n must be >= 1");
    if (n > 13) throw Error("sum_two_squares_mod_2n: modulus 2^" + std::to_string(n) + " exceeds the enumeration cap");
    const FieldDesc& f = alpha.field;
    const std::uint64_t mask = (std::uint64_t(1) << n) - 1;
    Int A0, A1;  // alpha in the (1, w) basis
    if (f.half_basis) {
        if (alpha.den == 2) {
            A0 = (alpha.a - alpha.b) / 2;
            A1 = alpha.b;
        } else {
            A0 = alpha.a - alpha.b;
            A1 = 2 * alpha.b;
        }
    } else {
        A0 = alpha.a;
        A1 = alpha.b;
    }
    const Int two_n = Int(1) << n;
    const std::uint64_t t0 = mod_floor(A0, two_n).convert_to<std::uint64_t>();
    const std::uint64_t t1 = mod_floor(A1, two_n).convert_to<std::uint64_t>();
    const std::uint64_t c0 = mod_floor(f.half_basis ? (f.d - 1) / 4 : f.d, two_n).convert_to<std::uint64_t>();
    const std::uint64_t c1 = f.half_basis ? 1 : 0;
    const std::size_t bits = std::size_t(1) << (2 * n);
    std::vector<std::uint64_t> seen(bits / 64 + 1, 0);
    std::vector<std::uint32_t> squares;
    for (std::uint64_t u = 0; u <= mask; ++u) {
        for (std::uint64_t v = 0; v <= mask; ++v) {
            std::uint64_t s0 = (u * u + c0 * v * v) & mask;
            std::uint64_t s1 = (2 * u * v + c1 * v * v) & mask;
            std::uint64_t key = s0 | (s1 << n);
            if (!(seen[key >> 6] & (std::uint64_t(1) << (key & 63)))) {
                seen[key >> 6] |= std::uint64_t(1) << (key & 63);
                squares.push_back(static_cast<std::uint32_t>(key));
            }
        }
    }
    for (std::uint32_t key : squares) {
        std::uint64_t s0 = key & mask;
        std::uint64_t s1 = key >> n;
        std::uint64_t r0 = (t0 - s0) & mask;
        std::uint64_t r1 = (t1 - s1) & mask;
        std::uint64_t rkey = r0 | (r1 << n);
        if (seen[rkey >> 6] & (std::uint64_t(1) << (rkey & 63))) return true;
    }
    return false;
}

}  // namespace detail

// One verdict per real embedding; empty for imaginary fields.
// Solvable at a real place exactly when the image is positive.
inline std::vector<LocalVerdict> real_verdicts(const QuadInt& alpha) {
    if (is_zero(alpha)) throw DomainError("real_verdicts: zero element");
    if (!alpha.field.is_real) return {};
    std::vector<LocalVerdict> out;
    for (Embedding e : {Embedding::plus_root, Embedding::minus_root}) {
        int s = embed_sign(alpha, e);
        out.push_back({Place::real(e), s > 0, LocalReason::sign_obstruction, std::nullopt, std::nullopt});
    }
    return out;
}

// Solvability at a place over an odd prime q. With k the residue field size
// (q for split/ramified, q^2 inert): always solvable when k = 1 (mod 4)
// since -1 is then a local square; otherwise solvable iff v(alpha) is even.
inline LocalVerdict odd_place_verdict(const QuadInt& alpha, const Place& place) {
    if (is_zero(alpha)) throw DomainError("odd_place_verdict: zero element");
    if (place.kind != Place::Kind::finite || place.q == 2)
        throw DomainError("odd_place_verdict: place must lie over an odd prime");
    auto vals = valuations_above(alpha, place.q);
    long v = vals.at(place.split.kind == SplitKind::split ? place.index : 1);
    Int k_mod4 = place.split.kind == SplitKind::inert ? mod_floor(place.q * place.q, 4)
                                                      : mod_floor(place.q, 4);
    LocalVerdict out;
    out.place = place;
    out.valuation = v;
    if (k_mod4 == 1) {
        out.solvable = true;
        out.reason = LocalReason::minus_one_local_square;
    } else if (v % 2 == 0) {
        out.solvable = true;
        out.reason = LocalReason::even_valuation;
    } else {
        out.solvable = false;
        out.reason = LocalReason::odd_valuation_obstruction;
    }
    return out;
}

// Solvability at a place over split 2 (d = 1 mod 8). The completion is Q_2,
// where a sum of two squares is exactly a value with odd part = 1 (mod 4).
// root_precision can force a larger working modulus; 0 means automatic.
inline LocalVerdict dyadic_split_verdict(const QuadInt& alpha, const Place& place, unsigned root_precision = 0) {
    if (is_zero(alpha)) throw DomainError("dyadic_split_verdict: zero element");
    if (place.kind != Place::Kind::finite || place.q != 2 || place.split.kind != SplitKind::split)
        throw DomainError("dyadic_split_verdict: place must lie over split 2");
    Int N = boost::multiprecision::abs(norm(alpha));
    unsigned w = N == 1 ? 0 : valuation(N, 2);
    unsigned K = w + 6;
    if (K < root_precision) K = root_precision;
    if (K < 7) K = 7;
    Int M = Int(1) << K;
    Int r = root_embedding(alpha.field, 2, K);
    if (place.index == 2) r = M - r;
    Int img = mod_floor(alpha.a + alpha.b * r, M);
    unsigned prec = K;
    if (alpha.den == 2) {
        if (img % 2 != 0) throw InvariantViolation("dyadic_split_verdict: half element image is odd");
        img >>= 1;
        --prec;
    }
    if (img == 0) throw InvariantViolation("dyadic_split_verdict: image vanished at working precision");
    unsigned v = valuation(img, 2);
    if (prec - v < 2) throw InvariantViolation("dyadic_split_verdict: insufficient precision");
    Int odd_part = img >> v;
    LocalVerdict out;
    out.place = place;
    out.solvable = mod_floor(odd_part, 4) == 1;
    out.reason = LocalReason::dyadic_closed_form;
    out.valuation = static_cast<long>(v);
    return out;
}

// Solvability at the unique place over 2 when 2 is inert or ramified,
// by exhaustive search modulo 2^n with n = v2(N(alpha)) + 5.
inline LocalVerdict dyadic_enum_verdict(const QuadInt& alpha) {
    if (is_zero(alpha)) throw DomainError("dyadic_enum_verdict: zero element");
    SplittingType st = splitting_type(alpha.field, 2);
    if (st.kind == SplitKind::split)
        throw DomainError("dyadic_enum_verdict: 2 splits; use dyadic_split_verdict");
    Int N = boost::multiprecision::abs(norm(alpha));
    unsigned w = N == 1 ? 0 : valuation(N, 2);
    int n = static_cast<int>(w) + 5;
    LocalVerdict out;
    out.place = Place::finite(alpha.field, 2, 1);
    out.solvable = detail::sum_two_squares_mod_2n(alpha, n);
    out.reason = LocalReason::dyadic_enumeration;
    out.modulus_exponent = n;
    out.valuation = st.kind == SplitKind::ramified ? long(w) : long(w / 2);
    return out;
}

// Every relevant place: both real embeddings, the places over 2, over |d|,
// and over each odd prime dividing N(alpha). All other places are
// automatically solvable (unramified, unit valuation).
inline LocalTable local_table(const QuadInt& alpha) {
    if (is_zero(alpha)) throw DomainError("local_table: zero element");
    LocalTable table;
    table.verdicts = real_verdicts(alpha);
    std::set<Int> qs{Int(2), boost::multiprecision::abs(alpha.field.d)};
    for (const auto& [p, e] : factor(norm(alpha)).factors) qs.insert(p);
    for (const Int& q : qs) {
        SplittingType st = splitting_type(alpha.field, q);
        if (q == 2) {
            if (st.kind == SplitKind::split) {
                table.verdicts.push_back(dyadic_split_verdict(alpha, Place::finite(alpha.field, 2, 1)));
                table.verdicts.push_back(dyadic_split_verdict(alpha, Place::finite(alpha.field, 2, 2)));
            } else {
                table.verdicts.push_back(dyadic_enum_verdict(alpha));
            }
        } else {
            table.verdicts.push_back(odd_place_verdict(alpha, Place::finite(alpha.field, q, 1)));
            if (st.kind == SplitKind::split)
                table.verdicts.push_back(odd_place_verdict(alpha, Place::finite(alpha.field, q, 2)));
        }
    }
    table.all_pass = true;
    for (const auto& v : table.verdicts) table.all_pass = table.all_pass && v.solvable;
    return table;
}

}  // namespace twosq
