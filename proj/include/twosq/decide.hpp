#pragma once

#include <twosq/criteria.hpp>

#include <cmath>
#include <cstdlib>
#include <map>
#include <optional>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

namespace twosq {

struct SearchBounds {
    long coeff_bound = 200;  // box half-width for both coordinates of y
};

enum class Status { solvable, unsolvable, unknown };
enum class Mode { explicit_criterion, hasse_mode, witness_found, local_obstruction, inconclusive };

inline std::string render(Status s) {
    switch (s) {
        case Status::solvable: return "solvable";
        case Status::unsolvable: return "unsolvable";
        case Status::unknown: return "unknown";
    }
    return "?";
}

inline std::string render(Mode m) {
    switch (m) {
        case Mode::explicit_criterion: return "explicit_criterion";
        case Mode::hasse_mode: return "hasse_mode";
        case Mode::witness_found: return "witness_found";
        case Mode::local_obstruction: return "local_obstruction";
        case Mode::inconclusive: return "inconclusive";
    }
    return "?";
}

struct CriterionTrace {
    NormFactorization factorization;
    Rational sum;
    bool accept;
};

struct Verdict {
    Status status;
    Mode mode;
    LocalTable local;
    std::optional<std::pair<QuadInt, QuadInt>> witness;
    std::optional<CriterionTrace> criterion;
};

namespace detail {

inline Int wit_sqrt(const Int& v) { return boost::multiprecision::sqrt(v); }

inline __int128 wit_sqrt(__int128 v) {
    if (v < 0) return -1;
    __int128 r = static_cast<__int128>(sqrtl(static_cast<long double>(v)));
    while (r > 0 && r * r > v) --r;
    while ((r + 1) * (r + 1) <= v) ++r;
    return r;
}

inline Int to_Int(const Int& v) { return v; }

inline Int to_Int(__int128 v) {
    bool neg = v < 0;
    unsigned __int128 u = neg ? -static_cast<unsigned __int128>(v) : static_cast<unsigned __int128>(v);
    Int out = static_cast<std::uint64_t>(u >> 64);
    out <<= 64;
    out += static_cast<std::uint64_t>(u);
    return neg ? -out : out;
}

// Exact square root of beta = (b4a + b4b*sqrt(d))/4 in the ring of integers,
// if one exists. The candidate is cut down to a handful of possibilities by
// two integer square tests: N(beta) = s^2 and Tr(beta) + 2*sigma = Tr(x)^2.
template <class I>
bool element_sqrt4(const I& d, bool half, const I& b4a, const I& b4b, I& xa, I& xb, int& xden) {
    I Nnum = b4a * b4a - d * b4b * b4b;
    if (Nnum % 16 != 0) return false;
    I Nb = Nnum / 16;
    if (Nb < 0) return false;
    I s = wit_sqrt(Nb);
    if (s * s != Nb) return false;
    if (b4a % 2 != 0) return false;
    I T0 = b4a / 2;  // Tr(beta)
    for (int si = 0; si < 2; ++si) {
        if (si == 1 && s == 0) break;
        I sigma = si == 0 ? s : I(-s);
        I T = T0 + 2 * sigma;
        if (T < 0) continue;
        I r = wit_sqrt(T);
        if (r * r != T) continue;
        for (int ti = 0; ti < 2; ++ti) {
            if (ti == 1 && r == 0) break;
            I t = ti == 0 ? r : I(-r);
            for (int den = 1; den <= (half ? 2 : 1); ++den) {
                I anum = t * den;
                if (anum % 2 != 0) continue;
                I a = anum / 2;
                I num2 = a * a - sigma * den * den;
                if (num2 % d != 0) continue;
                I bb = num2 / d;
                if (bb < 0) continue;
                I b = wit_sqrt(bb);
                if (b * b != bb) continue;
                for (int bi = 0; bi < 2; ++bi) {
                    if (bi == 1 && b == 0) break;
                    I bs = bi == 0 ? b : I(-b);
                    if (den == 2 && (a - bs) % 2 != 0) continue;
                    I lhs_a = (a * a + d * bs * bs) * 4;
                    I lhs_b = 8 * a * bs;
                    I dd = I(den) * den;
                    if (lhs_a == b4a * dd && lhs_b == b4b * dd) {
                        xa = a;
                        xb = bs;
                        xden = den;
                        return true;
                    }
                }
            }
        }
    }
    return false;
}

// Sort key for the two components of a returned pair: by max coordinate
// magnitude, then denominator, then coordinates. Fixes the reported order.
inline bool pair_key_less(const QuadInt& x, const QuadInt& y) {
    Int mx = std::max(boost::multiprecision::abs(x.a), boost::multiprecision::abs(x.b));
    Int my = std::max(boost::multiprecision::abs(y.a), boost::multiprecision::abs(y.b));
    if (mx != my) return mx < my;
    if (x.den != y.den) return x.den < y.den;
    if (x.b != y.b) return x.b < y.b;
    return x.a < y.a;
}

template <class I>
std::optional<std::pair<QuadInt, QuadInt>> scan_witness(const QuadInt& alpha, long bound) {
    const FieldDesc& f = alpha.field;
    const bool half = f.half_basis;
    I d, A4a, A4b;
    if constexpr (std::is_same_v<I, Int>) {
        d = f.d;
        A4a = alpha.a * (4 / alpha.den);
        A4b = alpha.b * (4 / alpha.den);
    } else {
        d = static_cast<I>(f.d.convert_to<long long>());
        A4a = static_cast<I>(alpha.a.convert_to<long long>()) * (4 / alpha.den);
        A4b = static_cast<I>(alpha.b.convert_to<long long>()) * (4 / alpha.den);
    }
    std::vector<long> order;
    for (long rr = 0; rr <= bound; ++rr) {
        order.clear();
        order.push_back(0);
        for (long m = 1; m <= rr; ++m) {
            order.push_back(m);
            order.push_back(-m);
        }
        for (long dp : order) {
            const bool edge = std::abs(dp) == rr;
            for (long c : order) {
                if (!edge && std::abs(c) != rr) continue;
                for (int den = 1; den <= 2; ++den) {
                    if (den == 2 && !(half && (c & 1) && (dp & 1))) continue;
                    const int scale = 4 / (den * den);
                    I cc = c, dd = dp;
                    I ya = (cc * cc + d * dd * dd) * scale;
                    I yb = (2 * cc * dd) * scale;
                    I b4a = A4a - ya;
                    I b4b = A4b - yb;
                    I xa, xb;
                    int xden;
                    if (!element_sqrt4<I>(d, half, b4a, b4b, xa, xb, xden)) continue;
                    QuadInt y = make(f, c, dp, den);
                    QuadInt x = make(f, to_Int(xa), to_Int(xb), xden);
                    QuadInt check = x * x + y * y;
                    if (check != alpha)
                        throw InvariantViolation("scan_witness: candidate failed exact verification");
                    if (pair_key_less(y, x)) return std::make_pair(y, x);
                    return std::make_pair(x, y);
                }
            }
        }
    }
    return std::nullopt;
}

}  // namespace detail

// Bounded search for x^2 + y^2 = alpha. One-sided: absence within the box
// proves nothing. Enumerates y only (coordinates 0, 1, -1, ... shell by
// shell) and recovers x in closed form from N(beta) and Tr(beta).
inline std::optional<std::pair<QuadInt, QuadInt>> find_witness(const QuadInt& alpha, const SearchBounds& bounds = {}) {
    if (is_zero(alpha)) throw DomainError("find_witness: zero element");
    if (bounds.coeff_bound < 0) throw DomainError("find_witness: negative bound");
    // worst-case magnitude through the scan decides the integer type
    Int C = bounds.coeff_bound;
    Int absd = boost::multiprecision::abs(alpha.field.d);
    Int M1 = 4 * (boost::multiprecision::abs(alpha.a) + boost::multiprecision::abs(alpha.b)) +
             4 * C * C * (1 + absd);
    if (M1 < (Int(1) << 45) && absd < (Int(1) << 30))
        return detail::scan_witness<__int128>(alpha, bounds.coeff_bound);
    return detail::scan_witness<Int>(alpha, bounds.coeff_bound);
}

inline Verdict decide(const QuadInt& alpha, const SearchBounds& bounds = {},
                      const std::map<Int, CriterionDescriptor>& descriptors = builtin_descriptors()) {
    if (is_zero(alpha)) throw DomainError("decide: zero element");
    Verdict v;
    v.local = local_table(alpha);
    if (!v.local.all_pass) {
        v.status = Status::unsolvable;
        v.mode = Mode::local_obstruction;
        return v;
    }
    auto it = descriptors.find(alpha.field.d);
    if (it != descriptors.end()) {
        NormFactorization nf = factor_norm(alpha, it->second);
        Rational sum = weighted_sum(it->second, nf);
        bool accept = criterion_accepts(it->second, sum);
        v.criterion = CriterionTrace{std::move(nf), sum, accept};
        v.mode = Mode::explicit_criterion;
        if (accept) {
            v.status = Status::solvable;
            v.witness = find_witness(alpha, bounds);  // confirmation only
        } else {
            v.status = Status::unsolvable;
        }
        return v;
    }
    if (hasse_field_list().count(alpha.field.d)) {
        v.status = Status::solvable;
        v.mode = Mode::hasse_mode;
        v.witness = find_witness(alpha, bounds);  // confirmation only
        return v;
    }
    v.witness = find_witness(alpha, bounds);
    if (v.witness) {
        v.status = Status::solvable;
        v.mode = Mode::witness_found;
    } else {
        v.status = Status::unknown;
        v.mode = Mode::inconclusive;
    }
    return v;
}

struct BatchItem {
    std::optional<Verdict> verdict;
    std::string error;  // nonempty exactly when verdict is absent
};

inline std::vector<BatchItem> batch_decide(const std::vector<QuadInt>& alphas, const SearchBounds& bounds = {},
                                           const std::map<Int, CriterionDescriptor>& descriptors = builtin_descriptors()) {
    for (std::size_t i = 1; i < alphas.size(); ++i)
        if (alphas[i].field != alphas[0].field) throw DomainError("batch_decide: mixed fields");
    std::vector<BatchItem> out;
    out.reserve(alphas.size());
    for (const QuadInt& a : alphas) {
        BatchItem item;
        try {
            item.verdict = decide(a, bounds, descriptors);
        } catch (const Error& e) {
            item.error = e.what();
        }
        out.push_back(std::move(item));
    }
    return out;
}

}  // namespace twosq
