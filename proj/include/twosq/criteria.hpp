#pragma once

#include <twosq/local.hpp>

#include <map>
#include <set>
#include <string>
#include <vector>

namespace twosq {

enum class PrimeClass { D1, D2, other };

inline std::string render(PrimeClass c) {
    switch (c) {
        case PrimeClass::D1: return "D1";
        case PrimeClass::D2: return "D2";
        case PrimeClass::other: return "other";
    }
    return "?";
}

// Membership test for one prime class: every listed Jacobi symbol must take
// its required value, and optionally h must have no root mod q.
struct ClassRule {
    PrimeClass name;  // D1 or D2
    std::vector<std::pair<Int, int>> symbol_conditions;
    bool require_poly_insolvable = false;
    int weight_halves;  // 2 for weight 1, 1 for weight 1/2
};

enum class AcceptRule { not_equal_one, even_total };

// The data of one explicit criterion: everything the engine needs to decide
// a field, with the auxiliary polynomial supplied as given data.
struct CriterionDescriptor {
    Int d;
    std::vector<Int> h_coeffs;  // ascending powers
    std::vector<ClassRule> classes;
    bool include_s1 = false;
    AcceptRule accept = AcceptRule::not_equal_one;
};

struct NormEntry {
    Int p;
    unsigned e;
    PrimeClass cls;
};

// |N(alpha)| = 2^s1 * |d|^s2 * prod p_i^e_i with each odd p_i != |d| tagged.
struct NormFactorization {
    unsigned s1 = 0;
    unsigned s2 = 0;
    std::vector<NormEntry> odd_primes;
};

// Exact rational in lowest terms, positive denominator. Only tiny values
// occur here (weighted sums in half-units) but the type is general.
struct Rational {
    Int num = 0;
    Int den = 1;

    static Rational of_halves(const Int& halves) {
        if (halves % 2 == 0) return {halves / 2, 1};
        return {halves, 2};
    }
    bool is_integer() const { return den == 1; }
    std::string str() const { return den == 1 ? num.str() : num.str() + "/" + den.str(); }
    friend bool operator==(const Rational& r, const Int& n) { return r.den == 1 && r.num == n; }
    friend bool operator==(const Rational& a, const Rational& b) { return a.num == b.num && a.den == b.den; }
};

inline std::map<Int, CriterionDescriptor> builtin_descriptors() {
    std::map<Int, CriterionDescriptor> m;
    {
        CriterionDescriptor c;
        c.d = -79;
        c.h_coeffs = {1772, -307, 0, 1};
        c.classes = {
            {PrimeClass::D1, {{79, 1}, {-1, 1}}, true, 2},
            {PrimeClass::D2, {{79, 1}, {-1, -1}}, true, 1},
        };
        c.include_s1 = false;
        c.accept = AcceptRule::not_equal_one;
        m.emplace(c.d, c);
    }
    {
        CriterionDescriptor c;
        c.d = 17;
        c.h_coeffs = {17, 0, -2, 0, 1};
        c.classes = {
            {PrimeClass::D1, {{-17, 1}, {-1, -1}}, false, 1},
            {PrimeClass::D2, {{-17, 1}, {-1, 1}}, true, 2},
        };
        c.include_s1 = true;
        c.accept = AcceptRule::even_total;
        m.emplace(c.d, c);
    }
    return m;
}

// First class whose conditions all hold; other if none match.
inline PrimeClass classify_prime(const CriterionDescriptor& desc, const Int& q) {
    if (q < 3 || q % 2 == 0 || !is_prime(q)) throw DomainError("classify_prime: q must be an odd prime");
    if (boost::multiprecision::abs(desc.d) % q == 0) throw DomainError("classify_prime: q divides d");
    for (const ClassRule& rule : desc.classes) {
        bool ok = true;
        for (const auto& [base, required] : rule.symbol_conditions) {
            if (jacobi(base, q) != required) {
                ok = false;
                break;
            }
        }
        if (ok && rule.require_poly_insolvable && poly_has_root_mod_p(desc.h_coeffs, q)) ok = false;
        if (ok) return rule.name;
    }
    return PrimeClass::other;
}

inline NormFactorization factor_norm(const QuadInt& alpha, const CriterionDescriptor& desc) {
    if (is_zero(alpha)) throw DomainError("factor_norm: zero element");
    if (alpha.field.d != desc.d) throw DomainError("factor_norm: descriptor is for a different field");
    Int absd = boost::multiprecision::abs(desc.d);
    NormFactorization nf;
    for (const auto& [p, e] : factor(norm(alpha)).factors) {
        if (p == 2) {
            nf.s1 = e;
        } else if (p == absd) {
            nf.s2 = e;
        } else {
            nf.odd_primes.push_back({p, e, classify_prime(desc, p)});
        }
    }
    return nf;
}

inline Rational weighted_sum(const CriterionDescriptor& desc, const NormFactorization& nf) {
    Int halves = desc.include_s1 ? Int(2) * nf.s1 : Int(0);
    for (const NormEntry& entry : nf.odd_primes) {
        for (const ClassRule& rule : desc.classes) {
            if (rule.name == entry.cls) {
                halves += Int(rule.weight_halves) * entry.e;
                break;
            }
        }
    }
    return Rational::of_halves(halves);
}

enum class CriterionOutcome { solvable, unsolvable };

inline bool criterion_accepts(const CriterionDescriptor& desc, const Rational& sum) {
    if (desc.accept == AcceptRule::not_equal_one) return !(sum == Int(1));
    if (!sum.is_integer())
        throw InvariantViolation("criterion_accepts: half-integral sum under even_total");
    return sum.num % 2 == 0;
}

inline CriterionOutcome evaluate(const CriterionDescriptor& desc, const QuadInt& alpha, const LocalTable& table) {
    if (is_zero(alpha)) throw DomainError("evaluate: zero element");
    if (!table.all_pass) return CriterionOutcome::unsolvable;
    return criterion_accepts(desc, weighted_sum(desc, factor_norm(alpha, desc)))
               ? CriterionOutcome::solvable
               : CriterionOutcome::unsolvable;
}

// Imaginary fields known to satisfy the Hasse principle for sums of two
// integral squares: all-local-pass alone decides them.
inline const std::set<Int>& hasse_field_list() {
    static const std::set<Int> fields{-23, -31, -47, -59, -71};
    return fields;
}

}  // namespace twosq
