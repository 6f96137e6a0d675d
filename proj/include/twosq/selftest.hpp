#pragma once

#include <twosq/constructions.hpp>
#include <twosq/decide.hpp>

#include <functional>
#include <random>
#include <string>
#include <vector>

namespace twosq {

struct SuiteResult {
    std::string name;
    bool pass;
    std::string detail;
};

namespace selftest_detail {

inline SuiteResult run_guarded(const std::string& name, const std::function<SuiteResult()>& body) {
    try {
        return body();
    } catch (const std::exception& e) {
        return {name, false, std::string("exception: ") + e.what()};
    }
}

// Residue-case Pell sweep: the promised equation is solvable for every prime,
// with exact verification of each solution.
inline SuiteResult pell_case_sweep() {
    const std::string name = "pell-case-sweep";
    long count = 0;
    for (Int p = 2; p < 1000; ++p) {
        if (!is_prime(p)) continue;
        PellCaseResult r = pell_case_check(p);
        int expected = (p == 2 || p % 4 == 1) ? -1 : (p % 8 == 7 ? 2 : -2);
        if (r.solution.N != expected)
            return {name, false, "wrong case equation for p = " + p.str()};
        if (r.solution.x0 * r.solution.x0 - p * r.solution.y0 * r.solution.y0 != expected)
            return {name, false, "solution fails exact check for p = " + p.str()};
        ++count;
    }
    return {name, true, std::to_string(count) + " primes below 1000 verified"};
}

// -1 as a sum of two squares in Q(sqrt(-p)): witness for p != 7 (mod 8)
// (with half-coordinates for p = 3 mod 8), dyadic obstruction otherwise.
inline SuiteResult minus_one_sweep() {
    const std::string name = "minus-one-sweep";
    long witnesses = 0, obstructions = 0;
    for (Int p = 2; p < 500; ++p) {
        if (!is_prime(p)) continue;
        MinusOneResult r = minus_one_witness(p);
        FieldDesc F = make_field(-p);
        if (p % 8 == 7) {
            if (r.witness || r.obstruction_places.size() != 2)
                return {name, false, "expected a two-place obstruction for p = " + p.str()};
            QuadInt minus_one = make(F, -1, 0, 1);
            for (const Place& pl : r.obstruction_places) {
                if (dyadic_split_verdict(minus_one, pl).solvable)
                    return {name, false, "obstruction place passes for p = " + p.str()};
            }
            ++obstructions;
            continue;
        }
        if (!r.witness) return {name, false, "missing witness for p = " + p.str()};
        const auto& [x, y] = *r.witness;
        if (x * x + y * y != make(F, -1, 0, 1))
            return {name, false, "witness fails exact check for p = " + p.str()};
        if (p % 8 == 3 && (x.den != 2 || y.den != 2))
            return {name, false, "expected half-coordinates for p = " + p.str()};
        ++witnesses;
    }
    return {name, true, std::to_string(witnesses) + " witnesses, " + std::to_string(obstructions) + " obstructions"};
}

// The fundamental unit is never a sum of two squares; the failing place has
// the promised shape, and for p = 3 (mod 4) the auxiliary unit checks out
// and is a power of the fundamental unit.
inline SuiteResult unit_obstruction_sweep() {
    const std::string name = "unit-obstruction-sweep";
    long real_cases = 0, dyadic_cases = 0;
    for (Int p = 2; p < 300; ++p) {
        if (!is_prime(p)) continue;
        EpsilonObstruction eo = epsilon_obstruction(p);
        FieldDesc F = make_field(p);
        if (p == 2 || p % 4 == 1) {
            if (eo.auxiliary) return {name, false, "unexpected auxiliary for p = " + p.str()};
            if (eo.failing_place.kind != Place::Kind::real ||
                eo.failing_place.embedding != Embedding::minus_root)
                return {name, false, "expected the conjugate real place for p = " + p.str()};
            if (embed_sign(eo.epsilon, Embedding::minus_root) != -1)
                return {name, false, "unit not negative under conjugate embedding, p = " + p.str()};
            ++real_cases;
            continue;
        }
        if (!eo.auxiliary) return {name, false, "missing auxiliary for p = " + p.str()};
        const auto& aux = *eo.auxiliary;
        if (aux.A * aux.A - p * aux.B * aux.B != 1)
            return {name, false, "aux unit relation fails for p = " + p.str()};
        if (aux.B % 2 == 0) return {name, false, "B not odd for p = " + p.str()};
        if (embed_sign(aux.epsilon1, Embedding::plus_root) != 1 ||
            embed_sign(aux.epsilon1, Embedding::minus_root) != 1)
            return {name, false, "aux unit not totally positive for p = " + p.str()};
        if (eo.failing_place.kind != Place::Kind::finite || eo.failing_place.q != 2)
            return {name, false, "expected the place over 2 for p = " + p.str()};
        if (dyadic_enum_verdict(eo.epsilon).solvable)
            return {name, false, "enumeration accepts the unit for p = " + p.str()};
        // repeated division: epsilon1 must be a power of the fundamental unit
        QuadInt z = aux.epsilon1;
        QuadInt one = make(F, 1, 0, 1);
        QuadInt inv = conj(eo.epsilon);  // norm +1 here
        int steps = 0;
        while (z != one && steps < 500) {
            z = z * inv;
            ++steps;
        }
        if (z != one || steps == 0)
            return {name, false, "aux unit is not a positive power of the unit for p = " + p.str()};
        ++dyadic_cases;
    }
    return {name, true, std::to_string(real_cases) + " real-place cases, " + std::to_string(dyadic_cases) + " dyadic cases"};
}

// Pinned instances in Q(sqrt(-79)).
inline SuiteResult field_m79_instances() {
    const std::string name = "field-m79-instances";
    FieldDesc F = make_field(-79);
    Verdict v2 = decide(make(F, 2, 0, 1));
    if (v2.status != Status::solvable || !v2.witness)
        return {name, false, "alpha = 2 must be solvable with a witness"};
    if (!(v2.witness->first == make(F, 1, 0, 1) && v2.witness->second == make(F, 1, 0, 1)))
        return {name, false, "alpha = 2 witness must be (1, 1), got (" + render(v2.witness->first) + ", " + render(v2.witness->second) + ")"};
    Verdict v5 = decide(make(F, 5, 0, 1));
    if (v5.status != Status::solvable || !v5.witness || !v5.criterion)
        return {name, false, "alpha = 5 must be solvable with witness and criterion trace"};
    if (!(v5.witness->first == make(F, 1, 0, 1) && v5.witness->second == make(F, 2, 0, 1)))
        return {name, false, "alpha = 5 witness must be (1, 2), got (" + render(v5.witness->first) + ", " + render(v5.witness->second) + ")"};
    if (!(v5.criterion->sum == Int(2))) return {name, false, "alpha = 5 criterion sum must be 2"};
    Verdict vh = decide(make(F, 1, 1, 2));
    if (vh.status != Status::unsolvable || vh.mode != Mode::explicit_criterion || !vh.criterion)
        return {name, false, "alpha = (1+sqrt(-79))/2 must be criterion-unsolvable"};
    if (!(vh.criterion->sum == Int(1)))
        return {name, false, "alpha = (1+sqrt(-79))/2 criterion sum must be exactly 1, got " + vh.criterion->sum.str()};
    return {name, true, "3 pinned instances verified"};
}

// Pinned instances in Q(sqrt(17)).
inline SuiteResult field_p17_instances() {
    const std::string name = "field-p17-instances";
    FieldDesc F = make_field(17);
    Verdict vs = decide(make(F, 0, 1, 1));
    if (vs.status != Status::unsolvable || vs.mode != Mode::local_obstruction)
        return {name, false, "alpha = sqrt(17) must fail locally (real sign)"};
    Verdict vu = decide(make(F, 4, 1, 1));
    if (vu.status != Status::unsolvable || vu.mode != Mode::local_obstruction)
        return {name, false, "alpha = 4+sqrt(17) must fail locally (real sign)"};
    Verdict vw = decide(make(F, 17, 4, 1));
    if (vw.status != Status::solvable || !vw.witness)
        return {name, false, "alpha = 17+4*sqrt(17) must be solvable with a witness"};
    if (!(vw.witness->first == make(F, 3, 1, 2) && vw.witness->second == make(F, 5, 1, 2)))
        return {name, false, "alpha = 17+4*sqrt(17) witness must be ((3+sqrt(17))/2, (5+sqrt(17))/2), got (" +
                                  render(vw.witness->first) + ", " + render(vw.witness->second) + ")"};
    return {name, true, "3 pinned instances verified"};
}

struct SweepStats {
    long checked = 0;
    long witnessed = 0;
    long soundness_violations = 0;
    long unwitnessed_solvable = 0;
    long parity_violations = 0;
    long nonintegral_sums = 0;
};

// One pass over both descriptor fields feeding the soundness, completeness
// and parity criteria: all alpha with |a|,|b| <= 8 (both legal dens) and
// 0 < |N(alpha)| <= 2000.
inline SweepStats descriptor_field_sweep() {
    SweepStats st;
    auto descs = builtin_descriptors();
    for (long d : {-79L, 17L}) {
        FieldDesc F = make_field(d);
        const CriterionDescriptor& desc = descs.at(Int(d));
        std::vector<QuadInt> alphas;
        for (long a = -8; a <= 8; ++a)
            for (long b = -8; b <= 8; ++b) {
                if (a == 0 && b == 0) continue;
                alphas.push_back(make(F, a, b, 1));
                if (F.half_basis && (a & 1) && (b & 1)) alphas.push_back(make(F, a, b, 2));
            }
        for (const QuadInt& alpha : alphas) {
            Int N = norm(alpha);
            if (boost::multiprecision::abs(N) > 2000) continue;
            ++st.checked;
            LocalTable table = local_table(alpha);
            NormFactorization nf = factor_norm(alpha, desc);
            Rational sum = weighted_sum(desc, nf);
            bool accept = criterion_accepts(desc, sum);
            if (!sum.is_integer()) ++st.nonintegral_sums;
            PrimeClass forced_even = d == -79 ? PrimeClass::D2 : PrimeClass::D1;
            for (const NormEntry& e : nf.odd_primes)
                if (e.cls == forced_even && e.e % 2 != 0) ++st.parity_violations;
            auto w = find_witness(alpha, SearchBounds{200});
            if (w) {
                ++st.witnessed;
                const auto& [x, y] = *w;
                if (x * x + y * y != alpha) ++st.soundness_violations;
                if (!table.all_pass) ++st.soundness_violations;
                if (!accept) ++st.soundness_violations;
            } else if (table.all_pass && accept) {
                ++st.unwitnessed_solvable;
            }
        }
    }
    return st;
}

inline SuiteResult witness_soundness_sweep(const SweepStats& st) {
    const std::string name = "witness-soundness-sweep";
    if (st.soundness_violations != 0)
        return {name, false, std::to_string(st.soundness_violations) + " violations among " +
                                 std::to_string(st.witnessed) + " witnessed instances"};
    return {name, true, std::to_string(st.witnessed) + " witnessed of " + std::to_string(st.checked) +
                            " alpha, 0 violations"};
}

inline SuiteResult completeness_monitor(const SweepStats& st) {
    const std::string name = "completeness-monitor";
    if (st.unwitnessed_solvable != 0)
        return {name, false, std::to_string(st.unwitnessed_solvable) +
                                 " criterion-solvable alpha without witness at bound 200 (investigation trigger)"};
    return {name, true, "0 criterion-solvable alpha without witness at bound 200"};
}

inline SuiteResult exponent_parity_sweep(const SweepStats& st) {
    const std::string name = "exponent-parity-sweep";
    if (st.parity_violations != 0 || st.nonintegral_sums != 0)
        return {name, false, std::to_string(st.parity_violations) + " parity violations, " +
                                 std::to_string(st.nonintegral_sums) + " non-integral sums"};
    return {name, true, "all weighted sums integral, forced-even classes even over " +
                            std::to_string(st.checked) + " alpha"};
}

/// Hasse-mode field: local pass must come with a findable witness.
inline SuiteResult hasse_mode_m23() {
    const std::string name = "hasse-mode-m23";
    FieldDesc F = make_field(-23);
    std::mt19937_64 rng(20260815u);
    std::uniform_int_distribution<long> adist(-17, 17), bdist(-3, 3), coin(0, 1);
    long collected = 0, failures = 0, tried = 0;
    while (collected < 200 && tried < 200000) {
        ++tried;
        long a = adist(rng), b = bdist(rng);
        int den = 1;
        if (coin(rng) && (a & 1) && (b & 1)) den = 2;
        if (a == 0 && b == 0) continue;
        QuadInt alpha = make(F, a, b, den);
        if (boost::multiprecision::abs(norm(alpha)) > 300) continue;
        if (!local_table(alpha).all_pass) continue;
        ++collected;
        if (!find_witness(alpha, SearchBounds{200})) ++failures;
    }
    if (collected < 200) return {name, false, "could not collect 200 locally solvable samples"};
    if (failures != 0) return {name, false, std::to_string(failures) + " of 200 locally solvable alpha lack a witness"};
    return {name, true, "200 of 200 locally solvable alpha witnessed"};
}

// Split fields: the per-place closed forms must agree with one combined
// enumeration; non-split fields: the enumeration verdict must be stable when
// the modulus exponent grows.
inline SuiteResult dyadic_cross_validation() {
    const std::string name = "dyadic-cross-validation";
    std::mt19937_64 rng(791717u);
    std::uniform_int_distribution<long> cdist(-40, 40), coin(0, 1);
    for (long d : {17L, -79L}) {
        FieldDesc F = make_field(d);
        Place p1 = Place::finite(F, 2, 1);
        Place p2 = Place::finite(F, 2, 2);
        long done = 0;
        while (done < 200) {
            long a = cdist(rng), b = cdist(rng);
            int den = 1;
            if (F.half_basis && coin(rng) && (a & 1) && (b & 1)) den = 2;
            if (a == 0 && b == 0) continue;
            QuadInt alpha = make(F, a, b, den);
            Int N = boost::multiprecision::abs(norm(alpha));
            unsigned w2 = N == 1 ? 0 : valuation(N, 2);
            if (w2 > 3) continue;
            bool closed = dyadic_split_verdict(alpha, p1).solvable && dyadic_split_verdict(alpha, p2).solvable;
            bool enumerated = detail::sum_two_squares_mod_2n(alpha, static_cast<int>(w2) + 5);
            if (closed != enumerated)
                return {name, false, "closed form and enumeration disagree at d = " + std::to_string(d) +
                                         ", alpha = " + render(alpha)};
            ++done;
        }
    }
    for (long d : {-5L, -3L, 7L}) {
        FieldDesc F = make_field(d);
        long done = 0, high_valuation = 0;
        while (done < 200) {
            long a = cdist(rng), b = cdist(rng);
            int den = 1;
            if (F.half_basis && coin(rng) && (a & 1) && (b & 1)) den = 2;
            if (a == 0 && b == 0) continue;
            QuadInt alpha = make(F, a, b, den);
            Int N = boost::multiprecision::abs(norm(alpha));
            unsigned w2 = N == 1 ? 0 : valuation(N, 2);
            if (w2 > 3) continue;
            if (w2 > 1) {
                if (high_valuation >= 10) continue;  // keep the 4^n cost bounded
                ++high_valuation;
            }
            int n = static_cast<int>(w2) + 5;
            bool v0 = detail::sum_two_squares_mod_2n(alpha, n);
            bool v1 = detail::sum_two_squares_mod_2n(alpha, n + 1);
            bool v2 = detail::sum_two_squares_mod_2n(alpha, n + 2);
            if (v0 != v1 || v1 != v2)
                return {name, false, "enumeration not stable in the modulus at d = " + std::to_string(d) +
                                         ", alpha = " + render(alpha)};
            ++done;
        }
    }
    return {name, true, "closed form = enumeration on 400 split samples; stable on 600 non-split samples"};
}

}  // namespace selftest_detail

// The acceptance battery. Each entry is independent; exceptions fail the
// entry rather than aborting the run. A nonempty filter selects the suites
// whose names contain it (the three descriptor-sweep suites share one pass).
inline std::vector<SuiteResult> run_acceptance(const std::string& filter = "") {
    namespace sd = selftest_detail;
    auto want = [&](const char* n) {
        return filter.empty() || std::string(n).find(filter) != std::string::npos;
    };
    std::vector<SuiteResult> out;
    if (want("pell-case-sweep")) out.push_back(sd::run_guarded("pell-case-sweep", sd::pell_case_sweep));
    if (want("minus-one-sweep")) out.push_back(sd::run_guarded("minus-one-sweep", sd::minus_one_sweep));
    if (want("unit-obstruction-sweep"))
        out.push_back(sd::run_guarded("unit-obstruction-sweep", sd::unit_obstruction_sweep));
    if (want("field-m79-instances")) out.push_back(sd::run_guarded("field-m79-instances", sd::field_m79_instances));
    if (want("field-p17-instances")) out.push_back(sd::run_guarded("field-p17-instances", sd::field_p17_instances));
    bool w6 = want("witness-soundness-sweep"), w7 = want("completeness-monitor"), w8 = want("exponent-parity-sweep");
    if (w6 || w7 || w8) {
        try {
            sd::SweepStats st = sd::descriptor_field_sweep();
            if (w6) out.push_back(sd::witness_soundness_sweep(st));
            if (w7) out.push_back(sd::completeness_monitor(st));
            if (w8) out.push_back(sd::exponent_parity_sweep(st));
        } catch (const std::exception& e) {
            for (const char* n : {"witness-soundness-sweep", "completeness-monitor", "exponent-parity-sweep"})
                if (want(n)) out.push_back({n, false, std::string("exception: ") + e.what()});
        }
    }
    if (want("hasse-mode-m23")) out.push_back(sd::run_guarded("hasse-mode-m23", sd::hasse_mode_m23));
    if (want("dyadic-cross-validation"))
        out.push_back(sd::run_guarded("dyadic-cross-validation", sd::dyadic_cross_validation));
    return out;
}

}  // namespace twosq
