#pragma once

#include <twosq/local.hpp>
#include <twosq/pell.hpp>

#include <optional>
#include <utility>
#include <vector>

namespace twosq {

struct MinusOneResult {
    // Exactly one of the two is populated: a pair (x, y) with x^2 + y^2 = -1
    // in Q(sqrt(-p)), or the dyadic places certifying that none exists.
    std::optional<std::pair<QuadInt, QuadInt>> witness;
    std::vector<Place> obstruction_places;
};

// Whether -1 is a sum of two integral squares in Q(sqrt(-p)), with an exact
// certificate either way. Construction by residue class of p:
//   p = 1 (mod 4) or p = 2: x0^2 - p y0^2 = -1 gives x0^2 + (y0 sqrt(-p))^2.
//   p = 3 (mod 8): x0^2 - p y0^2 = -2 with x0, y0 odd gives the half pair
//                  ((x0 + y0 sqrt(-p))/2, (x0 - y0 sqrt(-p))/2).
//   p = 7 (mod 8): -1 fails at both places over 2 (2 splits; odd part of the
//                  image of -1 is 3 mod 4), so no witness can exist.
inline MinusOneResult minus_one_witness(const Int& p) {
    if (!is_prime(p)) throw DomainError("minus_one_witness: p must be prime");
    FieldDesc F = make_field(-p);
    MinusOneResult out;
    if (p == 2 || p % 4 == 1) {
        auto s = solve_pm(p, -1);
        if (!s) throw InvariantViolation("minus_one_witness: x^2 - py^2 = -1 missing");
        out.witness = {make(F, s->x0, 0, 1), make(F, 0, s->y0, 1)};
    } else if (p % 8 == 3) {
        auto s = solve_pm(p, -2);
        if (!s) throw InvariantViolation("minus_one_witness: x^2 - py^2 = -2 missing");
        if (s->x0 % 2 == 0 || s->y0 % 2 == 0)
            throw InvariantViolation("minus_one_witness: -2 solution must have odd coordinates");
        out.witness = {make(F, s->x0, s->y0, 2), make(F, s->x0, -s->y0, 2)};
    } else {
        QuadInt minus_one = make(F, -1, 0, 1);
        for (int idx : {1, 2}) {
            Place pl = Place::finite(F, 2, idx);
            if (dyadic_split_verdict(minus_one, pl).solvable)
                throw InvariantViolation("minus_one_witness: expected dyadic obstruction at " + pl.render());
            out.obstruction_places.push_back(pl);
        }
        return out;
    }
    QuadInt check = out.witness->first * out.witness->first + out.witness->second * out.witness->second;
    if (check != make(F, -1, 0, 1)) throw InvariantViolation("minus_one_witness: witness does not square to -1");
    return out;
}

struct EpsilonObstruction {
    // A local place at which the fundamental unit eps of Q(sqrt(p)) is not a
    // sum of two squares. For p = 3 (mod 4) the auxiliary unit
    // eps1 = A + B sqrt(p) (totally positive, B odd) witnesses that the
    // obstruction is intrinsic and not an artifact of the chosen unit.
    struct Aux {
        QuadInt epsilon1;
        Int A;
        Int B;
    };
    QuadInt epsilon;
    Place failing_place;
    std::optional<Aux> auxiliary;
};

// The fundamental unit of Q(sqrt(p)) is never a sum of two integral squares;
// this returns the failing place. For p = 1 (mod 4) and p = 2 the unit has
// norm -1 and is negative under the conjugate embedding. For p = 3 (mod 4)
// both real embeddings are positive for eps1 and the failure is at the
// (ramified) place over 2, certified by exhaustive enumeration; eps1 is
// assembled from the case Pell solution as A = (x0^2 + p y0^2)/2, B = x0 y0.
inline EpsilonObstruction epsilon_obstruction(const Int& p) {
    if (!is_prime(p)) throw DomainError("epsilon_obstruction: p must be prime");
    FieldDesc F = make_field(p);
    EpsilonObstruction out;
    out.epsilon = fundamental_unit(F);
    if (p == 2 || p % 4 == 1) {
        if (norm(out.epsilon) != -1)
            throw InvariantViolation("epsilon_obstruction: unit norm must be -1 for p = 1 (mod 4) or p = 2");
        if (embed_sign(out.epsilon, Embedding::minus_root) != -1)
            throw InvariantViolation("epsilon_obstruction: conjugate embedding must be negative");
        out.failing_place = Place::real(Embedding::minus_root);
        return out;
    }
    if (norm(out.epsilon) != 1)
        throw InvariantViolation("epsilon_obstruction: unit norm must be +1 for p = 3 (mod 4)");
    PellCaseResult pc = pell_case_check(p);
    const Int& x0 = pc.solution.x0;
    const Int& y0 = pc.solution.y0;
    Int A = (x0 * x0 + p * y0 * y0) / 2;
    Int B = x0 * y0;
    if ((x0 * x0 + p * y0 * y0) % 2 != 0)
        throw InvariantViolation("epsilon_obstruction: A is not integral");
    if (A * A - p * B * B != 1) throw InvariantViolation("epsilon_obstruction: eps1 is not a unit");
    if (B % 2 == 0) throw InvariantViolation("epsilon_obstruction: B must be odd");
    QuadInt eps1 = make(F, A, B, 1);
    if (embed_sign(eps1, Embedding::plus_root) != 1 || embed_sign(eps1, Embedding::minus_root) != 1)
        throw InvariantViolation("epsilon_obstruction: eps1 must be totally positive");
    LocalVerdict dv = dyadic_enum_verdict(out.epsilon);
    if (dv.solvable)
        throw InvariantViolation("epsilon_obstruction: expected dyadic obstruction for the unit");
    out.failing_place = dv.place;
    out.auxiliary = EpsilonObstruction::Aux{eps1, A, B};
    return out;
}

}  // namespace twosq
