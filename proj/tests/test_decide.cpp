#include <twosq/decide.hpp>

#include <catch2/catch_amalgamated.hpp>

#include <random>

using twosq::Int;
using twosq::Mode;
using twosq::QuadInt;
using twosq::SearchBounds;
using twosq::Status;

namespace {

QuadInt random_elem(const twosq::FieldDesc& F, std::mt19937_64& rng, long box) {
    std::uniform_int_distribution<long> dist(-box, box), coin(0, 1);
    for (;;) {
        long a = dist(rng), b = dist(rng);
        if (a == 0 && b == 0) continue;
        if (F.half_basis && coin(rng) && (a % 2 != 0) && (b % 2 != 0)) return twosq::make(F, a, b, 2);
        return twosq::make(F, a, b, 1);
    }
}

}  // namespace

TEST_CASE("witness search fixed values") {
    auto F79 = twosq::make_field(-79);
    auto F17 = twosq::make_field(17);

    auto w = twosq::find_witness(twosq::make(F79, 5, 0, 1), SearchBounds{5});
    REQUIRE(w.has_value());
    CHECK(w->first == twosq::make(F79, 1, 0, 1));
    CHECK(w->second == twosq::make(F79, 2, 0, 1));

    w = twosq::find_witness(twosq::make(F79, 2, 0, 1), SearchBounds{5});
    REQUIRE(w.has_value());
    CHECK(w->first == twosq::make(F79, 1, 0, 1));
    CHECK(w->second == twosq::make(F79, 1, 0, 1));

    w = twosq::find_witness(twosq::make(F79, 4, 0, 1), SearchBounds{5});
    REQUIRE(w.has_value());
    CHECK(w->first == twosq::make(F79, 0, 0, 1));
    CHECK(w->second == twosq::make(F79, 2, 0, 1));

    w = twosq::find_witness(twosq::make(F17, 17, 4, 1), SearchBounds{10});
    REQUIRE(w.has_value());
    CHECK(w->first == twosq::make(F17, 3, 1, 2));
    CHECK(w->second == twosq::make(F17, 5, 1, 2));

    CHECK_FALSE(twosq::find_witness(twosq::make(F79, 1, 1, 2), SearchBounds{50}).has_value());
}

TEST_CASE("witness search finds planted decompositions") {
    std::mt19937_64 rng(20260815);
    for (long d : {-79L, 17L, -7L, 7L, -3L, -5L}) {
        auto F = twosq::make_field(d);
        for (int i = 0; i < 40; ++i) {
            QuadInt x = random_elem(F, rng, 12), y = random_elem(F, rng, 12);
            QuadInt alpha = x * x + y * y;
            if (twosq::is_zero(alpha)) continue;
            auto w = twosq::find_witness(alpha, SearchBounds{14});
            REQUIRE(w.has_value());
            CHECK(w->first * w->first + w->second * w->second == alpha);
            CHECK_FALSE(twosq::detail::pair_key_less(w->second, w->first));
        }
    }
}

TEST_CASE("witness search domain errors") {
    auto F = twosq::make_field(17);
    CHECK_THROWS_AS(twosq::find_witness(twosq::make(F, 0, 0, 1)), twosq::DomainError);
    CHECK_THROWS_AS(twosq::find_witness(twosq::make(F, 5, 0, 1), SearchBounds{-1}), twosq::DomainError);
    CHECK(SearchBounds{}.coeff_bound == 200);
}

TEST_CASE("decide fixed instances") {
    auto F79 = twosq::make_field(-79);
    auto F17 = twosq::make_field(17);

    auto v = twosq::decide(twosq::make(F79, 2, 0, 1));
    CHECK(v.status == Status::solvable);
    CHECK(v.mode == Mode::explicit_criterion);
    REQUIRE(v.criterion.has_value());
    CHECK(v.criterion->sum == Int(0));
    CHECK(v.criterion->accept);
    CHECK(v.criterion->factorization.s1 == 2);
    REQUIRE(v.witness.has_value());
    CHECK(v.witness->first == twosq::make(F79, 1, 0, 1));
    CHECK(v.witness->second == twosq::make(F79, 1, 0, 1));

    v = twosq::decide(twosq::make(F79, 5, 0, 1));
    CHECK(v.status == Status::solvable);
    CHECK(v.mode == Mode::explicit_criterion);
    CHECK(v.criterion->sum == Int(2));
    REQUIRE(v.witness.has_value());

    v = twosq::decide(twosq::make(F79, 1, 1, 2));
    CHECK(v.status == Status::unsolvable);
    CHECK(v.mode == Mode::explicit_criterion);
    CHECK(v.local.all_pass);
    REQUIRE(v.criterion.has_value());
    CHECK(v.criterion->sum == Int(1));
    CHECK_FALSE(v.criterion->accept);
    CHECK_FALSE(v.witness.has_value());

    v = twosq::decide(twosq::make(F17, 0, 1, 1));
    CHECK(v.status == Status::unsolvable);
    CHECK(v.mode == Mode::local_obstruction);
    CHECK_FALSE(v.local.all_pass);
    CHECK_FALSE(v.criterion.has_value());
    CHECK_FALSE(v.witness.has_value());

    v = twosq::decide(twosq::make(F17, 4, 1, 1));
    CHECK(v.status == Status::unsolvable);
    CHECK(v.mode == Mode::local_obstruction);

    v = twosq::decide(twosq::make(F17, 17, 4, 1));
    CHECK(v.status == Status::solvable);
    CHECK(v.mode == Mode::explicit_criterion);
    CHECK(v.criterion->sum == Int(0));
    CHECK(v.criterion->factorization.s2 == 1);
    REQUIRE(v.witness.has_value());
    CHECK(v.witness->first == twosq::make(F17, 3, 1, 2));
    CHECK(v.witness->second == twosq::make(F17, 5, 1, 2));

    auto F5 = twosq::make_field(-5);
    v = twosq::decide(twosq::make(F5, 1, 1, 1));  // odd sqrt coefficient
    CHECK(v.status == Status::unsolvable);
    CHECK(v.mode == Mode::local_obstruction);
}

TEST_CASE("decide hasse mode") {
    auto F23 = twosq::make_field(-23);
    auto v = twosq::decide(twosq::make(F23, 2, 0, 1));
    CHECK(v.status == Status::solvable);
    CHECK(v.mode == Mode::hasse_mode);
    CHECK_FALSE(v.criterion.has_value());
    REQUIRE(v.witness.has_value());
    CHECK(v.witness->first * v.witness->first + v.witness->second * v.witness->second ==
          twosq::make(F23, 2, 0, 1));

    v = twosq::decide(twosq::make(F23, 1, 1, 2));  // norm 6, dyadic obstruction
    CHECK(v.status == Status::unsolvable);
    CHECK(v.mode == Mode::local_obstruction);
}

TEST_CASE("decide reports unknown outside its criteria") {
    auto F = twosq::make_field(-103);
    QuadInt x = twosq::make(F, 7, 2, 1), y = twosq::make(F, 5, 3, 1);
    QuadInt alpha = x * x + y * y;  // globally representable, so locally fine
    auto v = twosq::decide(alpha, SearchBounds{1});
    CHECK(v.status == Status::unknown);
    CHECK(v.mode == Mode::inconclusive);
    CHECK(v.local.all_pass);
    CHECK_FALSE(v.witness.has_value());
    CHECK_FALSE(v.criterion.has_value());

    auto v2 = twosq::decide(alpha, SearchBounds{8});
    CHECK(v2.status == Status::solvable);
    CHECK(v2.mode == Mode::witness_found);
    REQUIRE(v2.witness.has_value());
    CHECK(v2.witness->first * v2.witness->first + v2.witness->second * v2.witness->second == alpha);
}

TEST_CASE("decide structural invariants") {
    std::mt19937_64 rng(4711);
    for (long d : {-79L, 17L, -23L, 7L, -103L}) {
        auto F = twosq::make_field(d);
        bool split2 = twosq::splitting_type(F, 2).kind == twosq::SplitKind::split;
        for (int i = 0; i < 50; ++i) {
            QuadInt alpha = random_elem(F, rng, 10);
            if (!split2 && twosq::valuation(twosq::norm(alpha), 2) > 6) continue;
            auto v = twosq::decide(alpha, SearchBounds{30});
            CHECK((v.status == Status::unknown) == (v.mode == Mode::inconclusive));
            CHECK((v.mode == Mode::explicit_criterion) == v.criterion.has_value());
            if (v.status == Status::unknown) {
                CHECK(v.local.all_pass);
                CHECK_FALSE(v.witness.has_value());
            }
            if (d == -79 || d == 17 || d == -23) CHECK(v.status != Status::unknown);
            if (!v.local.all_pass) {
                CHECK(v.status == Status::unsolvable);
                CHECK(v.mode == Mode::local_obstruction);
            }
            if (v.witness) {
                CHECK(v.status == Status::solvable);
                CHECK(v.witness->first * v.witness->first + v.witness->second * v.witness->second == alpha);
            }
            if (v.criterion) CHECK(v.criterion->accept == (v.status == Status::solvable));
        }
    }
}

TEST_CASE("batch decide") {
    auto F79 = twosq::make_field(-79);
    auto F17 = twosq::make_field(17);

    auto items = twosq::batch_decide({twosq::make(F79, 2, 0, 1), twosq::make(F79, 5, 0, 1),
                                      twosq::make(F79, 1, 1, 2)});
    REQUIRE(items.size() == 3);
    CHECK(items[0].verdict->status == Status::solvable);
    CHECK(items[1].verdict->status == Status::solvable);
    CHECK(items[2].verdict->status == Status::unsolvable);
    for (const auto& it : items) CHECK(it.error.empty());

    items = twosq::batch_decide({twosq::make(F17, 0, 1, 1), twosq::make(F17, 4, 1, 1),
                                 twosq::make(F17, 17, 4, 1)});
    CHECK(items[0].verdict->mode == Mode::local_obstruction);
    CHECK(items[1].verdict->mode == Mode::local_obstruction);
    CHECK(items[2].verdict->status == Status::solvable);

    CHECK(twosq::batch_decide({}).empty());

    items = twosq::batch_decide({twosq::make(F79, 5, 0, 1), twosq::make(F79, 0, 0, 1),
                                 twosq::make(F79, 2, 0, 1)});
    CHECK(items[0].verdict.has_value());
    CHECK_FALSE(items[1].verdict.has_value());
    CHECK_FALSE(items[1].error.empty());
    CHECK(items[2].verdict.has_value());

    CHECK_THROWS_AS(twosq::batch_decide({twosq::make(F79, 5, 0, 1), twosq::make(F17, 5, 0, 1)}),
                    twosq::DomainError);
}

TEST_CASE("both scan integer types agree") {
    std::mt19937_64 rng(31337);
    for (long d : {17L, -79L}) {
        auto F = twosq::make_field(d);
        for (int i = 0; i < 15; ++i) {
            QuadInt alpha = random_elem(F, rng, 30);
            auto a = twosq::detail::scan_witness<__int128>(alpha, 6);
            auto b = twosq::detail::scan_witness<Int>(alpha, 6);
            CHECK(a == b);
        }
    }
}

TEST_CASE("witness search over a large discriminant uses exact arithmetic") {
    auto F = twosq::make_field(2147483647);  // forces the big-integer path
    QuadInt x = twosq::make(F, 3, 1, 1), y = twosq::make(F, 2, 1, 1);
    QuadInt alpha = x * x + y * y;
    auto w = twosq::find_witness(alpha, SearchBounds{4});
    REQUIRE(w.has_value());
    CHECK(w->first * w->first + w->second * w->second == alpha);
}
