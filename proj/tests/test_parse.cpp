#include <twosq/parse.hpp>

#include <catch2/catch_amalgamated.hpp>

#include <random>

using Catch::Matchers::ContainsSubstring;
using twosq::QuadInt;

TEST_CASE("parse fixed inputs") {
    auto F17 = twosq::make_field(17);
    auto F79 = twosq::make_field(-79);

    CHECK(twosq::parse_alpha("(3+1*sqrt(17))/2", F17) == twosq::make(F17, 3, 1, 2));
    CHECK(twosq::parse_alpha("(3-1*sqrt(17))/2", F17) == twosq::make(F17, 3, -1, 2));
    CHECK(twosq::parse_alpha("(1-1*sqrt(-79))/2", F79) == twosq::make(F79, 1, -1, 2));
    CHECK(twosq::parse_alpha("(17+4*sqrt(17))", F17) == twosq::make(F17, 17, 4, 1));
    CHECK(twosq::parse_alpha("( 17 + 4 * sqrt ( 17 ) ) / 1", F17) == twosq::make(F17, 17, 4, 1));
    CHECK(twosq::parse_alpha("5", F17) == twosq::make(F17, 5, 0, 1));
    CHECK(twosq::parse_alpha("  -12 ", F79) == twosq::make(F79, -12, 0, 1));
    CHECK(twosq::parse_alpha("+-1", F79) == twosq::make(F79, -1, 0, 1));
    CHECK(twosq::parse_alpha("(0+0*sqrt(17))/1", F17) == twosq::make(F17, 0, 0, 1));
    CHECK(twosq::parse_alpha("(5+ -3*sqrt(-79))/1", F79) == twosq::make(F79, 5, -3, 1));
}

TEST_CASE("parse propagates ring validation") {
    auto F17 = twosq::make_field(17);
    auto F5 = twosq::make_field(-5);
    CHECK_THROWS_AS(twosq::parse_alpha("(1+1*sqrt(-5))/2", F5), twosq::IntegralityError);
    CHECK_THROWS_AS(twosq::parse_alpha("(2+1*sqrt(17))/2", F17), twosq::IntegralityError);
}

TEST_CASE("parse rejects the wrong field") {
    auto F79 = twosq::make_field(-79);
    CHECK_THROWS_AS(twosq::parse_alpha("(1+1*sqrt(17))/1", F79), twosq::FieldMismatchError);
    CHECK_THROWS_AS(twosq::parse_alpha("(1+1*sqrt(79))/1", F79), twosq::FieldMismatchError);
}

TEST_CASE("parse rejects malformed text") {
    auto F17 = twosq::make_field(17);
    CHECK_THROWS_AS(twosq::parse_alpha("", F17), twosq::ParseError);
    CHECK_THROWS_AS(twosq::parse_alpha("()", F17), twosq::ParseError);
    CHECK_THROWS_AS(twosq::parse_alpha("(1+1*sqrt(17)", F17), twosq::ParseError);
    CHECK_THROWS_AS(twosq::parse_alpha("(1+1*sqrt(17))/3", F17), twosq::ParseError);
    CHECK_THROWS_AS(twosq::parse_alpha("(1+1*sqrt(17))/", F17), twosq::ParseError);
    CHECK_THROWS_AS(twosq::parse_alpha("abc", F17), twosq::ParseError);
    CHECK_THROWS_AS(twosq::parse_alpha("5x", F17), twosq::ParseError);
    CHECK_THROWS_AS(twosq::parse_alpha("(5)", F17), twosq::ParseError);
    CHECK_THROWS_AS(twosq::parse_alpha("(1+1*sqr(17))/1", F17), twosq::ParseError);
    CHECK_THROWS_AS(twosq::parse_alpha("(1+1*sqrt(17))/2 junk", F17), twosq::ParseError);
    CHECK_THROWS_WITH(twosq::parse_alpha("abc", F17), ContainsSubstring("position"));
    CHECK_THROWS_WITH(twosq::parse_alpha("(1+1*sqrt(17)", F17), ContainsSubstring("position"));
}

TEST_CASE("parse inverts render") {
    std::mt19937_64 rng(20260815);
    for (long d : {17L, -79L, 7L, -5L, 2L, -2L, -3L}) {
        auto F = twosq::make_field(d);
        std::uniform_int_distribution<long> dist(-1000, 1000), coin(0, 1);
        for (int i = 0; i < 1000; ++i) {
            long a = dist(rng), b = dist(rng);
            int den = 1;
            if (F.half_basis && coin(rng) && (a % 2 != 0) && (b % 2 != 0)) den = 2;
            QuadInt x = twosq::make(F, a, b, den);
            CHECK(twosq::parse_alpha(twosq::render(x), F) == x);
        }
    }
}
