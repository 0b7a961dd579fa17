#include <doctest.h>

#include <random>

#include "combnet/errors.hpp"
#include "combnet/exactmath.hpp"

using namespace combnet;

TEST_CASE("rational parsing and printing") {
    CHECK(parse_rational("6/4") == frac(3, 2));
    CHECK(parse_rational("-2") == -2);
    CHECK(parse_rational("0.25") == frac(1, 4));
    CHECK(to_string(frac(4, 6)) == "2/3");
    CHECK(to_string(Rational(5)) == "5");
    CHECK_THROWS_AS(frac(1, 0), ParameterError);
    CHECK_THROWS(parse_rational("x"));
}

TEST_CASE("binomials") {
    CHECK(binom(4, 2) == 6);
    CHECK(binom(6, 3) == 20);
    CHECK(binom(45, 22) % 45 == 0);
    CHECK_THROWS_AS(binom(5, 7), ParameterError);
    CHECK(binom_u64(10, 3) == 120);
    CHECK_THROWS_AS(binom_u64(200, 100), ParameterError);
}

TEST_CASE("primes") {
    CHECK(is_prime(2));
    CHECK(is_prime(2147483647));
    CHECK_FALSE(is_prime(1));
    CHECK_FALSE(is_prime(91));
    CHECK(next_prime(4) == 5);
    CHECK(next_prime(7) == 7);
    CHECK(primitive_root(7) == 3);
    CHECK(primitive_root(11) == 2);
}

TEST_CASE("rank") {
    CHECK(rank(RationalMatrix::identity(5, 0, 1)) == 5);
    CHECK(rank(rational_matrix({{1, 1, 1}, {1, 1, 1}, {1, 1, 1}})) == 1);
    auto m = rational_matrix({{1, 1, 1, 1, 1, 1},
                              {0, 0, 1, 0, 1, 1},
                              {0, 0, 1, 1, 0, 1},
                              {0, 1, 0, 0, 1, 1},
                              {1, 0, 1, 0, 0, 1},
                              {0, 0, 0, 1, 1, 1}});
    CHECK(rank(m) == 6);
}

TEST_CASE("rational solve") {
    // Rows: total, four interference rows, then the lower user's relays {1,2,3} summing to s.
    auto m = rational_matrix({{1, 1, 1, 1, 1, 1},
                              {0, 0, 1, 0, 1, 1},
                              {0, 0, 1, 1, 0, 1},
                              {0, 1, 0, 0, 1, 1},
                              {1, 0, 1, 0, 0, 1},
                              {1, 1, 1, 0, 0, 0}});
    auto x = solve(m, {0, 0, 0, 0, 0, -3});
    std::vector<Rational> want = {1, -2, -2, 1, 1, 1};
    CHECK(x == want);
    auto id = RationalMatrix::identity(3, 0, 1);
    std::vector<Rational> b = {frac(1, 2), -4, 7};
    CHECK(solve(id, b) == b);
    try {
        solve(rational_matrix({{1, 2}, {2, 4}}), {1, 2});
        FAIL("expected rank deficiency");
    } catch (const RankDeficiencyError& e) {
        CHECK(e.rank() == 1);
    }
}

TEST_CASE("prime field solve") {
    PrimeField f(11);
    CHECK(f.mul(f.inv(7), 7) == 1);
    CHECK(f.from_int(-1) == 10);
    CHECK(f.from_rational(frac(1, 2)) == 6);
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 20; ++trial) {
        FieldMatrix m(7, 7);
        do {
            for (int i = 0; i < 7; ++i)
                for (int j = 0; j < 7; ++j) m(i, j) = rng() % 11;
        } while (rank(f, m) < 7);
        FieldMatrix rhs(7, 1);
        for (int i = 0; i < 7; ++i) rhs(i, 0) = rng() % 11;
        auto x = solve(f, m, rhs);
        CHECK(multiply(f, m, x) == rhs);
        CHECK(multiply(f, m, inverse(f, m)) == FieldMatrix::identity(7, 0, 1));
    }
}
