#include <doctest.h>

#include "combnet/closedforms.hpp"
#include "combnet/errors.hpp"

using namespace combnet;

TEST_CASE("low-memory closed form") {
    Topology t(4, 2);
    CHECK(thm8_low_memory(t, 6, 0) == frac(3, 2));
    CHECK(thm8_low_memory(t, 6, 1) == frac(2, 3));
    CHECK(thm8_low_memory(t, 6, frac(1, 2)) > frac(2, 3));
    CHECK(thm8_low_memory(Topology(4, 3), 4, 0) == 1);
    CHECK_THROWS_AS(thm8_low_memory(t, 6, 2), RegimeError);
    CHECK_THROWS_AS(thm8_low_memory(Topology(5, 2), 10, 0), RegimeError);
}

TEST_CASE("r = H - 1 curve") {
    auto c = thm7_curve(Topology(4, 3), 4);
    std::vector<std::pair<Rational, Rational>> want = {
        {0, 1}, {1, frac(3, 8)}, {2, frac(1, 6)}, {4, 0}};
    CHECK(c.points == want);
    CHECK(c.at(3) == frac(1, 12));
    CHECK_THROWS_AS(thm7_curve(Topology(4, 2), 6), RegimeError);
}

TEST_CASE("lower hull") {
    auto c = lower_convex_hull({{0, 2}, {1, 1}, {2, frac(3, 2)}, {3, 0}, {1, 3}});
    std::vector<std::pair<Rational, Rational>> want = {{0, 2}, {1, 1}, {3, 0}};
    CHECK(c.points == want);
    CHECK(c.at(2) == frac(1, 2));
    CHECK_THROWS_AS(c.at(4), ParameterError);
}
