#include <doctest.h>

#include "combnet/errors.hpp"
#include "combnet/placement.hpp"

using namespace combnet;

TEST_CASE("t = 1 placement") {
    PlacementSpec p(6, 6, 1);
    CHECK(p.subfile_count() == 6);
    CHECK(p.M() == 1);
    for (int j = 0; j < 6; ++j) {
        CHECK(p.stores(j, UserSet::of({j})));
        CHECK_FALSE(p.stores(j, UserSet::of({(j + 1) % 6})));
        CHECK(p.stored_fraction(j) == frac(1, 6));
    }
}

TEST_CASE("extreme memory points") {
    PlacementSpec none(6, 6, 0);
    CHECK(none.subfile_count() == 1);
    CHECK(none.subsets()[0].empty());
    CHECK(none.stored_fraction(3) == 0);
    PlacementSpec all(6, 6, 6);
    CHECK(all.subfile_count() == 1);
    CHECK(all.stored_fraction(3) == 1);
    CHECK_THROWS_AS(PlacementSpec(6, 6, 7), ParameterError);
    CHECK_THROWS_AS(PlacementSpec(6, 6, -1), ParameterError);
}

TEST_CASE("subfile masses") {
    auto m1 = mass_of(PlacementSpec(6, 6, 1));
    CHECK(m1.x.size() == 6);
    CHECK(m1.at(UserSet::of({2})) == frac(1, 6));
    CHECK(m1.at(UserSet::of({1, 2})) == 0);

    auto m2 = mass_of(PlacementSpec(6, 6, 2));
    CHECK(m2.x.size() == 15);
    for (const auto& [W, v] : m2.x) CHECK(v == frac(1, 15));
    CHECK(m2.total() == 1);
    CHECK(m2.memory_of(0) == frac(1, 3));
    CHECK(m2.feasible(frac(1, 3)));
    CHECK_FALSE(m2.feasible(frac(1, 4)));

    auto m0 = mass_of(PlacementSpec(6, 6, 0));
    CHECK(m0.at(UserSet()) == 1);
}
