#include <doctest.h>

#include <algorithm>

#include "combnet/bounds.hpp"
#include "combnet/errors.hpp"

using namespace combnet;

namespace {

// Row  q R - sum_W coef(W) x_W >= 0.
template <class Coef>
BoundConstraint expected_row(int K, int q, Coef coef) {
    BoundConstraint row;
    row.coeffR = q;
    for (std::uint64_t w = 0; w < (std::uint64_t{1} << K); ++w)
        if (int c = coef(UserSet(w))) row.coeffX[w] = -c;
    return row;
}

bool has_row(const BoundSystem& sys, const BoundConstraint& want) {
    return std::any_of(sys.rows.begin(), sys.rows.end(), [&](const BoundConstraint& r) { return r.same_row(want); });
}

UserSet range1(int a, int b) {
    UserSet s;
    for (int i = a; i <= b; ++i) s.insert(i - 1);
    return s;
}

} // namespace

TEST_CASE("cut-set curve") {
    Topology t(4, 2);
    CHECK(cutset_bound(t, 6, 0) == frac(3, 2));
    CHECK(cutset_bound(t, 6, 6) == 0);
    // Envelope at M = 1: x = 4 gives 5/8 at its t = 1 point, x = 3 interpolates (0,1)-(2,1/3) to 2/3.
    CHECK(cutset_bound(t, 6, 1) == frac(2, 3));
    auto p4 = cutset_points(t, 6, 4);
    REQUIRE(p4.size() == 7);
    CHECK(p4[1] == std::pair<Rational, Rational>{1, frac(5, 8)});
    CHECK_THROWS_AS(cutset_bound(t, 6, 7), ParameterError);
}

TEST_CASE("coefficient c") {
    Topology t(4, 2);
    CHECK(coeff_c(t, UserSet::of1({1}), 3) == 1);
    CHECK(coeff_c(t, UserSet::of1({1, 6}), 3) == 0);
    // Every 2-subset of relays outside H_1 misses user 1 except those equal to H_1.
    CHECK(coeff_c(t, UserSet(), 2) == 3);
}

TEST_CASE("thm1 rows") {
    Topology t(4, 2);
    auto sys = gen_thm1(t, 6);
    CHECK(has_row(sys, expected_row(6, 2, [](UserSet W) { return W.subset_of(range1(2, 6)) ? 1 : 0; })));
    // Q = {1,2} holds one user, so one permutation and one row.
    CHECK(std::count_if(sys.rows.begin(), sys.rows.end(),
                        [](const BoundConstraint& r) { return r.provenance.rfind("Q=[1,2];", 0) == 0; }) == 1);
    CHECK_THROWS_AS(gen_thm1(t, 5), RegimeError);
}

TEST_CASE("thm2 partition row") {
    Topology t(4, 2);
    auto sys = gen_thm2(t, 6);
    auto row = expected_row(6, 4, [](UserSet W) {
        int c = W.subset_of(range1(2, 6)) + W.subset_of(range1(1, 5));
        for (int i = 2; i <= 5; ++i) c += W.subset_of(range1(i + 1, 5));
        return c;
    });
    CHECK(has_row(sys, row));
}

TEST_CASE("coupling rows") {
    Topology t(4, 2);
    auto sys = gen_thm3(t, 6, 3);
    CHECK(sys.yVars.size() == 4);
    bool found = false;
    for (const auto& r : sys.rows)
        if (r.thm == "coupling") {
            found = true;
            CHECK(r.coeffX.at(0) == -6);
            CHECK(r.coeffY.size() == 4);
        }
    CHECK(found);
    CHECK_THROWS_AS(gen_thm3(t, 6, 1), ParameterError);
}

TEST_CASE("degenerate b = H on three users") {
    // Hand enumeration for H = 3, r = 2: the only y variable is y_[3] and c(W,3) = 1 - [W nonempty].
    // Every coupling term carries some p_i, so each coupling row collapses to y_[3] >= 0.
    Topology t(3, 2);
    auto sys = gen_thm3(t, 3, 3);
    REQUIRE(sys.yVars.size() == 1);
    CHECK(coeff_c(t, UserSet(), 3) == 1);
    CHECK(coeff_c(t, UserSet::of({0}), 3) == 0);
    for (const auto& r : sys.rows)
        if (r.thm == "coupling") CHECK(r.coeffX.empty());
}

TEST_CASE("helpers") {
    CHECK(prefix_coefficient({0, 1, 2}, UserSet(), UserSet::range(3)) == 3);
    CHECK(prefix_coefficient({0, 1, 2}, UserSet::of({2}), UserSet::range(3)) == 2);
    CHECK(prefix_coefficient({0, 1, 2}, UserSet::of({0}), UserSet::range(3)) == 0);
    CHECK(partitions_min_block(RelaySet::range(4), 2).size() == 4);
    CHECK(partitions_min_block(RelaySet::range(3), 2).size() == 1);
}
