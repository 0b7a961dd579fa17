#include <doctest.h>

#include <algorithm>
#include <random>

#include "combnet/errors.hpp"
#include "combnet/indexgraph.hpp"

using namespace combnet;

namespace {

std::vector<SubfileVertex> sorted(std::vector<SubfileVertex> v) {
    std::sort(v.begin(), v.end());
    return v;
}

// {F_{d_i,W} : W subset of allowed} for requester i (0-based).
void add_all(std::vector<SubfileVertex>& out, int i, UserSet allowed) {
    for_each_subset_of(allowed.bits(), [&](std::uint64_t W) { out.push_back({i, UserSet(W)}); });
}

} // namespace

TEST_CASE("restrict_perm_g") {
    // Permutations hold 0-based user ids.
    CHECK(restrict_perm_g(UserSet::of1({1, 2, 3}), {1, 3, 0, 2}) == std::vector<int>{1, 0, 2});
    CHECK(restrict_perm_g(UserSet(), {0, 1, 2}).empty());
    CHECK(restrict_perm_g(UserSet::of1({3, 5, 6}), {0, 1, 2, 3, 4, 5}) == std::vector<int>{2, 4, 5});
}

TEST_CASE("acyclic_set_f") {
    auto d = DemandVector::identity(6);
    std::vector<SubfileVertex> b1;
    add_all(b1, 0, UserSet::of1({2, 3, 4, 5, 6}));
    CHECK(sorted(acyclic_set_f(d, UserSet::range(6), {0})) == sorted(b1));

    CHECK(acyclic_set_f(d, UserSet::range(6), {}).empty());

    std::vector<SubfileVertex> b3;
    for (int i = 2; i <= 5; ++i) {
        UserSet allowed;
        for (int j = i + 1; j <= 5; ++j) allowed.insert(j - 1);
        add_all(b3, i - 1, allowed);
    }
    CHECK(sorted(acyclic_set_f(d, UserSet::of1({2, 3, 4, 5}), {1, 2, 3, 4})) == sorted(b3));

    CHECK_THROWS_AS(acyclic_set_f(d, UserSet::of1({1, 2}), {3}), ParameterError);
}

TEST_CASE("graph sizes") {
    PlacementSpec p(3, 3, 1);
    auto g = build_graph(p, DemandVector::identity(3));
    // Each user misses the two subfiles labelled by the other users.
    CHECK(g.vertices().size() == 6);

    auto one = build_graph(PlacementSpec(1, 1, 0), DemandVector::identity(1));
    CHECK(one.vertices().size() == 1);
    CHECK(one.edge_count() == 0);

    auto t0 = build_graph(PlacementSpec(4, 4, 0), DemandVector::identity(4));
    CHECK(t0.vertices().size() == 4);
    CHECK(t0.edge_count() == 0);

    auto full = build_full_graph(3, DemandVector::identity(3));
    CHECK(full.vertices().size() == 12);
}

TEST_CASE("cycle detection") {
    auto d = DemandVector::identity(6);
    auto g = build_full_graph(6, d);
    auto b1 = acyclic_set_f(d, UserSet::range(6), {0});
    auto b2 = acyclic_set_f(d, UserSet::range(6), {5});
    CHECK(is_acyclic(g, b1));
    CHECK(is_acyclic(g, b2));
    auto both = b1;
    both.insert(both.end(), b2.begin(), b2.end());
    CHECK_FALSE(is_acyclic(g, both));
    CHECK(is_acyclic(g, {}));
}

TEST_CASE("acyclic_set_f output is always acyclic") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 200; ++trial) {
        const int K = 2 + static_cast<int>(rng() % 5);
        const int N = 1 + static_cast<int>(rng() % K);
        DemandVector d;
        for (int k = 0; k < K; ++k) d.d.push_back(static_cast<int>(rng() % N));
        UserSet S(rng() & UserSet::range(K).bits());
        if (S.empty()) S.insert(0);
        auto v = S.elements();
        std::shuffle(v.begin(), v.end(), rng);
        v.resize(1 + rng() % v.size());
        auto g = build_full_graph(K, d);
        CHECK(is_acyclic(g, acyclic_set_f(d, S, v)));
    }
}
