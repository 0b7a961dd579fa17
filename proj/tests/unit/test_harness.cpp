#include <doctest.h>

#include "combnet/errors.hpp"
#include "combnet/harness.hpp"

using namespace combnet;

TEST_CASE("empty method list") {
    auto rows = sweep(Topology(4, 2), 6, memory_grid(6, 3), {});
    CHECK(to_csv(rows, {}) == "M_frac,M_dec,method,value_frac,value_dec,provenance\n");
}

TEST_CASE("elimination column across relay counts") {
    // r = 2, M = 1, N = K.
    for (auto [H, want] : {std::pair{4, frac(2, 3)}, {5, Rational(1)}}) {
        Topology t(H, 2);
        auto rows = sweep(t, t.K(), {Rational(1)}, {"scheme_elim"});
        REQUIRE(rows.size() == 1);
        CHECK(rows[0].values.at("scheme_elim").value == want);
    }
}

TEST_CASE("stored baselines") {
    Topology t(4, 2);
    auto v = evaluate("baseline_1", t, 6, 1);
    REQUIRE(v);
    CHECK(v->value == frac(5, 4));
    CHECK(v->provenance.find("stored") == 0);
    CHECK_FALSE(evaluate("baseline_1", t, 6, 2));
    auto v5 = evaluate("baseline_3", Topology(6, 3), 20, 1);
    REQUIRE(v5);
    CHECK(v5->value == frac(19, 7));
}

TEST_CASE("methods out of regime are skipped") {
    Topology t(3, 2);
    CHECK_FALSE(evaluate("scheme_elim", t, 3, 1));
    CHECK_FALSE(evaluate("thm6", Topology(4, 2), 6, 2));
    CHECK_FALSE(evaluate("thm1", t, 2, 1));
    CHECK_THROWS_AS(evaluate("nope", t, 3, 1), ParameterError);
    CHECK_THROWS_AS(sweep(t, 3, {Rational(1)}, {"nope"}), ParameterError);
}

TEST_CASE("sweep checks") {
    Topology t(4, 2);
    auto rows = sweep(t, 6, memory_grid(6, 7), {"cutset", "thm1", "scheme_general", "scheme_elim"});
    CHECK(rows.size() == 7);
    CHECK(sandwich_violations(rows).empty());
    CHECK(monotonicity_violations(rows).empty());
    auto csv = to_csv(rows, {"cutset", "thm1"});
    CHECK(csv.find("\n1,1,cutset,2/3,") != std::string::npos);

    ComparisonRow bad;
    bad.M = 1;
    bad.values["thm1"] = {2, "", false};
    bad.values["scheme_general"] = {1, "", false};
    CHECK(sandwich_violations({bad}).size() == 1);
}

TEST_CASE("memory grid") {
    auto g = memory_grid(6, 11);
    REQUIRE(g.size() == 11);
    CHECK(g[1] == frac(3, 5));
    CHECK(g.back() == 6);
    CHECK_THROWS_AS(memory_grid(6, 1), ParameterError);
}
