#include <doctest.h>

#include <cmath>
#include <limits>

#include "combnet/bounds.hpp"
#include "combnet/lp.hpp"

using namespace combnet;

namespace {

// Dense two-phase simplex in doubles with Bland's rule. Nonnegative variables only.
double float_min(const LinearProgram& lp) {
    const int n = static_cast<int>(lp.vars.size());
    const int m = static_cast<int>(lp.rows.size());
    int slacks = 0;
    for (const auto& r : lp.rows) slacks += r.sense != Sense::EQ;
    const int cols = n + slacks + m;
    std::vector<std::vector<double>> T(m + 1, std::vector<double>(cols + 1, 0.0));
    std::vector<int> basis(m);
    int s = n;
    for (int i = 0; i < m; ++i) {
        const auto& r = lp.rows[i];
        for (const auto& [j, c] : r.coeffs) T[i][j] += to_double(c);
        if (r.sense == Sense::GE) T[i][s++] = -1;
        if (r.sense == Sense::LE) T[i][s++] = 1;
        T[i][cols] = to_double(r.rhs);
        if (T[i][cols] < 0)
            for (auto& v : T[i]) v = -v;
        T[i][n + slacks + i] = 1;
        basis[i] = n + slacks + i;
    }
    auto pivot = [&](int pr, int pc) {
        const double d = T[pr][pc];
        for (auto& v : T[pr]) v /= d;
        for (int i = 0; i <= m; ++i)
            if (i != pr && T[i][pc] != 0) {
                const double f = T[i][pc];
                for (int j = 0; j <= cols; ++j) T[i][j] -= f * T[pr][j];
            }
        basis[pr] = pc;
    };
    auto run = [&](int limit) {
        while (true) {
            int pc = -1;
            for (int j = 0; j < limit; ++j)
                if (T[m][j] < -1e-12) { pc = j; break; }
            if (pc < 0) return;
            int pr = -1;
            double best = std::numeric_limits<double>::infinity();
            for (int i = 0; i < m; ++i)
                if (T[i][pc] > 1e-12) {
                    const double q = T[i][cols] / T[i][pc];
                    if (q < best - 1e-12 || (std::abs(q - best) <= 1e-12 && basis[i] < basis[pr])) {
                        best = q;
                        pr = i;
                    }
                }
            REQUIRE(pr >= 0);
            pivot(pr, pc);
        }
    };
    // Phase 1: minimise the sum of artificials.
    for (int j = 0; j <= cols; ++j) {
        double v = 0;
        for (int i = 0; i < m; ++i) v += T[i][j];
        T[m][j] = j >= n + slacks && j < cols ? 0 : -v;
    }
    run(n + slacks);
    REQUIRE(std::abs(T[m][cols]) < 1e-9);
    // Phase 2.
    for (int j = 0; j <= cols; ++j) T[m][j] = j < n ? to_double(lp.objective[j]) : 0.0;
    for (int i = 0; i < m; ++i) {
        const double f = T[m][basis[i]];
        if (f != 0)
            for (int j = 0; j <= cols; ++j) T[m][j] -= f * T[i][j];
    }
    run(n + slacks);
    return -T[m][cols];
}

} // namespace

TEST_CASE("thm1 optimum") {
    Topology t(4, 2);
    auto sys = gen_thm1(t, 6);
    auto lp = build_bound_lp(sys, 6, 2);
    auto res = solve_lp(lp);
    REQUIRE(res.status == LpStatus::Optimal);
    CHECK(res.optimum == frac(9, 23));
    CHECK(check_feasible(lp, res.primal).feasible);
    CHECK(check_dual_certificate(lp, res.dual, res.optimum));

    auto again = solve_lp(lp);
    CHECK(again.primal == res.primal);
}

TEST_CASE("full memory") {
    LinearProgram lp;
    lp.add_var("R");
    lp.add_var("x");
    lp.objective = {1, 0};
    lp.add_row({{{1, Rational(1)}}, Sense::EQ, 1, "normalisation"});
    auto res = solve_lp(lp);
    REQUIRE(res.status == LpStatus::Optimal);
    CHECK(res.optimum == 0);
    CHECK(solve_bound(gen_thm1(Topology(4, 2), 6), 6, 6).optimum == 0);
}

TEST_CASE("floating-point cross-check") {
    Topology t(3, 2);
    for (auto M : {Rational(0), frac(1, 2), Rational(1), Rational(2)}) {
        auto lp = build_bound_lp(gen_thm1(t, 3), 3, M);
        auto res = solve_lp(lp);
        REQUIRE(res.status == LpStatus::Optimal);
        CHECK(std::abs(to_double(res.optimum) - float_min(lp)) < 1e-9);
    }
}

TEST_CASE("feasibility witness") {
    Topology t(4, 2);
    auto lp = build_bound_lp(gen_thm1(t, 6), 6, 2);
    auto res = solve_lp(lp);
    auto w = res.primal;
    w[lp.index_of("R")] -= frac(1, 1000);
    auto rep = check_feasible(lp, w);
    CHECK_FALSE(rep.feasible);
    REQUIRE_FALSE(rep.provenance.empty());
    CHECK(rep.provenance[0].find("Q=") != std::string::npos);
}

TEST_CASE("placement mass with the achieved load is feasible") {
    // Memory point M = 1 on (4,2): the t = 1 placement and load 2/3 from the elimination scheme.
    Topology t(4, 2);
    auto lp = build_bound_lp(gen_thm1(t, 6), 6, 1);
    std::vector<Rational> z(lp.vars.size(), 0);
    z[lp.index_of("R")] = frac(2, 3);
    for (int k = 1; k <= 6; ++k) z[lp.index_of("x[" + std::to_string(k) + "]")] = frac(1, 6);
    CHECK(check_feasible(lp, z).feasible);
}

TEST_CASE("infeasible and unbounded programs") {
    LinearProgram lp;
    lp.add_var("a");
    lp.objective = {1};
    lp.add_row({{{0, Rational(1)}}, Sense::LE, -1, "neg"});
    CHECK(solve_lp(lp).status == LpStatus::Infeasible);

    LinearProgram ub;
    ub.add_var("a", false);
    ub.objective = {1};
    ub.add_row({{{0, Rational(1)}}, Sense::LE, 3, "cap"});
    CHECK(solve_lp(ub).status == LpStatus::Unbounded);
}
