// One PASS/FAIL line per acceptance criterion; exit status is the number of failures.
#include <chrono>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

#include "combnet/bounds.hpp"
#include "combnet/closedforms.hpp"
#include "combnet/delivery.hpp"
#include "combnet/elimination.hpp"
#include "combnet/harness.hpp"

using namespace combnet;

namespace {

struct Check {
    std::ostringstream detail;
    bool ok = true;
    void expect(bool cond, const std::string& what) {
        if (!cond) {
            ok = false;
            detail << "    " << what << "\n";
        }
    }
};

template <class T>
std::string eq_msg(const std::string& what, const T& got, const T& want) {
    std::ostringstream os;
    os << what << ": got " << got << ", want " << want;
    return os.str();
}

std::string q(const Rational& x) { return to_string(x); }

Rational bound(const std::string& m, const Topology& t, int N, const Rational& M, std::optional<int> b = {}) {
    EvalOptions o;
    o.b = b;
    return evaluate_bound(m, t, N, M, o).value;
}

void criterion1(Check& c) {
    Topology t(4, 2);
    c.expect(bound("thm1", t, 6, 2) == frac(9, 23), eq_msg("thm1", q(bound("thm1", t, 6, 2)), std::string("9/23")));
    c.expect(bound("thm2", t, 6, 2) == frac(7, 17), eq_msg("thm2", q(bound("thm2", t, 6, 2)), std::string("7/17")));
}

void criterion2(Check& c) {
    Topology t(4, 2);
    const auto v3 = bound("thm3", t, 6, frac(1, 2), 3);
    const auto v1 = bound("thm1", t, 6, frac(1, 2));
    c.expect(v3 == frac(13, 12), eq_msg("thm3 b=3", q(v3), std::string("13/12")));
    c.expect(v1 == frac(17, 16), eq_msg("thm1", q(v1), std::string("17/16")));
}

void decode_seeds(Check& c, const Topology& t, const PlacementSpec& p, const DeliveryPlan& plan, int seeds) {
    for (int s = 1; s <= seeds; ++s) {
        std::mt19937_64 rng(s);
        DemandVector d;
        for (int k = 0; k < t.K(); ++k) d.d.push_back(static_cast<int>(rng() % p.N()));
        auto pl = plan.scheme == "elim" ? plan_elimination(t, p, d) : plan_general(t, p, d);
        auto rep = simulate_decode(t, p, d, pl, 0, s);
        for (const auto& f : rep.failures())
            c.expect(false, plan.scheme + " H=" + std::to_string(t.H()) + " r=" + std::to_string(t.r()) +
                                " seed=" + std::to_string(s) + ": " + f.str());
    }
}

void criterion3(Check& c) {
    struct Case {
        int H, r;
        Rational step2, v1, total;
    };
    const std::vector<Case> cases = {{4, 2, frac(1, 2), frac(1, 6), frac(2, 3)},
                                     {5, 2, frac(3, 5), frac(2, 5), Rational(1)},
                                     {6, 3, frac(3, 2), frac(1, 10), frac(8, 5)}};
    for (const auto& k : cases) {
        Topology t(k.H, k.r);
        PlacementSpec p(t.K(), t.K(), 1);
        auto d = DemandVector::identity(t.K());
        auto plan = plan_elimination(t, p, d);
        const std::string tag = "elim H=" + std::to_string(k.H) + " r=" + std::to_string(k.r);
        c.expect(max_link_load(plan) == k.total, eq_msg(tag + " load", q(max_link_load(plan)), q(k.total)));
        c.expect(plan.step2_load() == k.step2, eq_msg(tag + " step-2", q(plan.step2_load()), q(k.step2)));
        c.expect(plan.v1_load() == k.v1, eq_msg(tag + " V1", q(plan.v1_load()), q(k.v1)));
        decode_seeds(c, t, p, plan, 5);
    }
    Topology t(4, 2);
    PlacementSpec p(6, 6, 1);
    auto g = plan_general(t, p, DemandVector::identity(6));
    c.expect(max_link_load(g) == frac(3, 4), eq_msg("general H=4 r=2", q(max_link_load(g)), std::string("3/4")));
    decode_seeds(c, t, p, g, 5);
}

void criterion4(Check& c) {
    for (auto [H, r] : {std::pair{4, 2}, {5, 2}, {6, 2}, {6, 3}, {7, 3}}) {
        Topology t(H, r);
        PlacementSpec p(t.K(), t.K(), 1);
        const auto sim = max_link_load(plan_elimination(t, p, DemandVector::identity(t.K())));
        const auto closed = load_thm6(t);
        c.expect(sim == closed, eq_msg("H=" + std::to_string(H) + " r=" + std::to_string(r), q(sim), q(closed)));
    }
}

void criterion5(Check& c) {
    Topology t(4, 3);
    const int N = 4, K = 4, H = 4;
    auto curve = general_curve(t, N);
    std::vector<std::pair<Rational, Rational>> want;
    for (int s = 0; s <= K - 2; ++s) want.push_back({frac(s * N, K), frac(K - s, (s + 1) * H)});
    want.push_back({Rational(N), Rational(0)});
    c.expect(curve.points == want, "general-scheme breakpoints differ from (tN/K, (K-t)/((t+1)H)) and (N,0)");
    for (int i = 0; i <= 8; ++i) {
        const Rational M = frac(i * N, 8);
        const auto ach = curve.at(M), conv = cutset_bound(t, N, M);
        c.expect(ach == conv, eq_msg("M=" + q(M), q(ach), q(conv)));
    }
}

// Closed-form optimum for M <= N/K and H <= 2r, written out independently of the library.
Rational low_memory_optimum(int H, int r, int N, const Rational& M) {
    const int K = static_cast<int>(binom(H, r).get_si());
    const Rational t = M * K / N;
    if (H < 2 * r) return frac(K, H) - frac(K + 1, 2 * H) * t;
    return (Rational(K * (H - 1)) - (frac(K * H + H - K, 2) - 1) * t) / Rational(H * (H - 1));
}

void criterion6(Check& c) {
    for (auto [H, r, N] : {std::tuple{4, 2, 6}, {3, 2, 3}}) {
        Topology t(H, r);
        for (const auto& M : {Rational(0), frac(1, 2), Rational(1)}) {
            const auto lp = bound("thm4", t, N, M);
            const auto want = low_memory_optimum(H, r, N, M);
            c.expect(lp == want, eq_msg("H=" + std::to_string(H) + " M=" + q(M), q(lp), q(want)));
        }
    }
}

void criterion7(Check& c) {
    Topology t4(4, 2);
    auto cm = solve_coding_matrix(t4, {{0, 5}, {1, 4}, {2, 3}});
    c.expect(cm.A == rational_matrix({{1, 1, 1}, {1, -1, -1}, {-1, 1, -1}, {-1, -1, 1}}), "four-relay sign matrix");
    c.expect(zero_forcing_holds(t4, cm), "zero forcing, four relays");

    Topology t6(6, 3);
    auto cm6 = solve_coding_matrix(t6, {{0, 19}, {1, 18}, {2, 17}, {4, 15}, {6, 13}}, Rational(-3));
    c.expect(cm6.A.column(0) == std::vector<Rational>{1, -2, -2, 1, 1, 1}, "six-relay column at s=-3");
    c.expect(zero_forcing_holds(t6, cm6), "zero forcing, six relays");
    for (auto [H, r] : {std::pair{4, 2}, {5, 2}, {6, 2}, {6, 3}, {7, 3}}) {
        Topology t(H, r);
        for (const auto& m : elimination_matrices(t))
            c.expect(zero_forcing_holds(t, m), "zero forcing H=" + std::to_string(H) + " r=" + std::to_string(r) +
                                                   " relays " + m.relays.str());
    }
}

void criterion8(Check& c) {
    for (int k = 1; k <= 40; ++k)
        c.expect(binom(2 * k + 1, k) % (2 * k + 1) == 0, "binomial divisibility at k=" + std::to_string(k));
    for (int k = 1; k <= 6; ++k) {
        for (auto bits : lex_subsets(2 * k + 1, k)) {
            std::vector<int> row(2 * k + 1);
            for (int i = 0; i < 2 * k + 1; ++i) row[i] = (bits >> i) & 1u;
            c.expect(certify_circulant(k, row), "singular circulant at k=" + std::to_string(k));
        }
    }
    for (int k = 1; k <= 4; ++k) {
        auto div = group_divide(k);
        for (const auto& g : div.groups)
            c.expect(rank(lifted_matrix(k, g)) == 2 * k + 2, "lifted matrix not full rank at k=" + std::to_string(k));
    }
}

void criterion9(Check& c) {
    const std::vector<std::string> methods = {"cutset", "thm1", "thm2", "thm3", "thm4",
                                              "scheme_general", "scheme_elim", "thm6", "thm8"};
    for (auto [H, r] : {std::pair{3, 2}, {4, 2}, {4, 3}}) {
        Topology t(H, r);
        SweepOptions so;
        so.check = false;
        auto rows = sweep(t, t.K(), memory_grid(t.K(), 11), methods, so);
        const std::string tag = "H=" + std::to_string(H) + " r=" + std::to_string(r);
        for (const auto& v : sandwich_violations(rows)) c.expect(false, tag + " " + v);
        for (const auto& row : rows) {
            auto val = [&](const char* m) { return row.values.at(m).value; };
            const std::string at = tag + " M=" + q(row.M) + ": ";
            c.expect(val("cutset") <= val("thm1"), at + "cutset > thm1");
            c.expect(val("thm1") <= val("thm3"), at + "thm1 > thm3");
            c.expect(val("thm1") <= val("thm2"), at + "thm1 > thm2");
            c.expect(val("thm2") <= val("thm4"), at + "thm2 > thm4");
        }
    }
}

void criterion10(Check& c) {
    std::vector<std::pair<int, int>> shapes;
    for (int H = 1; H <= 10; ++H)
        for (int r = 1; r <= H; ++r)
            if (binom(H, r) <= 10) shapes.push_back({H, r});
    std::mt19937_64 rng(2024);
    for (auto [H, r] : shapes) {
        Topology t(H, r);
        const int K = t.K(), N = K;
        for (int s = 0; s <= K; ++s) {
            PlacementSpec p(N, K, s);
            for (int trial = 0; trial < 20; ++trial) {
                DemandVector d;
                for (int k = 0; k < K; ++k) d.d.push_back(static_cast<int>(rng() % N));
                const auto seed = rng();
                std::vector<DeliveryPlan> plans = {plan_general(t, p, d)};
                if (s == 1 && H >= 2 * r) plans.push_back(plan_elimination(t, p, d));
                for (const auto& plan : plans) {
                    auto rep = simulate_decode(t, p, d, plan, 0, seed);
                    for (const auto& f : rep.failures()) {
                        std::ostringstream os;
                        os << plan.scheme << " H=" << H << " r=" << r << " t=" << s << " field=" << rep.field
                           << " seed=" << seed << " d=";
                        for (int x : d.d) os << x + 1 << ' ';
                        os << ": " << f.str();
                        c.expect(false, os.str());
                    }
                }
            }
        }
    }
}

} // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<void(Check&)>>> criteria = {
        {"1 LP bounds thm1=9/23 thm2=7/17", criterion1},
        {"2 LP bounds thm3(b=3)=13/12 thm1=17/16", criterion2},
        {"3 scheme loads and decoding", criterion3},
        {"4 elimination closed form equals simulated load", criterion4},
        {"5 r=H-1 scheme curve meets the cut-set envelope", criterion5},
        {"6 thm4 LP equals the low-memory closed form", criterion6},
        {"7 coding-matrix golden values and zero forcing", criterion7},
        {"8 certification suite", criterion8},
        {"9 dominance and sandwich", criterion9},
        {"10 decode property suite", criterion10},
    };
    int failures = 0;
    for (const auto& [name, fn] : criteria) {
        Check c;
        const auto start = std::chrono::steady_clock::now();
        try {
            fn(c);
        } catch (const std::exception& e) {
            c.expect(false, std::string("exception: ") + e.what());
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        std::cout << (c.ok ? "PASS " : "FAIL ") << name << " (" << std::fixed;
        std::cout.precision(2);
        std::cout << secs << " s)\n" << c.detail.str() << std::flush;
        failures += !c.ok;
    }
    return failures;
}
