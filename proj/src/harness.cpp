#include "combnet/harness.hpp"

#include <algorithm>
#include <future>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "combnet/delivery.hpp"
#include "combnet/errors.hpp"
#include "combnet/placement.hpp"

namespace combnet {

const std::vector<std::string>& all_methods() {
    static const std::vector<std::string> m = {"cutset",     "thm1",       "thm2",       "thm3",
                                               "thm4",       "scheme_general", "scheme_elim", "thm6",
                                               "thm8",       "baseline_1", "baseline_2", "baseline_3"};
    return m;
}

bool is_converse(const std::string& m) {
    return m == "cutset" || m == "thm1" || m == "thm2" || m == "thm3" || m == "thm4";
}

bool is_achievable(const std::string& m) {
    return m == "scheme_general" || m == "scheme_elim" || m == "thm6" || m == "thm8" || m.rfind("baseline_", 0) == 0;
}

const std::vector<Baseline>& baseline_table() {
    static const std::vector<Baseline> t = [] {
        std::vector<Baseline> v;
        auto add = [&](int H, int r, int N, const char* m, const char* q) {
            v.push_back({H, r, N, Rational(1), m, parse_rational(q),
                         "stored:H=" + std::to_string(H) + ",r=" + std::to_string(r) + ",N=K=" + std::to_string(N) +
                             ",M=1,load=" + q});
        };
        add(4, 2, 6, "baseline_1", "5/4");
        add(4, 2, 6, "baseline_2", "1");
        add(4, 2, 6, "baseline_3", "1");
        add(5, 2, 10, "baseline_1", "9/4");
        add(5, 2, 10, "baseline_2", "3/2");
        add(5, 2, 10, "baseline_3", "3/2");
        add(6, 3, 20, "baseline_1", "19/6");
        add(6, 3, 20, "baseline_2", "29/12");
        add(6, 3, 20, "baseline_3", "19/7");
        return v;
    }();
    return t;
}

std::vector<Rational> memory_grid(int N, int points) {
    if (points < 2) throw ParameterError("memory grid needs at least two points");
    std::vector<Rational> g;
    for (int i = 0; i < points; ++i) g.push_back(frac(static_cast<long>(i) * N, points - 1));
    return g;
}

namespace {

DemandVector spread_demands(int K, int N) {
    DemandVector d;
    for (int k = 0; k < K; ++k) d.d.push_back(k % N);
    return d;
}

MethodValue lp_value(const BoundSystem& sys, int N, const Rational& M, const LpOptions& lp) {
    auto res = solve_bound(sys, N, M, lp);
    if (res.status != LpStatus::Optimal) throw std::runtime_error(sys.method + " LP is " + status_str(res.status));
    MethodValue v;
    v.value = res.optimum;
    v.sampled = sys.sampled;
    v.provenance = "lp:rows=" + std::to_string(sys.rows.size()) + ";pivots=" + std::to_string(res.pivots);
    if (sys.b) v.provenance += ";b=" + std::to_string(sys.b);
    if (sys.sampled) v.provenance += ";sampled-valid";
    return v;
}

bool plan_fits(const Topology& topo, int t, std::size_t limit) {
    if (t >= topo.K()) return true;
    return binom(topo.K(), t + 1) <= BigInt(static_cast<unsigned long>(limit));
}

} // namespace

MethodValue evaluate_bound(const std::string& method, const Topology& topo, int N, const Rational& M,
                           const EvalOptions& opt) {
    if (M < 0 || M > N) throw ParameterError("M must lie in [0, N]");
    if (method == "cutset") return {cutset_bound(topo, N, M), "closed-form", false};
    if (method == "thm1") return lp_value(gen_thm1(topo, N, opt.bound), N, M, opt.lp);
    if (method == "thm2") return lp_value(gen_thm2(topo, N, opt.bound), N, M, opt.lp);
    if (method == "thm3" || method == "thm4") {
        auto gen = [&](int b) {
            return method == "thm3" ? gen_thm3(topo, N, b, opt.bound) : gen_thm4(topo, N, b, opt.bound);
        };
        if (opt.b) return lp_value(gen(*opt.b), N, M, opt.lp);
        MethodValue best;
        bool first = true;
        bool sampled = false;
        for (int b = topo.r(); b <= topo.H(); ++b) {
            auto v = lp_value(gen(b), N, M, opt.lp);
            sampled |= v.sampled;
            if (first || v.value > best.value) best = v;
            first = false;
        }
        best.sampled = sampled;
        best.provenance += ";max-over-b";
        return best;
    }
    throw ParameterError("unknown bound method '" + method + "'");
}

Rational general_load_at(const Topology& topo, int N, int t) {
    PlacementSpec p(N, topo.K(), t);
    return max_link_load(plan_general(topo, p, spread_demands(topo.K(), N)));
}

LoadCurve general_curve(const Topology& topo, int N, std::size_t planLimit) {
    std::vector<std::pair<Rational, Rational>> pts;
    for (int t = 0; t <= topo.K(); ++t)
        if (plan_fits(topo, t, planLimit)) pts.push_back({frac(static_cast<long>(t) * N, topo.K()), general_load_at(topo, N, t)});
    if (pts.back().first != N) pts.push_back({Rational(N), Rational(0)});
    return lower_convex_hull(std::move(pts));
}

LoadCurve elim_curve(const Topology& topo, int N, const ElimOptions& opt, std::size_t planLimit) {
    auto c = general_curve(topo, N, planLimit);
    if (topo.H() < 2 * topo.r() || N < topo.K()) return c;
    PlacementSpec p(N, topo.K(), 1);
    auto pts = c.points;
    pts.push_back({p.M(), max_link_load(plan_elimination(topo, p, spread_demands(topo.K(), N), opt))});
    return lower_convex_hull(std::move(pts));
}

std::optional<MethodValue> evaluate(const std::string& method, const Topology& topo, int N, const Rational& M,
                                    const EvalOptions& opt) {
    if (M < 0 || M > N) throw ParameterError("M must lie in [0, N]");
    const int K = topo.K();
    if (is_converse(method)) {
        if (method != "cutset" && (N < K || K > 12)) return std::nullopt;
        return evaluate_bound(method, topo, N, M, opt);
    }
    if (method == "scheme_general") return MethodValue{general_curve(topo, N, opt.planLimit).at(M), "memory-sharing:general", false};
    if (method == "scheme_elim") {
        if (topo.H() < 2 * topo.r() || N < K) return std::nullopt;
        return MethodValue{elim_curve(topo, N, opt.elim, opt.planLimit).at(M), "memory-sharing:elim", false};
    }
    if (method == "thm6") {
        if (topo.H() < 2 * topo.r() || M * K != N) return std::nullopt;
        return MethodValue{load_thm6(topo), "closed-form", false};
    }
    if (method == "thm8") {
        if (topo.H() > 2 * topo.r() || N < K || M * K > N) return std::nullopt;
        return MethodValue{thm8_low_memory(topo, N, M), "closed-form", false};
    }
    if (method.rfind("baseline_", 0) == 0) {
        for (const auto& b : baseline_table())
            if (b.method == method && b.H == topo.H() && b.r == topo.r() && b.N == N && b.M == M)
                return MethodValue{b.value, b.provenance, false};
        return std::nullopt;
    }
    throw ParameterError("unknown method '" + method + "'");
}

std::vector<ComparisonRow> sweep(const Topology& topo, int N, const std::vector<Rational>& grid,
                                 const std::vector<std::string>& methods, const SweepOptions& opt) {
    for (const auto& m : methods)
        if (std::find(all_methods().begin(), all_methods().end(), m) == all_methods().end())
            throw ParameterError("unknown method '" + m + "'");
    std::vector<Rational> Ms = grid;
    std::sort(Ms.begin(), Ms.end());
    Ms.erase(std::unique(Ms.begin(), Ms.end()), Ms.end());

    auto point = [&](const Rational& M) {
        ComparisonRow row;
        row.M = M;
        for (const auto& m : methods) {
            try {
                if (auto v = evaluate(m, topo, N, M, opt.eval)) row.values[m] = *v;
            } catch (const std::exception& e) {
                throw std::runtime_error(m + " at M=" + to_string(M) + ": " + e.what());
            }
        }
        return row;
    };

    std::vector<ComparisonRow> rows(Ms.size());
    const unsigned threads = opt.threads ? opt.threads : std::max(1u, std::thread::hardware_concurrency());
    for (std::size_t start = 0; start < Ms.size(); start += threads) {
        std::vector<std::future<ComparisonRow>> jobs;
        for (std::size_t i = start; i < std::min(Ms.size(), start + threads); ++i)
            jobs.push_back(std::async(threads > 1 ? std::launch::async : std::launch::deferred, point, Ms[i]));
        for (std::size_t i = 0; i < jobs.size(); ++i) rows[start + i] = jobs[i].get();
    }

    if (opt.check) {
        auto bad = sandwich_violations(rows);
        auto mono = monotonicity_violations(rows);
        bad.insert(bad.end(), mono.begin(), mono.end());
        if (!bad.empty()) {
            std::string msg = "sweep checks failed:";
            for (const auto& b : bad) msg += "\n  " + b;
            throw std::runtime_error(msg);
        }
    }
    return rows;
}

std::vector<std::string> sandwich_violations(const std::vector<ComparisonRow>& rows) {
    std::vector<std::string> out;
    for (const auto& row : rows)
        for (const auto& [lo, lv] : row.values) {
            if (!is_converse(lo)) continue;
            for (const auto& [hi, hv] : row.values) {
                if (!is_achievable(hi)) continue;
                if (lv.value > hv.value)
                    out.push_back("M=" + to_string(row.M) + ": " + lo + "=" + to_string(lv.value) + " > " + hi + "=" +
                                  to_string(hv.value));
            }
        }
    return out;
}

std::vector<std::string> monotonicity_violations(const std::vector<ComparisonRow>& rows) {
    std::vector<std::string> out;
    std::map<std::string, std::pair<Rational, Rational>> last;
    for (const auto& row : rows)
        for (const auto& [m, v] : row.values) {
            auto it = last.find(m);
            if (it != last.end() && v.value > it->second.second)
                out.push_back(m + " increases from " + to_string(it->second.second) + " at M=" + to_string(it->second.first) +
                              " to " + to_string(v.value) + " at M=" + to_string(row.M));
            last[m] = {row.M, v.value};
        }
    return out;
}

std::string to_csv(const std::vector<ComparisonRow>& rows, const std::vector<std::string>& methods) {
    std::ostringstream os;
    os << "M_frac,M_dec,method,value_frac,value_dec,provenance\n";
    for (const auto& row : rows)
        for (const auto& m : methods) {
            auto it = row.values.find(m);
            if (it == row.values.end()) continue;
            os << to_string(row.M) << ',' << to_decimal(row.M) << ',' << m << ',' << to_string(it->second.value) << ','
               << to_decimal(it->second.value) << ',' << it->second.provenance << '\n';
        }
    return os.str();
}

} // namespace combnet
