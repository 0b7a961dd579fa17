#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "combnet/bounds.hpp"
#include "combnet/closedforms.hpp"
#include "combnet/delivery.hpp"
#include "combnet/elimination.hpp"
#include "combnet/errors.hpp"
#include "combnet/harness.hpp"
#include "combnet/lp.hpp"
#include "combnet/topology.hpp"

using namespace combnet;
using json = nlohmann::json;

namespace {

struct Globals {
    std::uint64_t seed = 1;
    bool json = false;
    std::size_t permSample = 0;
    std::uint64_t field = 0;
};

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, sep))
        if (!item.empty()) out.push_back(item);
    return out;
}

std::string show(const Rational& q) { return to_string(q) + " (" + to_decimal(q) + ")"; }

DemandVector parse_demands(const std::string& text, int K, int N) {
    if (text.empty()) {
        DemandVector d;
        for (int k = 0; k < K; ++k) d.d.push_back(k % N);
        return d;
    }
    DemandVector d;
    for (const auto& x : split(text, ',')) d.d.push_back(std::stoi(x) - 1);
    if (d.K() != K) throw ParameterError("expected " + std::to_string(K) + " demands");
    return d;
}

int cmd_net(const Globals& g, int H, int r, int t) {
    Topology topo(H, r);
    auto v1 = v1_sets(topo, t);
    if (g.json) {
        json j = json::parse(topo.to_json());
        json vs = json::array();
        for (auto J : v1) vs.push_back(J.ids1());
        j["t"] = t;
        j["V1"] = vs;
        std::cout << j.dump(2) << "\n";
        return 0;
    }
    std::cout << "H=" << H << " r=" << r << " K=" << topo.K() << "\n";
    for (int k = 0; k < topo.K(); ++k) std::cout << "  user " << k + 1 << ": relays " << topo.relays_of(k).str() << "\n";
    for (int h = 0; h < H; ++h) std::cout << "  relay " << h + 1 << ": users " << topo.users_of(h).str() << "\n";
    std::cout << "V1 at t=" << t << " (" << v1.size() << " sets):";
    for (auto J : v1) std::cout << " " << J.str();
    std::cout << "\n";
    return 0;
}

int cmd_bound(const Globals& g, const std::string& method, int H, int r, int N, const std::string& Mtext, int b,
              bool dump, bool witness) {
    Topology topo(H, r);
    const Rational M = parse_rational(Mtext);
    EvalOptions opt;
    opt.bound.permSample = g.permSample;
    opt.bound.seed = g.seed;
    if (b > 0) opt.b = b;
    auto v = evaluate_bound(method, topo, N, M, opt);
    json j;
    j["method"] = method;
    j["H"] = H;
    j["r"] = r;
    j["N"] = N;
    j["M"] = to_string(M);
    j["value"] = to_string(v.value);
    j["decimal"] = to_decimal(v.value);
    j["sampled"] = v.sampled;
    j["provenance"] = v.provenance;
    if ((dump || witness) && method != "cutset") {
        BoundSystem sys;
        if (method == "thm1") sys = gen_thm1(topo, N, opt.bound);
        else if (method == "thm2") sys = gen_thm2(topo, N, opt.bound);
        else {
            const int bb = b > 0 ? b : r;
            sys = method == "thm3" ? gen_thm3(topo, N, bb, opt.bound) : gen_thm4(topo, N, bb, opt.bound);
        }
        if (dump) std::cout << sys.dump();
        if (witness) {
            auto lp = build_bound_lp(sys, N, M);
            j["lp"] = json::parse(solve_lp(lp).to_json(lp));
        }
    }
    if (g.json)
        std::cout << j.dump(2) << "\n";
    else
        std::cout << method << " H=" << H << " r=" << r << " N=" << N << " M=" << to_string(M) << ": " << show(v.value)
                  << (v.sampled ? " [sampled-valid]" : "") << "\n";
    if (witness && !g.json) std::cout << j["lp"].dump(2) << "\n";
    return 0;
}

int cmd_scheme(const Globals& g, const std::string& scheme, int H, int r, int N, int t, const std::string& demands,
               bool verify, bool showPlan, bool matrices, const std::string& sText) {
    Topology topo(H, r);
    PlacementSpec p(N, topo.K(), t);
    auto d = parse_demands(demands, topo.K(), N);
    DeliveryPlan plan;
    ElimOptions eo;
    eo.seed = g.seed;
    if (!sText.empty()) eo.s = parse_rational(sText);
    if (scheme == "general")
        plan = plan_general(topo, p, d);
    else if (scheme == "elim")
        plan = plan_elimination(topo, p, d, eo);
    else
        throw ParameterError("scheme must be general or elim");

    json j;
    j["scheme"] = scheme;
    j["H"] = H;
    j["r"] = r;
    j["N"] = N;
    j["t"] = t;
    j["M"] = to_string(p.M());
    const Rational load = max_link_load(plan);
    j["load"] = to_string(load);
    j["decimal"] = to_decimal(load);
    j["step2_load"] = to_string(plan.step2_load());
    j["v1_load"] = to_string(plan.v1_load());
    json rl = json::array();
    for (const auto& x : plan.server_loads()) rl.push_back(to_string(x));
    j["relay_loads"] = rl;
    const std::uint64_t field = g.field ? g.field : plan.choose_field();
    j["field"] = field;
    j["notices"] = plan.notices;
    bool ok = true;
    if (verify) {
        auto rep = simulate_decode(topo, p, d, plan, field, g.seed);
        ok = rep.all_ok();
        j["decode"] = json::parse(rep.to_json());
    }
    if (matrices && scheme == "elim" && H >= 2 * r) {
        json ms = json::array();
        for (const auto& cm : elimination_matrices(topo, eo)) ms.push_back(json::parse(cm.to_json()));
        j["coding_matrices"] = ms;
    }
    if (showPlan) j["plan"] = json::parse(plan.to_json());

    if (g.json) {
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << scheme << " H=" << H << " r=" << r << " N=" << N << " t=" << t << " (M=" << to_string(p.M())
                  << "): max link-load " << show(load) << "\n";
        std::cout << "  Step-2 load " << to_string(plan.step2_load()) << ", V1 load " << to_string(plan.v1_load())
                  << ", field " << field << "\n";
        for (const auto& n : plan.notices) std::cout << "  note: " << n << "\n";
        if (verify) {
            if (ok) {
                std::cout << "  decode: all " << topo.K() << " users recovered\n";
            } else {
                for (const auto& f : simulate_decode(topo, p, d, plan, field, g.seed).failures())
                    std::cout << "  decode failure: " << f.str() << "\n";
            }
        }
        if (j.contains("coding_matrices")) std::cout << j["coding_matrices"].dump(2) << "\n";
        if (showPlan) std::cout << plan.to_json() << "\n";
    }
    return ok ? 0 : 3;
}

int cmd_sweep(const Globals& g, int H, int r, int N, int gridPoints, const std::string& Mlist,
              const std::string& methods, const std::string& out, unsigned threads) {
    Topology topo(H, r);
    std::vector<Rational> grid;
    if (!Mlist.empty())
        for (const auto& x : split(Mlist, ',')) grid.push_back(parse_rational(x));
    else
        grid = memory_grid(N, gridPoints);
    SweepOptions so;
    so.eval.bound.permSample = g.permSample;
    so.eval.bound.seed = g.seed;
    so.eval.elim.seed = g.seed;
    so.threads = threads;
    auto ms = split(methods, ',');
    auto rows = sweep(topo, N, grid, ms, so);
    auto csv = to_csv(rows, ms);
    if (out.empty() || out == "-") {
        std::cout << csv;
    } else {
        std::ofstream f(out);
        if (!f) throw std::runtime_error("cannot write " + out);
        f << csv;
        std::cerr << "wrote " << rows.size() << " grid points to " << out << "\n";
    }
    return 0;
}

int cmd_certify(const Globals& g, const std::string& what, int k, const std::string& row, int kmax) {
    json j;
    bool ok = true;
    if (what == "integer") {
        json items = json::array();
        for (int i = 1; i <= kmax; ++i) {
            const bool divides = binom(2 * i + 1, i) % (2 * i + 1) == 0;
            ok &= divides;
            items.push_back({{"k", i}, {"divides", divides}});
        }
        j["integer"] = items;
    } else if (what == "circulant") {
        std::vector<std::vector<int>> rows;
        if (!row.empty()) {
            std::vector<int> r;
            for (const auto& x : split(row, ',')) r.push_back(std::stoi(x));
            rows.push_back(r);
        } else {
            for (auto bits : lex_subsets(2 * k + 1, k)) {
                std::vector<int> r(2 * k + 1, 0);
                for (int i = 0; i < 2 * k + 1; ++i) r[i] = (bits >> i) & 1u;
                rows.push_back(r);
            }
        }
        int inv = 0;
        for (const auto& r : rows) inv += certify_circulant(k, r);
        j["k"] = k;
        j["rows"] = rows.size();
        j["invertible"] = inv;
        j["hypothesis"] = prime_power_or_semiprime(2 * k + 1);
        ok = inv == static_cast<int>(rows.size());
        if (!j["hypothesis"].get<bool>()) j["note"] = "2k+1 outside the p^v / pq condition; result is informational";
    } else if (what == "groups") {
        GroupDivideOptions o;
        o.seed = g.seed;
        auto div = group_divide(k, o);
        j = json::parse(div.to_json());
        ok = div.certified();
    } else if (what == "lifting") {
        json items = json::array();
        for (int i = 1; i <= kmax; ++i) {
            auto div = cyclic_groups(i);
            bool all = true;
            for (const auto& grp : div.groups) all &= rank(lifted_matrix(i, grp)) == 2 * i + 2;
            items.push_back({{"k", i}, {"groups", div.groups.size()}, {"lifted_full_rank", all}});
            ok &= all;
        }
        j["lifting"] = items;
    } else {
        throw ParameterError("certify target must be integer, circulant, groups or lifting");
    }
    j["ok"] = ok;
    std::cout << j.dump(2) << "\n";
    return ok ? 0 : 3;
}

int cmd_selftest() {
    int failures = 0;
    auto check = [&](const std::string& name, bool ok) {
        std::cout << (ok ? "PASS " : "FAIL ") << name << "\n";
        failures += !ok;
    };
    Topology t42(4, 2);
    check("thm1 H=4 r=2 N=6 M=2 = 9/23", evaluate_bound("thm1", t42, 6, 2).value == Rational(9, 23));
    check("thm2 H=4 r=2 N=6 M=2 = 7/17", evaluate_bound("thm2", t42, 6, 2).value == Rational(7, 17));
    check("cutset H=4 r=2 N=6 M=6 = 0", cutset_bound(t42, 6, 6) == 0);
    PlacementSpec p(6, 6, 1);
    auto d = DemandVector::identity(6);
    auto ge = plan_general(t42, p, d);
    auto el = plan_elimination(t42, p, d);
    check("general H=4 r=2 t=1 load 3/4", max_link_load(ge) == Rational(3, 4));
    check("elim H=4 r=2 t=1 load 2/3", max_link_load(el) == Rational(2, 3));
    check("elim decode", simulate_decode(t42, p, d, el).all_ok());
    check("general decode", simulate_decode(t42, p, d, ge).all_ok());
    for (int k = 1; k <= 3; ++k) check("group division k=" + std::to_string(k), group_divide(k).certified());
    check("closed form H=4 r=2 N=6 M=1 = 2/3", thm8_low_memory(t42, 6, 1) == Rational(2, 3));
    return failures ? 1 : 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Combination networks with caches: bounds, delivery schemes and certificates"};
    app.require_subcommand(1);
    Globals g;
    app.add_option("--seed", g.seed, "Seed for sampling, payloads and group search");
    app.add_flag("--json", g.json, "Machine-readable output");
    app.add_option("--perm-sample", g.permSample, "Sample at most this many permutations per bound family");
    app.add_option("--field", g.field, "Prime field for decode simulation");

    int H = 0, r = 0, N = 0, t = 1, b = 0, gridPoints = 11, k = 1, kmax = 4;
    std::string M = "0", method, scheme, demands, methods, out, row, what, sText, Mlist;
    bool dump = false, witness = false, verify = false, showPlan = false, matrices = false;
    unsigned threads = 0;

    auto* net = app.add_subcommand("net", "Show the topology and V1");
    net->add_option("--H", H)->required();
    net->add_option("--r", r)->required();
    net->add_option("--t", t, "Memory point used for V1");

    auto* bound = app.add_subcommand("bound", "Evaluate an outer bound");
    bound->add_option("method", method, "cutset, thm1, thm2, thm3 or thm4")->required();
    bound->add_option("--H", H)->required();
    bound->add_option("--r", r)->required();
    bound->add_option("--N", N)->required();
    bound->add_option("--M", M, "Cache size, e.g. 2 or 1/2")->required();
    bound->add_option("--b", b, "Fix b for thm3/thm4 (default: max over b)");
    bound->add_flag("--dump", dump, "Print the generated rows");
    bound->add_flag("--witness", witness, "Include the LP vertex and dual certificate");

    auto* sch = app.add_subcommand("scheme", "Plan (and optionally verify) a delivery scheme");
    sch->add_option("scheme", scheme, "general or elim")->required();
    sch->add_option("--H", H)->required();
    sch->add_option("--r", r)->required();
    sch->add_option("--N", N)->required();
    sch->add_option("--t", t)->required();
    sch->add_option("--demands", demands, "Comma-separated 1-based file ids, one per user");
    sch->add_option("--s", sText, "Target sum for every elimination column");
    sch->add_flag("--verify", verify, "Simulate decoding over a prime field");
    sch->add_flag("--plan", showPlan, "Print the per-relay plan");
    sch->add_flag("--matrices", matrices, "Print the elimination coding matrices");

    auto* sw = app.add_subcommand("sweep", "Tabulate methods over a memory grid as CSV");
    sw->add_option("--H", H)->required();
    sw->add_option("--r", r)->required();
    sw->add_option("--N", N)->required();
    sw->add_option("--grid", gridPoints, "Uniform grid size over [0, N]");
    sw->add_option("--M", Mlist, "Explicit comma-separated memory points");
    sw->add_option("--methods", methods, "Comma-separated methods")->required();
    sw->add_option("--out", out, "Output CSV path (default stdout)");
    sw->add_option("--threads", threads);

    auto* cert = app.add_subcommand("certify", "Circulant, group and lifting certificates");
    cert->add_option("what", what, "integer, circulant, groups or lifting")->required();
    cert->add_option("--k", k);
    cert->add_option("--row", row, "Comma-separated 0/1 first row");
    cert->add_option("--kmax", kmax);

    auto* self = app.add_subcommand("selftest", "Quick reproduction checks");

    for (auto* sub : {net, bound, sch, sw, cert, self}) sub->fallthrough();

    CLI11_PARSE(app, argc, argv);
    try {
        if (*net) return cmd_net(g, H, r, t);
        if (*bound) return cmd_bound(g, method, H, r, N, M, b, dump, witness);
        if (*sch) return cmd_scheme(g, scheme, H, r, N, t, demands, verify, showPlan, matrices, sText);
        if (*sw) return cmd_sweep(g, H, r, N, gridPoints, Mlist, methods, out, threads);
        if (*cert) return cmd_certify(g, what, k, row, kmax);
        if (*self) return cmd_selftest();
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
