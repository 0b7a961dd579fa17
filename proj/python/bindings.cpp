#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "combnet/bounds.hpp"
#include "combnet/closedforms.hpp"
#include "combnet/delivery.hpp"
#include "combnet/elimination.hpp"
#include "combnet/errors.hpp"
#include "combnet/harness.hpp"

namespace py = pybind11;
using namespace combnet;

// Rationals cross the boundary as "a/b" strings; the Python package turns them into Fractions.
namespace {

DemandVector demands_or_default(const std::optional<std::vector<int>>& d, int K, int N) {
    DemandVector out;
    if (!d) {
        for (int k = 0; k < K; ++k) out.d.push_back(k % N);
        return out;
    }
    if (static_cast<int>(d->size()) != K) throw ParameterError("expected one demand per user");
    for (int x : *d) out.d.push_back(x - 1);
    return out;
}

DeliveryPlan make_plan(const std::string& scheme, const Topology& t, const PlacementSpec& p, const DemandVector& d,
                       const std::optional<std::string>& s, std::uint64_t seed) {
    if (scheme == "general") return plan_general(t, p, d);
    if (scheme == "elim") {
        ElimOptions o;
        o.seed = seed;
        if (s) o.s = parse_rational(*s);
        return plan_elimination(t, p, d, o);
    }
    throw ParameterError("scheme must be general or elim");
}

} // namespace

PYBIND11_MODULE(_core, m) {
    py::register_exception<ParameterError>(m, "ParameterError", PyExc_ValueError);
    py::register_exception<RegimeError>(m, "RegimeError", PyExc_ValueError);

    m.def("topology", [](int H, int r) { return Topology(H, r).to_json(); }, py::arg("H"), py::arg("r"));

    m.def(
        "bound",
        [](const std::string& method, int H, int r, int N, const std::string& M, std::optional<int> b,
           std::size_t permSample, std::uint64_t seed) {
            EvalOptions o;
            o.b = b;
            o.bound.permSample = permSample;
            o.bound.seed = seed;
            py::gil_scoped_release release;
            auto v = evaluate_bound(method, Topology(H, r), N, parse_rational(M), o);
            return std::make_tuple(to_string(v.value), v.provenance, v.sampled);
        },
        py::arg("method"), py::arg("H"), py::arg("r"), py::arg("N"), py::arg("M"), py::arg("b") = py::none(),
        py::arg("perm_sample") = 0, py::arg("seed") = 1);

    m.def(
        "scheme",
        [](const std::string& scheme, int H, int r, int N, int t, std::optional<std::vector<int>> demands,
           std::optional<std::string> s, bool verify, std::uint64_t seed) {
            Topology topo(H, r);
            PlacementSpec p(N, topo.K(), t);
            auto d = demands_or_default(demands, topo.K(), N);
            auto plan = make_plan(scheme, topo, p, d, s, seed);
            py::dict out;
            out["load"] = to_string(max_link_load(plan));
            out["step2_load"] = to_string(plan.step2_load());
            out["v1_load"] = to_string(plan.v1_load());
            out["field"] = plan.choose_field();
            out["notices"] = plan.notices;
            out["plan"] = plan.to_json();
            if (verify) {
                auto rep = simulate_decode(topo, p, d, plan, 0, seed);
                out["decoded"] = rep.all_ok();
                std::vector<std::string> failures;
                for (const auto& f : rep.failures()) failures.push_back(f.str());
                out["failures"] = failures;
            }
            return out;
        },
        py::arg("scheme"), py::arg("H"), py::arg("r"), py::arg("N"), py::arg("t"), py::arg("demands") = py::none(),
        py::arg("s") = py::none(), py::arg("verify") = false, py::arg("seed") = 1);

    m.def(
        "sweep",
        [](int H, int r, int N, std::vector<std::string> grid, std::vector<std::string> methods, bool check) {
            std::vector<Rational> Ms;
            for (const auto& x : grid) Ms.push_back(parse_rational(x));
            SweepOptions o;
            o.check = check;
            py::gil_scoped_release release;
            return to_csv(sweep(Topology(H, r), N, Ms, methods, o), methods);
        },
        py::arg("H"), py::arg("r"), py::arg("N"), py::arg("grid"), py::arg("methods"), py::arg("check") = true);

    m.def(
        "coding_matrices",
        [](int H, int r, std::optional<std::string> s) {
            ElimOptions o;
            if (s) o.s = parse_rational(*s);
            std::vector<std::string> out;
            for (const auto& cm : elimination_matrices(Topology(H, r), o)) out.push_back(cm.to_json());
            return out;
        },
        py::arg("H"), py::arg("r"), py::arg("s") = py::none());

    m.def(
        "group_divide",
        [](int k, std::uint64_t seed) {
            GroupDivideOptions o;
            o.seed = seed;
            return group_divide(k, o).to_json();
        },
        py::arg("k"), py::arg("seed") = 1);

    m.def("elim_closed_form", [](int H, int r) { return to_string(load_thm6(Topology(H, r))); }, py::arg("H"),
          py::arg("r"));
    m.def(
        "low_memory_optimum",
        [](int H, int r, int N, const std::string& M) { return to_string(thm8_low_memory(Topology(H, r), N, parse_rational(M))); },
        py::arg("H"), py::arg("r"), py::arg("N"), py::arg("M"));
    m.def("methods", &all_methods);
}
