#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "combnet/bounds.hpp"
#include "combnet/closedforms.hpp"
#include "combnet/elimination.hpp"
#include "combnet/exactmath.hpp"
#include "combnet/lp.hpp"
#include "combnet/topology.hpp"

namespace combnet {

struct EvalOptions {
    BoundOptions bound;
    LpOptions lp;
    ElimOptions elim;
    /// Fixes b for thm3/thm4; otherwise the maximum over b in [r, H] is taken.
    std::optional<int> b;
    /// Integer memory points whose plan would hold more messages than this are left out of scheme curves.
    std::size_t planLimit = 200000;
};

struct MethodValue {
    Rational value = 0;
    std::string provenance;
    bool sampled = false;
};

const std::vector<std::string>& all_methods();
bool is_converse(const std::string& method);
bool is_achievable(const std::string& method);

/// nullopt when the method does not apply at (topology, N, M).
std::optional<MethodValue> evaluate(const std::string& method, const Topology& topo, int N, const Rational& M,
                                    const EvalOptions& opt = {});

/// Bound LP value for one method (cutset, thm1..thm4).
MethodValue evaluate_bound(const std::string& method, const Topology& topo, int N, const Rational& M,
                           const EvalOptions& opt = {});

/// Max link-load of the general scheme at integer t (identity-like demands).
Rational general_load_at(const Topology& topo, int N, int t);
/// Memory-sharing curves; the elimination curve adds its t = 1 point when H >= 2r.
LoadCurve general_curve(const Topology& topo, int N, std::size_t planLimit = 200000);
LoadCurve elim_curve(const Topology& topo, int N, const ElimOptions& opt = {}, std::size_t planLimit = 200000);

struct ComparisonRow {
    Rational M;
    std::map<std::string, MethodValue> values;
};

struct Baseline {
    int H, r, N;
    Rational M;
    std::string method;
    Rational value;
    std::string provenance;
};

/// Stored loads of earlier schemes at three published operating points.
const std::vector<Baseline>& baseline_table();

/// M = i N / (points - 1), i = 0..points-1.
std::vector<Rational> memory_grid(int N, int points);

struct SweepOptions {
    EvalOptions eval;
    bool check = true;
    unsigned threads = 0;
};

/// Rows ordered by M; each row holds every applicable method. Violations of the sandwich or of
/// monotonicity throw std::runtime_error when opt.check is set.
std::vector<ComparisonRow> sweep(const Topology& topo, int N, const std::vector<Rational>& grid,
                                 const std::vector<std::string>& methods, const SweepOptions& opt = {});

/// Pairs (converse, achievable) at the same M where converse > achievable.
std::vector<std::string> sandwich_violations(const std::vector<ComparisonRow>& rows);
/// Methods whose value increases with M.
std::vector<std::string> monotonicity_violations(const std::vector<ComparisonRow>& rows);

/// CSV with header M_frac,M_dec,method,value_frac,value_dec,provenance; rows by M then method order.
std::string to_csv(const std::vector<ComparisonRow>& rows, const std::vector<std::string>& methods);

} // namespace combnet
