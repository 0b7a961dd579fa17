#include "combnet/bounds.hpp"

#include <algorithm>
#include <functional>
#include <random>
#include <sstream>
#include <unordered_set>

#include "combnet/errors.hpp"

namespace combnet {

const char* sense_str(Sense s) {
    switch (s) {
    case Sense::GE: return ">=";
    case Sense::LE: return "<=";
    case Sense::EQ: return "=";
    }
    return "?";
}

namespace {

std::string id_list(std::uint64_t bits) {
    std::string s = "[";
    bool first = true;
    for (std::uint64_t b = bits; b; b &= b - 1) {
        if (!first) s += ',';
        s += std::to_string(std::countr_zero(b) + 1);
        first = false;
    }
    return s + "]";
}

std::string seq_str(const std::vector<int>& p) {
    std::string s = "(";
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (i) s += ',';
        s += std::to_string(p[i] + 1);
    }
    return s + ")";
}

std::string coeff_map_str(const std::map<std::uint64_t, Rational>& m) {
    std::string s = "{";
    bool first = true;
    for (const auto& [k, v] : m) {
        if (!first) s += ',';
        s += id_list(k) + ":" + to_string(v);
        first = false;
    }
    return s + "}";
}

std::string row_key(const BoundConstraint& c) {
    return std::string(sense_str(c.sense)) + to_string(c.rhs) + "|" + to_string(c.coeffR) + "|" +
           coeff_map_str(c.coeffX) + "|" + coeff_map_str(c.coeffY);
}

void check_regime(const Topology& t, int N) {
    if (N < t.K()) throw RegimeError("bounds require N >= K (distinct demands)");
    if (t.K() > 12) throw RegimeError("bound generation limited to K <= 12 (2^K subfile variables)");
}

/// Runs `emit` for every combination of permutations of the given components
/// (or a seeded sample of them). Returns true when sampled.
bool for_each_perm_combo(const std::vector<std::vector<int>>& comps, const BoundOptions& opt, std::mt19937_64& rng,
                         const std::function<void(const std::vector<std::vector<int>>&)>& emit) {
    double total = 1;
    for (const auto& c : comps)
        for (std::size_t i = 2; i <= c.size(); ++i) total *= static_cast<double>(i);

    std::size_t cap = opt.permSample;
    if (cap == 0 && total > static_cast<double>(opt.exhaustiveLimit)) cap = 20000;
    if (cap != 0 && total > static_cast<double>(cap)) {
        std::vector<std::vector<int>> cur = comps;
        for (std::size_t s = 0; s < cap; ++s) {
            for (auto& c : cur) std::shuffle(c.begin(), c.end(), rng);
            emit(cur);
        }
        return true;
    }

    std::vector<std::vector<int>> cur = comps;
    for (auto& c : cur) std::sort(c.begin(), c.end());
    std::function<void(std::size_t)> rec = [&](std::size_t i) {
        if (i == cur.size()) {
            emit(cur);
            return;
        }
        do {
            rec(i + 1);
        } while (std::next_permutation(cur[i].begin(), cur[i].end()));
    };
    rec(0);
    return false;
}

std::vector<std::uint64_t> all_user_subsets(int K) {
    std::vector<std::uint64_t> out;
    for (std::uint64_t w = 0; w < (std::uint64_t{1} << K); ++w) out.push_back(w);
    return out;
}

/// Relay subsets with size in [lo, hi], ordered by size then lexicographically.
std::vector<RelaySet> relay_subsets(int H, int lo, int hi) {
    std::vector<RelaySet> out;
    for (int s = lo; s <= hi; ++s)
        for (auto bits : lex_subsets(H, s)) out.emplace_back(bits);
    return out;
}

struct RowBuilder {
    const Topology& t;
    std::vector<std::uint64_t> subsets;

    explicit RowBuilder(const Topology& topo) : t(topo), subsets(all_user_subsets(topo.K())) {}

    /// Row  |Q| R - sum coef_W x_W  [- y_Q]  >= 0  for blocks with permutations `blockPerms`
    /// and the remainder permutation `rest` over [K] \ V.
    BoundConstraint partition_row(const std::string& thm, RelaySet Q, const std::vector<RelaySet>& parts,
                                  const std::vector<std::vector<int>>& perms, bool withY) const {
        const int a = static_cast<int>(parts.size());
        UserSet V;
        for (auto P : parts) V |= t.users_within(P);
        const auto all = t.all_users();
        BoundConstraint row;
        row.thm = thm;
        row.coeffR = Q.size();
        for (auto w : subsets) {
            UserSet W(w);
            int coef = 0;
            for (int i = 0; i < a; ++i) coef += prefix_coefficient(perms[i], W, all);
            if (static_cast<int>(perms.size()) > a) coef += prefix_coefficient(perms[a], W, all.minus(V));
            if (coef) row.coeffX[w] = -coef;
        }
        if (withY) row.coeffY[Q.bits()] = -1;

        std::string prov = "Q=" + id_list(Q.bits());
        if (a > 1 || static_cast<int>(perms.size()) > a) {
            prov += ";parts=";
            for (int i = 0; i < a; ++i) prov += (i ? "|" : "") + id_list(parts[i].bits());
        }
        prov += ";perm=";
        for (std::size_t i = 0; i < perms.size(); ++i) prov += (i ? "|" : "") + seq_str(perms[i]);
        row.provenance = prov;
        return row;
    }
};

/// Emits one row per (partition, permutation combination) of Q. With `partitioned` false only the
/// single-block partition is used.
bool emit_q_rows(const RowBuilder& rb, const std::string& thm, RelaySet Q, bool partitioned, bool withY,
                 const BoundOptions& opt, std::mt19937_64& rng, std::vector<BoundConstraint>& out) {
    const Topology& t = rb.t;
    bool sampled = false;
    std::vector<std::vector<RelaySet>> parts;
    if (partitioned)
        parts = partitions_min_block(Q, t.r());
    else
        parts.push_back({Q});
    const UserSet KQ = t.users_within(Q);
    for (const auto& P : parts) {
        std::vector<std::vector<int>> comps;
        UserSet V;
        for (auto block : P) {
            auto Kb = t.users_within(block);
            V |= Kb;
            comps.push_back(Kb.elements());
        }
        auto rest = KQ.minus(V);
        if (!rest.empty()) comps.push_back(rest.elements());
        sampled |= for_each_perm_combo(comps, opt, rng, [&](const std::vector<std::vector<int>>& perms) {
            out.push_back(rb.partition_row(thm, Q, P, perms, withY));
        });
    }
    return sampled;
}

/// Coupling rows  sum_{|Q|=b} y_Q >= sum_i sum_{W avoiding p_1..p_i} c({p_i} u W, b) x_W, one per p([K]).
bool emit_coupling_rows(const Topology& t, int b, const std::vector<RelaySet>& yVars, const BoundOptions& opt,
                        std::mt19937_64& rng, std::vector<BoundConstraint>& out) {
    const int K = t.K();
    std::vector<long> c(std::size_t{1} << K);
    for (std::uint64_t w = 0; w < c.size(); ++w) c[w] = coeff_c(t, UserSet(w), b).get_si();

    std::vector<int> users = t.all_users().elements();
    return for_each_perm_combo({users}, opt, rng, [&](const std::vector<std::vector<int>>& perms) {
        const auto& p = perms[0];
        std::vector<int> pos(K);
        for (int i = 0; i < K; ++i) pos[p[i]] = i;
        BoundConstraint row;
        row.thm = "coupling";
        for (auto Q : yVars) row.coeffY[Q.bits()] = 1;
        for (std::uint64_t w = 0; w < c.size(); ++w) {
            int first = K;
            for (std::uint64_t bb = w; bb; bb &= bb - 1) first = std::min(first, pos[std::countr_zero(bb)]);
            long coef = 0;
            for (int i = 0; i < first; ++i) coef += c[w | (std::uint64_t{1} << p[i])];
            if (coef) row.coeffX[w] = -coef;
        }
        row.provenance = "b=" + std::to_string(b) + ";perm=" + seq_str(p);
        out.push_back(std::move(row));
    });
}

BoundSystem gen_y_family(const Topology& t, int N, int b, bool partitioned, const BoundOptions& opt) {
    check_regime(t, N);
    if (b < t.r() || b > t.H()) throw ParameterError("b must lie in [r, H]");
    BoundSystem sys;
    sys.method = partitioned ? "thm4" : "thm3";
    sys.H = t.H();
    sys.r = t.r();
    sys.K = t.K();
    sys.b = b;
    for (auto bits : lex_subsets(t.H(), b)) sys.yVars.emplace_back(bits);

    std::mt19937_64 rng(opt.seed);
    RowBuilder rb(t);
    for (auto Q : relay_subsets(t.H(), t.r(), t.H()))
        sys.sampled |= emit_q_rows(rb, sys.method, Q, partitioned, Q.size() == b, opt, rng, sys.rows);
    sys.sampled |= emit_coupling_rows(t, b, sys.yVars, opt, rng, sys.rows);
    for (auto Q : sys.yVars) {
        BoundConstraint row;
        row.thm = "ynonneg";
        row.coeffY[Q.bits()] = 1;
        row.provenance = "Q=" + id_list(Q.bits());
        sys.rows.push_back(std::move(row));
    }
    sys.generated = sys.rows.size();
    dedup_rows(sys.rows);
    return sys;
}

} // namespace

std::string BoundConstraint::dump() const {
    std::ostringstream os;
    os << thm << ' ' << sense_str(sense) << ' ' << to_string(rhs) << " | R:" << to_string(coeffR)
       << " | x:" << coeff_map_str(coeffX) << " | y:" << coeff_map_str(coeffY) << " | prov:" << provenance;
    return os.str();
}

bool BoundConstraint::same_row(const BoundConstraint& o) const {
    return sense == o.sense && rhs == o.rhs && coeffR == o.coeffR && coeffX == o.coeffX && coeffY == o.coeffY;
}

std::string BoundSystem::dump() const {
    std::string s;
    for (const auto& r : rows) s += r.dump() + "\n";
    return s;
}

std::vector<std::pair<Rational, Rational>> cutset_points(const Topology& t, int N, int x) {
    if (x < t.r() || x > t.H()) throw ParameterError("cut-set: x must lie in [r, H]");
    const long C = binom(x, t.r()).get_si();
    std::vector<std::pair<Rational, Rational>> pts;
    for (long s = 0; s <= C; ++s) pts.emplace_back(frac(s * N, C), frac(C - s, static_cast<long>(x) * (s + 1)));
    return pts;
}

Rational cutset_bound(const Topology& t, int N, const Rational& M) {
    if (N < 1) throw ParameterError("N must be positive");
    if (M < 0 || M > N) throw ParameterError("M must lie in [0, N]");
    Rational best = 0;
    for (int x = t.r(); x <= t.H(); ++x) {
        auto pts = cutset_points(t, N, x);
        for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
            const auto& [m0, r0] = pts[i];
            const auto& [m1, r1] = pts[i + 1];
            if (M < m0 || M > m1) continue;
            Rational v = r0 + (r1 - r0) * (M - m0) / (m1 - m0);
            if (v > best) best = v;
            break;
        }
    }
    return best;
}

BigInt coeff_c(const Topology& t, UserSet W1, int l) {
    if (l < t.r() || l > t.H()) throw ParameterError("coeff_c: l must lie in [r, H]");
    long hit = 0;
    for (auto bits : lex_subsets(t.H(), l))
        if (t.users_within(RelaySet(bits)).intersects(W1)) ++hit;
    BigInt v = binom(t.H() - 1, l - 1) - hit;
    return v > 0 ? v : BigInt(0);
}

int prefix_coefficient(const std::vector<int>& p, UserSet W, UserSet allowed) {
    if (!W.subset_of(allowed)) return 0;
    for (std::size_t i = 0; i < p.size(); ++i)
        if (W.contains(p[i])) return static_cast<int>(i);
    return static_cast<int>(p.size());
}

std::vector<std::vector<RelaySet>> partitions_min_block(RelaySet Q, int minBlock) {
    std::vector<std::vector<RelaySet>> out;
    std::vector<RelaySet> cur;
    std::function<void(RelaySet)> rec = [&](RelaySet rest) {
        if (rest.empty()) {
            out.push_back(cur);
            return;
        }
        const int lowest = rest.first();
        RelaySet others = rest;
        others.erase(lowest);
        // Every block containing the lowest remaining element, in increasing bitmask order.
        std::vector<std::uint64_t> choices;
        for_each_subset_of(others.bits(), [&](std::uint64_t sub) { choices.push_back(sub); });
        std::sort(choices.begin(), choices.end());
        for (auto sub : choices) {
            RelaySet block(sub);
            block.insert(lowest);
            if (block.size() < minBlock) continue;
            RelaySet left = rest.minus(block);
            if (!left.empty() && left.size() < minBlock) continue;
            cur.push_back(block);
            rec(left);
            cur.pop_back();
        }
    };
    rec(Q);
    // The single-block partition first, then by number of blocks.
    std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.size() < b.size(); });
    return out;
}

void dedup_rows(std::vector<BoundConstraint>& rows) {
    std::unordered_set<std::string> seen;
    std::vector<BoundConstraint> kept;
    kept.reserve(rows.size());
    for (auto& r : rows)
        if (seen.insert(row_key(r)).second) kept.push_back(std::move(r));
    rows = std::move(kept);
}

BoundSystem gen_thm1(const Topology& t, int N, const BoundOptions& opt) {
    check_regime(t, N);
    BoundSystem sys;
    sys.method = "thm1";
    sys.H = t.H();
    sys.r = t.r();
    sys.K = t.K();
    std::mt19937_64 rng(opt.seed);
    RowBuilder rb(t);
    for (auto Q : relay_subsets(t.H(), t.r(), t.H()))
        sys.sampled |= emit_q_rows(rb, "thm1", Q, false, false, opt, rng, sys.rows);
    sys.generated = sys.rows.size();
    dedup_rows(sys.rows);
    return sys;
}

BoundSystem gen_thm2(const Topology& t, int N, const BoundOptions& opt) {
    check_regime(t, N);
    BoundSystem sys;
    sys.method = "thm2";
    sys.H = t.H();
    sys.r = t.r();
    sys.K = t.K();
    std::mt19937_64 rng(opt.seed);
    RowBuilder rb(t);
    for (auto Q : relay_subsets(t.H(), t.r(), t.H()))
        sys.sampled |= emit_q_rows(rb, "thm2", Q, true, false, opt, rng, sys.rows);
    sys.generated = sys.rows.size();
    dedup_rows(sys.rows);
    return sys;
}

BoundSystem gen_thm3(const Topology& t, int N, int b, const BoundOptions& opt) {
    return gen_y_family(t, N, b, false, opt);
}

BoundSystem gen_thm4(const Topology& t, int N, int b, const BoundOptions& opt) {
    return gen_y_family(t, N, b, true, opt);
}

} // namespace combnet
