#include "combnet/elimination.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <set>

#include <json.hpp>

#include "combnet/errors.hpp"

namespace combnet {

using json = nlohmann::json;

namespace {

std::uint64_t rotate(std::uint64_t bits, int n) {
    const std::uint64_t mask = (std::uint64_t{1} << n) - 1;
    return ((bits << 1) | (bits >> (n - 1))) & mask;
}

std::vector<std::vector<long>> lifted_rows(int k, const std::vector<std::uint64_t>& group) {
    const int n = 2 * k + 2;
    std::vector<std::vector<long>> rows;
    rows.emplace_back(n, 1);
    for (auto g : group) {
        std::vector<long> row(n, 0);
        for (int i = 0; i < n - 1; ++i) row[i] = (g >> i) & 1u;
        row[n - 1] = 1;
        rows.push_back(std::move(row));
    }
    return rows;
}

std::vector<std::vector<long>> incidence_rows(int k, const std::vector<std::uint64_t>& group) {
    const int n = 2 * k + 1;
    std::vector<std::vector<long>> rows;
    for (auto g : group) {
        std::vector<long> row(n, 0);
        for (int i = 0; i < n; ++i) row[i] = (g >> i) & 1u;
        rows.push_back(std::move(row));
    }
    return rows;
}

GroupCertificate certify(int k, const std::vector<std::uint64_t>& group) {
    return {exact_rank(lifted_rows(k, group)), exact_rank(incidence_rows(k, group))};
}

void check_k(int k) {
    if (k < 0) throw ParameterError("k must be nonnegative");
    if (2 * k + 2 > 62) throw ParameterError("k too large for 64-bit subset masks");
}

std::vector<std::uint64_t> k_subsets(int k) { return lex_subsets(2 * k + 1, k); }

} // namespace

int exact_rank(const std::vector<std::vector<long>>& rows) {
    if (rows.empty()) return 0;
    const int m = static_cast<int>(rows.size());
    const int n = static_cast<int>(rows.front().size());
    PrimeField f(2147483647);
    FieldMatrix fm(m, n, 0);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < n; ++j) fm(i, j) = f.from_int(rows[i][j]);
    const int rk = rank(f, fm);
    if (rk == std::min(m, n)) return rk;
    return rank(rational_matrix(rows));
}

RationalMatrix incidence_matrix(int k, const std::vector<std::uint64_t>& group) {
    return rational_matrix(incidence_rows(k, group));
}

RationalMatrix lifted_matrix(int k, const std::vector<std::uint64_t>& group) {
    return rational_matrix(lifted_rows(k, group));
}

bool GroupDivision::certified() const {
    if (certificates.size() != groups.size()) return false;
    for (const auto& c : certificates)
        if (c.liftedRank != 2 * k + 2) return false;
    return true;
}

std::string GroupDivision::to_json() const {
    json j;
    j["k"] = k;
    j["mode"] = mode;
    j["restarts"] = restarts;
    j["certified"] = certified();
    json gs = json::array();
    for (std::size_t g = 0; g < groups.size(); ++g) {
        json gj;
        json subs = json::array();
        for (auto bits : groups[g]) {
            auto ids = UserSet(bits).ids1();
            ids.push_back(2 * k + 2);
            subs.push_back(ids);
        }
        gj["subsets"] = subs;
        if (g < certificates.size()) {
            gj["lifted_rank"] = certificates[g].liftedRank;
            gj["incidence_rank"] = certificates[g].incidenceRank;
        }
        gs.push_back(gj);
    }
    j["groups"] = gs;
    return j.dump(2);
}

GroupDivision cyclic_groups(int k) {
    check_k(k);
    const int n = 2 * k + 1;
    GroupDivision div;
    div.k = k;
    div.mode = "cyclic";
    std::set<std::uint64_t> seen;
    for (auto s : k_subsets(k)) {
        if (seen.count(s)) continue;
        std::vector<std::uint64_t> orbit;
        std::uint64_t cur = s;
        for (int i = 0; i < n; ++i) {
            if (!seen.insert(cur).second) break;
            orbit.push_back(cur);
            cur = rotate(cur, n);
        }
        div.certificates.push_back(certify(k, orbit));
        div.groups.push_back(std::move(orbit));
    }
    return div;
}

GroupDivision random_groups(int k, int times, int maxRestarts, std::uint64_t seed) {
    check_k(k);
    const int n = 2 * k + 1;
    const auto all = k_subsets(k);
    const std::size_t count = all.size() / n;
    std::mt19937_64 rng(seed);
    long attempted = 0;
    for (int restart = 0; restart <= maxRestarts; ++restart) {
        std::vector<std::uint64_t> pool = all;
        GroupDivision div;
        div.k = k;
        div.mode = "random";
        div.restarts = restart;
        int t1 = 0;
        bool failed = false;
        for (std::size_t i = 0; i < count && !failed; ++i) {
            while (true) {
                std::shuffle(pool.begin(), pool.end(), rng);
                std::vector<std::uint64_t> pick(pool.begin(), pool.begin() + n);
                ++attempted;
                auto cert = certify(k, pick);
                if (cert.liftedRank == n + 1) {
                    std::sort(pick.begin(), pick.end());
                    pool.erase(pool.begin(), pool.begin() + n);
                    div.groups.push_back(std::move(pick));
                    div.certificates.push_back(cert);
                    break;
                }
                if (t1 > times) {
                    failed = true;
                    break;
                }
                ++t1;
            }
        }
        if (!failed) return div;
    }
    throw RegimeError("group division for k=" + std::to_string(k) + " failed after " + std::to_string(maxRestarts) +
                      " restarts (" + std::to_string(attempted) + " candidate groups tried)");
}

GroupDivision group_divide(int k, const GroupDivideOptions& opt) {
    check_k(k);
    if (opt.cyclicFirst) {
        auto div = cyclic_groups(k);
        if (div.certified()) return div;
    }
    try {
        return random_groups(k, opt.times, opt.maxRestarts, opt.seed);
    } catch (const RegimeError& e) {
        const auto n = static_cast<std::uint64_t>(2 * k + 1);
        std::string why = e.what();
        if (!prime_power_or_semiprime(n))
            why += "; 2r-1 = " + std::to_string(n) + " is not of the form p^v or pq";
        throw RegimeError(why);
    }
}

GroupDivision group_divide(int k, int maxRestarts, std::uint64_t seed) {
    GroupDivideOptions opt;
    opt.maxRestarts = maxRestarts;
    opt.seed = seed;
    return group_divide(k, opt);
}

bool certify_circulant(int k, const std::vector<int>& firstRow) {
    if (k < 1) throw ParameterError("certify_circulant: k must be positive");
    const int n = 2 * k + 1;
    if (static_cast<int>(firstRow.size()) != n) throw ParameterError("certify_circulant: first row must have 2k+1 entries");
    int ones = 0;
    for (int x : firstRow) {
        if (x != 0 && x != 1) throw ParameterError("certify_circulant: entries must be 0 or 1");
        ones += x;
    }
    if (ones != k) throw ParameterError("certify_circulant: first row must contain exactly k ones");
    std::vector<std::vector<long>> rows(n, std::vector<long>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) rows[i][j] = firstRow[((j - i) % n + n) % n];
    return exact_rank(rows) == n;
}

bool prime_power_or_semiprime(std::uint64_t n) {
    if (n < 2) return false;
    std::vector<std::pair<std::uint64_t, int>> fac;
    for (std::uint64_t p = 2; p * p <= n; ++p) {
        int e = 0;
        while (n % p == 0) {
            n /= p;
            ++e;
        }
        if (e) fac.push_back({p, e});
    }
    if (n > 1) fac.push_back({n, 1});
    if (fac.size() == 1) return true;
    return fac.size() == 2 && fac[0].second == 1 && fac[1].second == 1;
}

std::string CodingMatrix::to_json() const {
    json j;
    j["relays"] = relays.ids1();
    json cols = json::array();
    for (auto [a, b] : pairs) cols.push_back(std::vector<int>{a + 1, b + 1});
    j["columns"] = cols;
    json ss = json::array();
    for (const auto& v : s) ss.push_back(to_string(v));
    j["s"] = ss;
    json rows = json::array();
    for (int i = 0; i < A.rows(); ++i) {
        json row = json::array();
        for (int c = 0; c < A.cols(); ++c) row.push_back(to_string(A(i, c)));
        rows.push_back(row);
    }
    j["A"] = rows;
    return j.dump();
}

UserSet users_inside(const Topology& topo, RelaySet B) { return topo.users_within(B); }

std::vector<UserPair> pairs_inside(const Topology& topo, RelaySet B) {
    std::vector<UserPair> out;
    for (int k : users_inside(topo, B).elements()) {
        const int other = topo.user_with(B.minus(topo.relays_of(k)));
        if (other > k) out.push_back({k, other});
    }
    return out;
}

CodingMatrix solve_coding_matrix(const Topology& topo, const std::vector<UserPair>& group,
                                 const std::optional<Rational>& s, RelaySet B) {
    const int r = topo.r();
    if (B.empty()) {
        if (topo.H() != 2 * r) throw ParameterError("solve_coding_matrix: H must equal 2r when no relay subset is given");
        B = topo.all_relays();
    }
    if (B.size() != 2 * r) throw ParameterError("solve_coding_matrix: relay subset must have 2r relays");
    if (static_cast<int>(group.size()) != 2 * r - 1) throw ParameterError("solve_coding_matrix: group must hold 2r-1 pairs");
    if (s && sgn(*s) == 0) throw ParameterError("solve_coding_matrix: s must be nonzero");
    const auto rel = B.elements();
    const int n = 2 * r;
    const int top = rel.back();

    CodingMatrix cm;
    cm.relays = B;
    for (auto [a, b] : group) {
        const RelaySet ra = topo.relays_of(a), rb = topo.relays_of(b);
        if (!ra.subset_of(B) || !rb.subset_of(B) || ra.intersects(rb))
            throw ParameterError("solve_coding_matrix: pair is not complementary inside the relay subset");
        cm.pairs.push_back({std::min(a, b), std::max(a, b)});
    }
    auto indicator = [&](RelaySet rs) {
        std::vector<Rational> row(n, 0);
        for (int i = 0; i < n; ++i)
            if (rs.contains(rel[i])) row[i] = 1;
        return row;
    };
    auto upper = [&](const UserPair& pr) {
        return topo.relays_of(pr.first).contains(top) ? topo.relays_of(pr.first) : topo.relays_of(pr.second);
    };

    cm.A = RationalMatrix(n, static_cast<int>(group.size()), Rational(0));
    for (std::size_t j = 0; j < cm.pairs.size(); ++j) {
        RationalMatrix C(n, n, Rational(0));
        std::vector<Rational> rhs(n, 0);
        int row = 0;
        for (int i = 0; i < n; ++i) C(row, i) = 1;
        ++row;
        for (std::size_t o = 0; o < cm.pairs.size(); ++o) {
            if (o == j) continue;
            auto ind = indicator(upper(cm.pairs[o]));
            for (int i = 0; i < n; ++i) C(row, i) = ind[i];
            ++row;
        }
        auto ind = indicator(topo.relays_of(cm.pairs[j].first));
        for (int i = 0; i < n; ++i) C(row, i) = ind[i];
        rhs[row] = s ? *s : Rational(1);

        std::vector<Rational> col;
        try {
            col = solve(C, rhs);
        } catch (const RankDeficiencyError& e) {
            throw RankDeficiencyError("coding system for pair {" + std::to_string(cm.pairs[j].first + 1) + "," +
                                          std::to_string(cm.pairs[j].second + 1) + "} is singular",
                                      e.rank(), e.expected());
        }
        if (!s) {
            BigInt L = 1, g = 0;
            for (const auto& v : col) L = lcm(L, v.get_den());
            for (auto& v : col) {
                v *= L;
                mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_num_mpz_t());
            }
            int sign = 1;
            for (const auto& v : col)
                if (sgn(v) != 0) {
                    sign = sgn(v);
                    break;
                }
            for (auto& v : col) v = v * sign / g;
        }
        Rational target = 0;
        for (int i = 0; i < n; ++i) {
            cm.A(i, static_cast<int>(j)) = col[i];
            if (ind[i] != 0) target += col[i];
        }
        cm.s.push_back(target);
    }
    return cm;
}

bool zero_forcing_holds(const Topology& topo, const CodingMatrix& cm) {
    const auto rel = cm.relays.elements();
    UserSet members;
    for (auto [a, b] : cm.pairs) {
        members.insert(a);
        members.insert(b);
    }
    for (std::size_t j = 0; j < cm.pairs.size(); ++j) {
        if (sgn(cm.s[j]) == 0) return false;
        for (int k : members.elements()) {
            Rational sum = 0;
            for (std::size_t i = 0; i < rel.size(); ++i)
                if (topo.relays_of(k).contains(rel[i])) sum += cm.A(static_cast<int>(i), static_cast<int>(j));
            Rational want = 0;
            if (k == cm.pairs[j].first) want = cm.s[j];
            if (k == cm.pairs[j].second) want = -cm.s[j];
            if (sum != want) return false;
        }
        Rational total = 0;
        for (std::size_t i = 0; i < rel.size(); ++i) total += cm.A(static_cast<int>(i), static_cast<int>(j));
        if (total != 0) return false;
    }
    return true;
}

std::vector<CodingMatrix> elimination_matrices(const Topology& topo, const GroupDivision& div,
                                               const std::optional<Rational>& s) {
    const int r = topo.r();
    if (topo.H() < 2 * r) throw RegimeError("interference elimination needs H >= 2r");
    if (div.k != r - 1) throw ParameterError("group division was built for a different r");
    std::vector<CodingMatrix> out;
    for (auto bbits : lex_subsets(topo.H(), 2 * r)) {
        RelaySet B(bbits);
        const auto rel = B.elements();
        for (const auto& grp : div.groups) {
            std::vector<UserPair> pairs;
            for (auto sub : grp) {
                RelaySet hi;
                hi.insert(rel.back());
                for (int i = 0; i < 2 * r - 1; ++i)
                    if ((sub >> i) & 1u) hi.insert(rel[i]);
                const int a = topo.user_with(hi);
                const int b = topo.user_with(B.minus(hi));
                pairs.push_back({std::min(a, b), std::max(a, b)});
            }
            std::sort(pairs.begin(), pairs.end());
            out.push_back(solve_coding_matrix(topo, pairs, s, B));
        }
    }
    return out;
}

std::vector<CodingMatrix> elimination_matrices(const Topology& topo, const ElimOptions& opt) {
    if (topo.H() < 2 * topo.r()) throw RegimeError("interference elimination needs H >= 2r");
    GroupDivideOptions g;
    g.cyclicFirst = opt.cyclicFirst;
    g.maxRestarts = opt.maxRestarts;
    g.seed = opt.seed;
    return elimination_matrices(topo, group_divide(topo.r() - 1, g), opt.s);
}

DeliveryPlan plan_elimination(const Topology& topo, const PlacementSpec& p, const DemandVector& d,
                              const ElimOptions& opt) {
    if (p.t() != 1) throw RegimeError("interference elimination is defined for t = 1 (M = N/K)");
    if (p.N() < topo.K()) throw RegimeError("interference elimination assumes N >= K");
    DeliveryPlan plan = plan_general(topo, p, d);
    plan.scheme = "elim";
    if (topo.H() < 2 * topo.r()) {
        plan.notices.push_back("H < 2r: V_1 is empty, Steps 1-2 deliver everything");
        return plan;
    }
    // Keep Step 2, replace the Vandermonde blocks.
    BigInt S = 1;
    for (auto& items : plan.relay) {
        std::erase_if(items, [](const PlanItem& it) { return it.kind == PlanItem::Kind::Combo; });
        for (const auto& it : items) S = lcm(S, BigInt(it.parts));
    }
    plan.symbols = S.get_ui();
    plan.minField = 2;

    const Rational len = Rational(1) / topo.K();
    const auto mats = elimination_matrices(topo, opt);
    BigInt widest = 1;
    int g = 0;
    RelaySet lastB;
    for (const auto& cm : mats) {
        if (cm.relays != lastB) {
            g = 0;
            lastB = cm.relays;
        }
        ++g;
        const std::string tag = "B=" + cm.relays.str() + ";g=" + std::to_string(g);
        const auto rel = cm.relays.elements();
        std::vector<UserSet> J;
        for (auto [a, b] : cm.pairs) J.push_back(UserSet::of({a, b}));
        for (int c = 0; c < cm.A.cols(); ++c) {
            BigInt L = cm.s[c].get_den();
            for (int i = 0; i < cm.A.rows(); ++i) L = lcm(L, cm.A(i, c).get_den());
            widest = std::max(widest, BigInt(abs(Rational(cm.s[c] * L).get_num())));
            for (int i = 0; i < cm.A.rows(); ++i)
                widest = std::max(widest, BigInt(abs(Rational(cm.A(i, c) * L).get_num())));
            plan.units.push_back(cm.s[c]);
        }
        for (std::size_t i = 0; i < rel.size(); ++i) {
            PlanItem it;
            it.kind = PlanItem::Kind::Elim;
            it.J = J;
            for (int c = 0; c < cm.A.cols(); ++c) it.coeffs.push_back(cm.A(static_cast<int>(i), c));
            it.len = len;
            it.tag = tag;
            plan.relay[rel[i]].push_back(std::move(it));
        }
    }
    plan.minField = widest.get_ui() + 1;
    plan.route(topo);
    return plan;
}

Rational load_thm6(const Topology& topo) {
    const int H = topo.H(), r = topo.r();
    if (H < 2 * r) throw ParameterError("closed-form elimination load needs H >= 2r");
    const BigInt K = topo.K();
    Rational step2 = Rational(K - 1 - binom(H - r, r)) / (2 * H);
    Rational v1 = Rational(binom(2 * r - 1, r - 1) * binom(H - 1, 2 * r - 1)) / Rational((2 * r - 1) * K);
    return step2 + v1;
}

} // namespace combnet
