#include "combnet/delivery.hpp"

#include <algorithm>
#include <random>
#include <set>

#include <json.hpp>

#include "combnet/errors.hpp"

namespace combnet {

using json = nlohmann::json;

bool PlanItem::useful_to(int user) const {
    for (auto j : J)
        if (j.contains(user)) return true;
    return false;
}

const char* kind_str(PlanItem::Kind k) {
    switch (k) {
    case PlanItem::Kind::Piece: return "piece";
    case PlanItem::Kind::Combo: return "combo";
    case PlanItem::Kind::Elim: return "elim";
    }
    return "?";
}

Rational DeliveryPlan::server_load(int h) const {
    Rational s = 0;
    for (const auto& it : relay.at(h)) s += it.len;
    return s;
}

std::vector<Rational> DeliveryPlan::server_loads() const {
    std::vector<Rational> out;
    for (int h = 0; h < H; ++h) out.push_back(server_load(h));
    return out;
}

Rational DeliveryPlan::relay_user_load(int h, int k) const {
    auto it = forward.find({h, k});
    if (it == forward.end()) return 0;
    Rational s = 0;
    for (int i : it->second) s += relay[h][i].len;
    return s;
}

Rational DeliveryPlan::step2_load() const {
    Rational best = 0;
    for (const auto& items : relay) {
        Rational s = 0;
        for (const auto& it : items)
            if (it.kind == PlanItem::Kind::Piece) s += it.len;
        best = std::max(best, s);
    }
    return best;
}

Rational DeliveryPlan::v1_load() const {
    Rational best = 0;
    for (const auto& items : relay) {
        Rational s = 0;
        for (const auto& it : items)
            if (it.kind != PlanItem::Kind::Piece) s += it.len;
        best = std::max(best, s);
    }
    return best;
}

bool DeliveryPlan::field_supports(std::uint64_t p) const {
    if (p < minField || !is_prime(p)) return false;
    const BigInt P = static_cast<unsigned long>(p);
    for (const auto& q : units) {
        if (q.get_num() % P == 0 || q.get_den() % P == 0) return false;
    }
    for (const auto& items : relay)
        for (const auto& it : items)
            for (const auto& c : it.coeffs)
                if (c.get_den() % P == 0) return false;
    return true;
}

std::uint64_t DeliveryPlan::choose_field() const {
    std::uint64_t p = next_prime(std::max<std::uint64_t>(minField, 2));
    while (!field_supports(p)) p = next_prime(p + 1);
    return p;
}

void DeliveryPlan::route(const Topology& topo) {
    forward.clear();
    for (int h = 0; h < H; ++h)
        for (int k : topo.users_of(h).elements())
            for (std::size_t i = 0; i < relay[h].size(); ++i)
                if (relay[h][i].useful_to(k)) forward[{h, k}].push_back(static_cast<int>(i));
}

std::string DeliveryPlan::to_json() const {
    json j;
    j["scheme"] = scheme;
    j["H"] = H;
    j["r"] = r;
    j["K"] = K;
    j["t"] = t;
    j["load"] = to_string(max_link_load(*this));
    j["step2_load"] = to_string(step2_load());
    j["v1_load"] = to_string(v1_load());
    j["field_min"] = minField;
    j["symbols_per_subfile"] = symbols;
    json relays = json::array();
    for (int h = 0; h < H; ++h) {
        json rj;
        rj["relay"] = h + 1;
        rj["load"] = to_string(server_load(h));
        json items = json::array();
        for (const auto& it : relay[h]) {
            json ij;
            ij["kind"] = kind_str(it.kind);
            if (it.kind == PlanItem::Kind::Elim) {
                json js = json::array(), cs = json::array();
                for (std::size_t m = 0; m < it.J.size(); ++m) {
                    js.push_back(it.J[m].ids1());
                    cs.push_back(to_string(it.coeffs[m]));
                }
                ij["J"] = js;
                ij["coeffs"] = cs;
            } else {
                ij["J"] = it.J.front().ids1();
                ij["part"] = it.part + 1;
                ij["parts"] = it.parts;
            }
            ij["len"] = to_string(it.len);
            if (!it.tag.empty()) ij["tag"] = it.tag;
            items.push_back(ij);
        }
        rj["items"] = items;
        relays.push_back(rj);
    }
    j["relays"] = relays;
    j["notices"] = notices;
    return j.dump(2);
}

std::vector<UserSet> v1_sets(const Topology& topo, int t) {
    std::vector<UserSet> out;
    if (t + 1 > topo.K()) return out;
    for (auto bits : lex_subsets(topo.K(), t + 1)) {
        UserSet J(bits);
        if (topo.relays_common(J).empty()) out.push_back(J);
    }
    return out;
}

Rational max_link_load(const DeliveryPlan& plan) {
    Rational best = 0;
    for (int h = 0; h < plan.H; ++h) best = std::max(best, plan.server_load(h));
    for (const auto& [hk, idx] : plan.forward) best = std::max(best, plan.relay_user_load(hk.first, hk.second));
    return best;
}

namespace {

void check_inputs(const Topology& topo, const PlacementSpec& p, const DemandVector& d) {
    if (p.K() != topo.K()) throw ParameterError("placement K differs from the topology");
    if (d.K() != topo.K()) throw ParameterError("demand vector length differs from K");
    for (int f : d.d)
        if (f < 0 || f >= p.N()) throw ParameterError("demand outside the library");
}

} // namespace

DeliveryPlan plan_general(const Topology& topo, const PlacementSpec& p, const DemandVector& d) {
    check_inputs(topo, p, d);
    DeliveryPlan plan;
    plan.scheme = "general";
    plan.H = topo.H();
    plan.r = topo.r();
    plan.K = topo.K();
    plan.t = p.t();
    plan.d = d;
    plan.relay.assign(topo.H(), {});
    const int t = p.t();
    if (t >= topo.K()) {
        plan.notices.push_back("t = K: every user caches the whole library");
        return plan;
    }
    const Rational msgLen = Rational(1) / Rational(binom(topo.K(), t));

    BigInt S = 1;
    std::vector<UserSet> v1;
    std::uint64_t rowsNeeded = 0;
    for (auto bits : lex_subsets(topo.K(), t + 1)) {
        UserSet J(bits);
        RelaySet R = topo.relays_common(J);
        if (!R.empty()) {
            S = lcm(S, BigInt(R.size()));
            const auto rel = R.elements();
            for (int i = 0; i < R.size(); ++i) {
                PlanItem it;
                it.kind = PlanItem::Kind::Piece;
                it.J = {J};
                it.part = i;
                it.parts = R.size();
                it.len = msgLen / R.size();
                plan.relay[rel[i]].push_back(std::move(it));
            }
        } else {
            v1.push_back(J);
        }
    }
    if (!v1.empty()) S = lcm(S, BigInt(topo.r()));
    plan.symbols = S.get_ui();
    for (auto J : v1) {
        RelaySet touching;
        for (int k : J.elements()) touching |= topo.relays_of(k);
        const auto rel = touching.elements();
        rowsNeeded = std::max<std::uint64_t>(rowsNeeded, rel.size() * plan.symbols / topo.r());
        for (std::size_t i = 0; i < rel.size(); ++i) {
            PlanItem it;
            it.kind = PlanItem::Kind::Combo;
            it.J = {J};
            it.part = static_cast<int>(i);
            it.parts = static_cast<int>(rel.size());
            it.len = msgLen / topo.r();
            plan.relay[rel[i]].push_back(std::move(it));
        }
    }
    // Vandermonde points alpha^e need to stay distinct.
    plan.minField = std::max<std::uint64_t>(2, rowsNeeded + 1);
    plan.route(topo);
    return plan;
}

std::string DecodeFailure::str() const {
    return "J=" + J.str() + " user=" + std::to_string(user + 1) + " rank=" + std::to_string(rank) + "/" +
           std::to_string(expected) + " (" + reason + ")";
}

bool DecodeReport::all_ok() const {
    return std::all_of(users.begin(), users.end(), [](const UserVerdict& v) { return v.recovered; });
}

std::vector<DecodeFailure> DecodeReport::failures() const {
    std::vector<DecodeFailure> out;
    for (const auto& u : users) out.insert(out.end(), u.failures.begin(), u.failures.end());
    return out;
}

std::string DecodeReport::to_json() const {
    json j;
    j["field"] = field;
    j["seed"] = seed;
    j["all_recovered"] = all_ok();
    json us = json::array();
    for (const auto& u : users) {
        json uj;
        uj["user"] = u.user + 1;
        uj["recovered"] = u.recovered;
        json fs = json::array();
        for (const auto& f : u.failures) fs.push_back(f.str());
        uj["failures"] = fs;
        us.push_back(uj);
    }
    j["users"] = us;
    return j.dump(2);
}

namespace {

using Symbols = std::vector<std::uint64_t>;

struct Library {
    const PrimeField& f;
    std::size_t S;
    std::map<std::pair<int, std::uint64_t>, Symbols> sub;

    const Symbols& at(int file, UserSet W) const { return sub.at({file, W.bits()}); }
};

void add_scaled(const PrimeField& f, Symbols& acc, const Symbols& x, std::uint64_t c) {
    for (std::size_t i = 0; i < acc.size(); ++i) acc[i] = f.add(acc[i], f.mul(c, x[i]));
}

Symbols message(const Library& lib, const DemandVector& d, UserSet J) {
    Symbols w(lib.S, 0);
    for (int j : J.elements()) {
        UserSet W = J;
        W.erase(j);
        add_scaled(lib.f, w, lib.at(d.d[j], W), 1);
    }
    return w;
}

/// Payload of one item: `rows` symbols.
Symbols payload(const Library& lib, const DemandVector& d, const PlanItem& it, int r, std::uint64_t alpha) {
    const auto& f = lib.f;
    const std::size_t S = lib.S;
    if (it.kind == PlanItem::Kind::Piece) {
        Symbols w = message(lib, d, it.J.front());
        const std::size_t seg = S / it.parts;
        return Symbols(w.begin() + it.part * seg, w.begin() + (it.part + 1) * seg);
    }
    if (it.kind == PlanItem::Kind::Combo) {
        Symbols w = message(lib, d, it.J.front());
        const std::size_t block = S / r;
        Symbols out;
        for (std::size_t e = it.part * block; e < (it.part + 1) * block; ++e) {
            const auto beta = f.pow(alpha, e);
            std::uint64_t acc = 0, pw = 1;
            for (std::size_t c = 0; c < S; ++c) {
                acc = f.add(acc, f.mul(pw, w[c]));
                pw = f.mul(pw, beta);
            }
            out.push_back(acc);
        }
        return out;
    }
    Symbols acc(S, 0);
    for (std::size_t m = 0; m < it.J.size(); ++m) add_scaled(f, acc, message(lib, d, it.J[m]), f.from_rational(it.coeffs[m]));
    return acc;
}

} // namespace

DecodeReport simulate_decode(const Topology& topo, const PlacementSpec& p, const DemandVector& d,
                             const DeliveryPlan& plan, std::uint64_t field, std::uint64_t seed) {
    check_inputs(topo, p, d);
    if (plan.H != topo.H() || plan.r != topo.r() || plan.t != p.t())
        throw ParameterError("plan was built for different parameters");
    if (field == 0) field = plan.choose_field();
    if (!plan.field_supports(field))
        throw ParameterError("field " + std::to_string(field) + " does not meet the plan minimum " +
                             std::to_string(plan.minField));
    PrimeField f(field);
    const std::uint64_t alpha = primitive_root(field);
    const std::size_t S = plan.symbols;

    Library lib{f, S, {}};
    std::mt19937_64 rng(seed);
    std::set<int> files(d.d.begin(), d.d.end());
    for (int file : files)
        for (auto W : p.subsets()) {
            Symbols s(S);
            for (auto& x : s) x = rng() % field;
            lib.sub[{file, W.bits()}] = std::move(s);
        }

    DecodeReport rep;
    rep.field = field;
    rep.seed = seed;
    for (int k = 0; k < topo.K(); ++k) {
        UserVerdict v;
        v.user = k;
        // What user k hears, grouped by message (pieces, combos) or by elimination tag.
        std::map<std::uint64_t, std::map<int, Symbols>> pieces;
        std::map<std::uint64_t, std::vector<std::pair<std::uint64_t, std::uint64_t>>> combos; // (row e, value)
        std::map<std::string, std::pair<std::map<std::uint64_t, std::uint64_t>, Symbols>> elim;
        std::map<std::uint64_t, int> pieceParts;
        for (int h : topo.relays_of(k).elements()) {
            auto fw = plan.forward.find({h, k});
            if (fw == plan.forward.end()) continue;
            for (int idx : fw->second) {
                const auto& it = plan.relay[h][idx];
                Symbols pl = payload(lib, d, it, topo.r(), alpha);
                const auto key = it.J.front().bits();
                if (it.kind == PlanItem::Kind::Piece) {
                    pieces[key][it.part] = std::move(pl);
                    pieceParts[key] = it.parts;
                } else if (it.kind == PlanItem::Kind::Combo) {
                    const std::size_t block = S / topo.r();
                    for (std::size_t i = 0; i < pl.size(); ++i) combos[key].push_back({it.part * block + i, pl[i]});
                } else {
                    auto& [coef, sum] = elim[it.tag];
                    if (sum.empty()) sum.assign(S, 0);
                    for (std::size_t m = 0; m < it.J.size(); ++m) {
                        auto& c = coef[it.J[m].bits()];
                        c = f.add(c, f.from_rational(it.coeffs[m]));
                    }
                    add_scaled(f, sum, pl, 1);
                }
            }
        }

        std::map<std::uint64_t, Symbols> got;
        for (auto& [key, parts] : pieces) {
            if (static_cast<int>(parts.size()) != pieceParts[key]) continue;
            Symbols w;
            for (auto& [i, seg] : parts) w.insert(w.end(), seg.begin(), seg.end());
            got[key] = std::move(w);
        }
        for (auto& [key, rows] : combos) {
            const int n = static_cast<int>(S);
            FieldMatrix m(static_cast<int>(rows.size()), n, 0);
            for (std::size_t i = 0; i < rows.size(); ++i) {
                const auto beta = f.pow(alpha, rows[i].first);
                std::uint64_t pw = 1;
                for (int c = 0; c < n; ++c) {
                    m(static_cast<int>(i), c) = pw;
                    pw = f.mul(pw, beta);
                }
            }
            const int rk = rank(f, m);
            if (rk < n || static_cast<int>(rows.size()) < n) {
                v.failures.push_back({UserSet(key), k, rk, n, "combination block rank"});
                continue;
            }
            FieldMatrix sq(n, n, 0);
            std::vector<std::uint64_t> y(n);
            for (int i = 0; i < n; ++i) {
                for (int c = 0; c < n; ++c) sq(i, c) = m(i, c);
                y[i] = rows[i].second;
            }
            try {
                got[key] = solve(f, sq, y);
            } catch (const RankDeficiencyError& e) {
                v.failures.push_back({UserSet(key), k, e.rank(), n, "combination block rank"});
            }
        }
        for (auto& [tag, cs] : elim) {
            auto& [coef, sum] = cs;
            std::uint64_t own = 0;
            bool clean = true;
            std::uint64_t ownKey = 0;
            for (auto& [key, c] : coef) {
                if (UserSet(key).contains(k)) {
                    own = c;
                    ownKey = key;
                } else if (c != 0) {
                    clean = false;
                }
            }
            if (own == 0 || !clean) {
                v.failures.push_back({UserSet(ownKey), k, own == 0 ? 0 : 1, 1,
                                      std::string(clean ? "vanishing target coefficient" : "residual interference") +
                                          " in " + tag});
                continue;
            }
            const auto inv = f.inv(own);
            for (auto& x : sum) x = f.mul(x, inv);
            got[ownKey] = std::move(sum);
        }

        // Rebuild F_{d_k}.
        bool ok = true;
        for (auto W : p.subsets()) {
            if (W.contains(k)) continue;
            UserSet J = W;
            J.insert(k);
            auto g = got.find(J.bits());
            if (g == got.end()) {
                ok = false;
                const bool named = std::any_of(v.failures.begin(), v.failures.end(),
                                               [&](const DecodeFailure& x) { return x.J == J; });
                if (!named) {
                    int have = 0;
                    if (auto pc = pieces.find(J.bits()); pc != pieces.end()) have = static_cast<int>(pc->second.size());
                    if (auto cb = combos.find(J.bits()); cb != combos.end()) have = static_cast<int>(cb->second.size());
                    v.failures.push_back({J, k, have, pieceParts.count(J.bits()) ? pieceParts[J.bits()] : static_cast<int>(S),
                                          "missing transmissions"});
                }
                continue;
            }
            Symbols val = g->second;
            for (int j : J.elements()) {
                if (j == k) continue;
                UserSet Wj = J;
                Wj.erase(j);
                add_scaled(f, val, lib.at(d.d[j], Wj), f.neg(1));
            }
            if (val != lib.at(d.d[k], W)) {
                ok = false;
                v.failures.push_back({J, k, 0, 0, "decoded value differs from the source"});
            }
        }
        v.recovered = ok && v.failures.empty();
        rep.users.push_back(std::move(v));
    }
    return rep;
}

} // namespace combnet
