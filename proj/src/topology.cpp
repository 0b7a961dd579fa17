#include "combnet/topology.hpp"

#include <algorithm>

#include <json.hpp>

#include "combnet/errors.hpp"
#include "combnet/exactmath.hpp"

namespace combnet {

namespace {

void lex_rec(int n, int k, int start, std::uint64_t cur, std::vector<std::uint64_t>& out) {
    if (k == 0) {
        out.push_back(cur);
        return;
    }
    for (int i = start; i <= n - k; ++i) lex_rec(n, k - 1, i + 1, cur | (std::uint64_t{1} << i), out);
}

} // namespace

std::vector<std::uint64_t> lex_subsets(int n, int k) {
    std::vector<std::uint64_t> out;
    if (k < 0 || k > n) return out;
    lex_rec(n, k, 0, 0, out);
    return out;
}

Topology::Topology(int H, int r) : H_(H), r_(r) {
    if (H < 1 || H > 63) throw ParameterError("H must lie in [1, 63]");
    if (r < 1 || r > H) throw ParameterError("r must lie in [1, H]");
    if (binom(H, r) > 64) throw ParameterError("C(H,r) exceeds the 64-user limit");
    for (auto bits : lex_subsets(H, r)) {
        index_[bits] = static_cast<int>(userRelays_.size());
        userRelays_.emplace_back(bits);
    }
    K_ = static_cast<int>(userRelays_.size());
    relayUsers_.assign(H, UserSet{});
    for (int k = 0; k < K_; ++k) userRelays_[k].for_each([&](int h) { relayUsers_[h].insert(k); });
}

int Topology::user_with(RelaySet relays) const {
    auto it = index_.find(relays.bits());
    return it == index_.end() ? -1 : it->second;
}

UserSet Topology::users_within(RelaySet J) const {
    UserSet out;
    for (int k = 0; k < K_; ++k)
        if (userRelays_[k].subset_of(J)) out.insert(k);
    return out;
}

RelaySet Topology::relays_common(UserSet J) const {
    RelaySet out = all_relays();
    J.for_each([&](int k) { out &= userRelays_[k]; });
    return out;
}

std::vector<UserPair> Topology::complement_pairs() const {
    std::vector<UserPair> out;
    for (int a = 0; a < K_; ++a)
        for (int b = a + 1; b < K_; ++b)
            if (!userRelays_[a].intersects(userRelays_[b])) out.emplace_back(a, b);
    return out;
}

std::string Topology::to_json() const {
    nlohmann::json j;
    j["H"] = H_;
    j["r"] = r_;
    j["K"] = K_;
    j["users"] = nlohmann::json::array();
    for (int k = 0; k < K_; ++k) j["users"].push_back({{"id", k + 1}, {"relays", userRelays_[k].ids1()}});
    return j.dump();
}

} // namespace combnet
