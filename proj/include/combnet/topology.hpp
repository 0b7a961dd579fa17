#pragma once

#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "combnet/bitset.hpp"

namespace combnet {

using UserPair = std::pair<int, int>;

/// Combination network: H relays, one user per r-subset of relays.
/// Users are numbered by lexicographic order of their relay subsets.
class Topology {
public:
    Topology(int H, int r);

    int H() const { return H_; }
    int r() const { return r_; }
    int K() const { return K_; }

    RelaySet relays_of(int user) const { return userRelays_.at(user); }
    UserSet users_of(int relay) const { return relayUsers_.at(relay); }
    const std::vector<RelaySet>& user_relay_sets() const { return userRelays_; }
    const std::vector<UserSet>& relay_user_sets() const { return relayUsers_; }
    UserSet all_users() const { return UserSet::range(K_); }
    RelaySet all_relays() const { return RelaySet::range(H_); }

    /// The user attached to exactly the relays in `relays`, or -1.
    int user_with(RelaySet relays) const;

    /// Users whose whole neighbourhood lies inside J.
    UserSet users_within(RelaySet J) const;
    /// Relays connected to every user of J (all relays for empty J).
    RelaySet relays_common(UserSet J) const;
    /// Unordered pairs of users with disjoint neighbourhoods, each as (smaller, larger), sorted.
    std::vector<UserPair> complement_pairs() const;

    std::string to_json() const;

private:
    int H_;
    int r_;
    int K_;
    std::vector<RelaySet> userRelays_;
    std::vector<UserSet> relayUsers_;
    std::unordered_map<std::uint64_t, int> index_;
};

inline Topology build_topology(int H, int r) { return Topology(H, r); }

/// All size-k subsets of {0..n-1} in lexicographic order of their sorted element lists.
std::vector<std::uint64_t> lex_subsets(int n, int k);

} // namespace combnet
