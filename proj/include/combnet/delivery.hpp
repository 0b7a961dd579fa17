#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "combnet/bitset.hpp"
#include "combnet/exactmath.hpp"
#include "combnet/indexgraph.hpp"
#include "combnet/placement.hpp"
#include "combnet/topology.hpp"

namespace combnet {

/// One server-to-relay transmission.
///  Piece: segment `part` of `parts` equal segments of W_J.
///  Combo: block `part` of a Vandermonde code over W_J shared by `parts` relays.
///  Elim:  sum_j coeffs[j] W_{J[j]} for one elimination group.
struct PlanItem {
    enum class Kind { Piece, Combo, Elim };
    Kind kind = Kind::Piece;
    std::vector<UserSet> J;
    std::vector<Rational> coeffs;
    int part = 0;
    int parts = 1;
    /// Normalised by the file size B.
    Rational len = 0;
    std::string tag;

    bool useful_to(int user) const;
};

const char* kind_str(PlanItem::Kind k);

struct DeliveryPlan {
    std::string scheme;
    int H = 0;
    int r = 0;
    int K = 0;
    int t = 0;
    DemandVector d;
    /// relay[h] = items the server sends to relay h.
    std::vector<std::vector<PlanItem>> relay;
    /// (h, k) -> indices into relay[h] forwarded to user k.
    std::map<std::pair<int, int>, std::vector<int>> forward;
    /// Symbols per subfile used when materialising payloads.
    std::uint64_t symbols = 1;
    std::uint64_t minField = 2;
    /// Values that must be units of the simulation field (denominators, elimination targets).
    std::vector<Rational> units;
    std::vector<std::string> notices;

    std::vector<Rational> server_loads() const;
    Rational server_load(int h) const;
    Rational relay_user_load(int h, int k) const;
    /// Largest per-relay load restricted to one item kind family: {Piece} or {Combo, Elim}.
    Rational step2_load() const;
    Rational v1_load() const;
    /// Smallest prime >= minField for which every entry of `units` is invertible.
    std::uint64_t choose_field() const;
    bool field_supports(std::uint64_t p) const;
    std::string to_json() const;

    /// Rebuilds `forward` from `relay` (every useful item goes to every connected user that wants it).
    void route(const Topology& topo);
};

/// The (t+1)-subsets of users with no common relay.
std::vector<UserSet> v1_sets(const Topology& topo, int t);

/// Relays connected to every user of J.
inline RelaySet common_relays(const Topology& topo, UserSet J) { return topo.relays_common(J); }

/// Steps 1-3: coded multicast messages, split over common relays, Vandermonde blocks for V_1.
DeliveryPlan plan_general(const Topology& topo, const PlacementSpec& p, const DemandVector& d);

Rational max_link_load(const DeliveryPlan& plan);

struct DecodeFailure {
    UserSet J;
    int user = 0;
    int rank = 0;
    int expected = 0;
    std::string reason;

    std::string str() const;
};

struct UserVerdict {
    int user = 0;
    bool recovered = false;
    std::vector<DecodeFailure> failures;
};

struct DecodeReport {
    std::uint64_t field = 0;
    std::uint64_t seed = 0;
    std::vector<UserVerdict> users;

    bool all_ok() const;
    std::vector<DecodeFailure> failures() const;
    std::string to_json() const;
};

/// Materialises the demanded files over GF(field) from `seed`, runs the plan, and decodes every user.
/// field == 0 picks plan.choose_field().
DecodeReport simulate_decode(const Topology& topo, const PlacementSpec& p, const DemandVector& d,
                             const DeliveryPlan& plan, std::uint64_t field = 0, std::uint64_t seed = 1);

} // namespace combnet
