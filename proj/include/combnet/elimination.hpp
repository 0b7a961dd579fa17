#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "combnet/delivery.hpp"
#include "combnet/exactmath.hpp"
#include "combnet/topology.hpp"

namespace combnet {

struct GroupCertificate {
    /// Rank of the lifted (2k+2)x(2k+2) matrix: all-ones row plus one row per subset with 2k+2 appended.
    int liftedRank = 0;
    /// Rank of the (2k+1)x(2k+1) incidence matrix of the bare k-subsets.
    int incidenceRank = 0;
};

/// Partition of the k-subsets of {0..2k} into groups of 2k+1 whose lifted matrices are full rank.
/// Subset bit i stands for local relay i+1; local relay 2k+2 is implicit in every subset.
struct GroupDivision {
    int k = 0;
    std::string mode;
    std::vector<std::vector<std::uint64_t>> groups;
    std::vector<GroupCertificate> certificates;
    /// Full restarts used by the randomized search (0 for the cyclic construction).
    int restarts = 0;

    bool certified() const;
    std::string to_json() const;
};

struct GroupDivideOptions {
    bool cyclicFirst = true;
    /// Retries per run before a full restart.
    int times = 10;
    int maxRestarts = 1000;
    std::uint64_t seed = 1;
};

/// Cyclic orbits first; randomized search when some orbit fails. Throws RegimeError when both fail.
GroupDivision group_divide(int k, const GroupDivideOptions& opt = {});
GroupDivision group_divide(int k, int maxRestarts, std::uint64_t seed);
/// Rotation orbits of the k-subsets of Z_{2k+1}; certificates filled in, never throws on rank.
GroupDivision cyclic_groups(int k);
/// Randomized search only.
GroupDivision random_groups(int k, int times, int maxRestarts, std::uint64_t seed);

RationalMatrix incidence_matrix(int k, const std::vector<std::uint64_t>& group);
RationalMatrix lifted_matrix(int k, const std::vector<std::uint64_t>& group);

/// Exact rank of a small integer matrix (modular first, rational when the modular rank is short).
int exact_rank(const std::vector<std::vector<long>>& rows);

/// Invertibility of the (2k+1)x(2k+1) circulant whose row i is firstRow shifted right by i.
bool certify_circulant(int k, const std::vector<int>& firstRow);
/// n = p^v or n = p*q for distinct primes p, q.
bool prime_power_or_semiprime(std::uint64_t n);

struct CodingMatrix {
    /// The 2r relays carrying this group, ascending.
    RelaySet relays;
    /// Column order; each pair is (lower user, higher user).
    std::vector<UserPair> pairs;
    /// One row per relay of `relays`, one column per pair.
    RationalMatrix A;
    /// Column j sums to s[j] over the lower user's relays and to -s[j] over the other's.
    std::vector<Rational> s;

    std::string to_json() const;
};

/// Solves the per-column system over the relays of B (all relays when B is empty, requiring H = 2r).
/// `s` fixes the target sum for every column; otherwise each column is the smallest integral solution
/// whose first nonzero entry is positive.
CodingMatrix solve_coding_matrix(const Topology& topo, const std::vector<UserPair>& group,
                                 const std::optional<Rational>& s = std::nullopt, RelaySet B = RelaySet());

/// Every member of the group's pairs sums column j to zero unless it belongs to pair j, where it sees +-s[j].
/// Users of other groups never combine this group's codewords.
bool zero_forcing_holds(const Topology& topo, const CodingMatrix& cm);

struct ElimOptions {
    std::optional<Rational> s;
    std::uint64_t seed = 1;
    int maxRestarts = 1000;
    bool cyclicFirst = true;
};

/// Users whose relays lie inside B.
UserSet users_inside(const Topology& topo, RelaySet B);
/// Complementary pairs inside B, ordered by their lower user.
std::vector<UserPair> pairs_inside(const Topology& topo, RelaySet B);

/// Coding matrices of every group for every 2r-subset B, B in lexicographic order.
std::vector<CodingMatrix> elimination_matrices(const Topology& topo, const ElimOptions& opt = {});
std::vector<CodingMatrix> elimination_matrices(const Topology& topo, const GroupDivision& div,
                                               const std::optional<Rational>& s);

/// Steps 1-2 of the general scheme plus interference elimination for V_1 (t = 1, H >= 2r).
DeliveryPlan plan_elimination(const Topology& topo, const PlacementSpec& p, const DemandVector& d,
                              const ElimOptions& opt = {});

/// Closed-form max link-load of the elimination scheme at M = N/K.
Rational load_thm6(const Topology& topo);

} // namespace combnet
