#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "combnet/bitset.hpp"
#include "combnet/placement.hpp"

namespace combnet {

/// d[k] = file requested by user k (0-based files).
struct DemandVector {
    std::vector<int> d;

    int K() const { return static_cast<int>(d.size()); }
    bool distinct() const;
    static DemandVector identity(int K);
};

/// A requested subfile, keyed by its requester so repeated demands stay distinct.
struct SubfileVertex {
    int requester;
    UserSet W;
    auto operator<=>(const SubfileVertex&) const = default;
};

/// Side-information digraph: u -> v iff the requester of v caches the subfile u.
class SideInfoGraph {
public:
    SideInfoGraph(int K, std::vector<SubfileVertex> vertices);

    int K() const { return K_; }
    const std::vector<SubfileVertex>& vertices() const { return vertices_; }
    const std::vector<std::vector<int>>& adjacency() const { return adj_; }
    std::size_t edge_count() const;
    /// -1 when absent.
    int index_of(const SubfileVertex& v) const;
    std::string to_dot(const DemandVector& d) const;

private:
    int K_;
    std::vector<SubfileVertex> vertices_;
    std::vector<std::vector<int>> adj_;
    std::map<SubfileVertex, int> index_;
};

/// Graph over the subfiles that actually exist under placement p: F_{d_k,W} with |W| = t, k not in W.
SideInfoGraph build_graph(const PlacementSpec& p, const DemandVector& d);
/// Graph over every F_{d_k,W}, W a subset of [K] \ {k}, as for an arbitrary uncoded placement.
SideInfoGraph build_full_graph(int K, const DemandVector& d);

/// Union over i of { F_{d_{v_i},W} : W subset of S' \ {v_1..v_i} }.
std::vector<SubfileVertex> acyclic_set_f(const DemandVector& d, UserSet Sprime, const std::vector<int>& v);
/// The subsequence of p made of elements of S.
std::vector<int> restrict_perm_g(UserSet S, const std::vector<int>& p);
/// True iff the subgraph induced by S has no directed cycle. Vertices missing from g are ignored.
bool is_acyclic(const SideInfoGraph& g, const std::vector<SubfileVertex>& S);

} // namespace combnet
