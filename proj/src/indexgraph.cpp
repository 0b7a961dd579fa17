#include "combnet/indexgraph.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "combnet/errors.hpp"

namespace combnet {

bool DemandVector::distinct() const {
    std::set<int> seen(d.begin(), d.end());
    return seen.size() == d.size();
}

DemandVector DemandVector::identity(int K) {
    DemandVector v;
    for (int k = 0; k < K; ++k) v.d.push_back(k);
    return v;
}

SideInfoGraph::SideInfoGraph(int K, std::vector<SubfileVertex> vertices)
    : K_(K), vertices_(std::move(vertices)), adj_(vertices_.size()) {
    for (std::size_t i = 0; i < vertices_.size(); ++i) index_[vertices_[i]] = static_cast<int>(i);
    for (std::size_t u = 0; u < vertices_.size(); ++u)
        for (std::size_t v = 0; v < vertices_.size(); ++v)
            if (u != v && vertices_[u].W.contains(vertices_[v].requester)) adj_[u].push_back(static_cast<int>(v));
}

std::size_t SideInfoGraph::edge_count() const {
    std::size_t e = 0;
    for (const auto& a : adj_) e += a.size();
    return e;
}

int SideInfoGraph::index_of(const SubfileVertex& v) const {
    auto it = index_.find(v);
    return it == index_.end() ? -1 : it->second;
}

std::string SideInfoGraph::to_dot(const DemandVector& d) const {
    std::ostringstream os;
    os << "digraph side_info {\n";
    for (std::size_t i = 0; i < vertices_.size(); ++i) {
        const auto& v = vertices_[i];
        os << "  n" << i << " [label=\"F" << d.d.at(v.requester) + 1 << "," << v.W.str() << " (u"
           << v.requester + 1 << ")\"];\n";
    }
    for (std::size_t u = 0; u < adj_.size(); ++u)
        for (int v : adj_[u]) os << "  n" << u << " -> n" << v << ";\n";
    os << "}\n";
    return os.str();
}

SideInfoGraph build_graph(const PlacementSpec& p, const DemandVector& d) {
    if (d.K() != p.K()) throw ParameterError("demand vector length differs from K");
    std::vector<SubfileVertex> vs;
    for (int k = 0; k < p.K(); ++k)
        for (auto W : p.subsets())
            if (!W.contains(k)) vs.push_back({k, W});
    return SideInfoGraph(p.K(), std::move(vs));
}

SideInfoGraph build_full_graph(int K, const DemandVector& d) {
    if (d.K() != K) throw ParameterError("demand vector length differs from K");
    if (K > 16) throw ParameterError("full side-information graph limited to K <= 16");
    std::vector<SubfileVertex> vs;
    for (int k = 0; k < K; ++k) {
        auto others = UserSet::range(K);
        others.erase(k);
        std::vector<std::uint64_t> subs;
        for_each_subset_of(others.bits(), [&](std::uint64_t w) { subs.push_back(w); });
        std::sort(subs.begin(), subs.end());
        for (auto w : subs) vs.push_back({k, UserSet(w)});
    }
    return SideInfoGraph(K, std::move(vs));
}

std::vector<SubfileVertex> acyclic_set_f(const DemandVector& d, UserSet Sprime, const std::vector<int>& v) {
    std::vector<SubfileVertex> out;
    UserSet removed;
    for (int vi : v) {
        if (!Sprime.contains(vi)) throw ParameterError("acyclic_set_f: sequence element outside S'");
        if (removed.contains(vi)) throw ParameterError("acyclic_set_f: repeated sequence element");
        if (vi >= d.K()) throw ParameterError("acyclic_set_f: user outside the demand vector");
        removed.insert(vi);
        auto allowed = Sprime.minus(removed);
        std::vector<std::uint64_t> subs;
        for_each_subset_of(allowed.bits(), [&](std::uint64_t w) { subs.push_back(w); });
        std::sort(subs.begin(), subs.end());
        for (auto w : subs) out.push_back({vi, UserSet(w)});
    }
    return out;
}

std::vector<int> restrict_perm_g(UserSet S, const std::vector<int>& p) {
    std::vector<int> out;
    for (int x : p)
        if (S.contains(x)) out.push_back(x);
    return out;
}

bool is_acyclic(const SideInfoGraph& g, const std::vector<SubfileVertex>& S) {
    std::vector<int> ids;
    std::vector<char> inside(g.vertices().size(), 0);
    for (const auto& v : S) {
        int id = g.index_of(v);
        if (id >= 0 && !inside[id]) {
            inside[id] = 1;
            ids.push_back(id);
        }
    }
    // Kahn's algorithm on the induced subgraph.
    std::vector<int> indeg(g.vertices().size(), 0);
    for (int u : ids)
        for (int v : g.adjacency()[u])
            if (inside[v]) ++indeg[v];
    std::vector<int> stack;
    for (int u : ids)
        if (indeg[u] == 0) stack.push_back(u);
    std::size_t seen = 0;
    while (!stack.empty()) {
        int u = stack.back();
        stack.pop_back();
        ++seen;
        for (int v : g.adjacency()[u])
            if (inside[v] && --indeg[v] == 0) stack.push_back(v);
    }
    return seen == ids.size();
}

} // namespace combnet
