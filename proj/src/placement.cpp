#include "combnet/placement.hpp"

#include "combnet/errors.hpp"
#include "combnet/topology.hpp"

namespace combnet {

Rational SubfileMass::at(UserSet W) const {
    auto it = x.find(W.bits());
    return it == x.end() ? Rational(0) : it->second;
}

Rational SubfileMass::total() const {
    Rational s = 0;
    for (const auto& [w, v] : x) s += v;
    return s;
}

Rational SubfileMass::memory_of(int user) const {
    Rational s = 0;
    for (const auto& [w, v] : x)
        if ((w >> user) & 1u) s += v;
    return s;
}

bool SubfileMass::feasible(const Rational& memoryFraction) const {
    for (const auto& [w, v] : x)
        if (v < 0) return false;
    if (total() != 1) return false;
    for (int i = 0; i < K; ++i)
        if (memory_of(i) > memoryFraction) return false;
    return true;
}

PlacementSpec::PlacementSpec(int N, int K, int t) : N_(N), K_(K), t_(t) {
    if (N < 1) throw ParameterError("N must be positive");
    if (K < 1 || K > 64) throw ParameterError("K must lie in [1, 64]");
    if (t < 0 || t > K) throw ParameterError("t must lie in [0, K]");
    binom_u64(K, t);
    for (auto bits : lex_subsets(K, t)) {
        index_[bits] = static_cast<int>(subsets_.size());
        subsets_.emplace_back(bits);
    }
}

int PlacementSpec::subfile_index(UserSet W) const {
    auto it = index_.find(W.bits());
    return it == index_.end() ? -1 : it->second;
}

Rational PlacementSpec::stored_fraction(int user) const {
    int held = 0;
    for (auto W : subsets_)
        if (W.contains(user)) ++held;
    return frac(held, subfile_count());
}

SubfileMass mass_of(const PlacementSpec& p) {
    SubfileMass m;
    m.K = p.K();
    Rational share(1, p.subfile_count());
    for (auto W : p.subsets()) m.x[W.bits()] = share;
    return m;
}

} // namespace combnet
