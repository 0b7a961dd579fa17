#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "combnet/bitset.hpp"
#include "combnet/exactmath.hpp"

namespace combnet {

/// Normalised subfile masses x_W keyed by the bitmask of W (absent keys are zero).
struct SubfileMass {
    int K = 0;
    std::map<std::uint64_t, Rational> x;

    Rational at(UserSet W) const;
    Rational total() const;
    /// Sum of x_W over W containing `user`.
    Rational memory_of(int user) const;
    /// Nonnegative, sums to one, and every user stores at most `memoryFraction`.
    bool feasible(const Rational& memoryFraction) const;
};

/// Uncoded symmetric placement: every file split into C(K,t) subfiles F_{i,W}, |W| = t,
/// and user j stores F_{i,W} for all i whenever j is in W.
class PlacementSpec {
public:
    PlacementSpec(int N, int K, int t);

    int N() const { return N_; }
    int K() const { return K_; }
    int t() const { return t_; }
    Rational M() const { return frac(static_cast<long>(t_) * N_, K_); }
    /// Subfiles per file.
    int subfile_count() const { return static_cast<int>(subsets_.size()); }
    /// Subfile labels W in lexicographic order.
    const std::vector<UserSet>& subsets() const { return subsets_; }
    int subfile_index(UserSet W) const;
    bool stores(int user, UserSet W) const { return W.contains(user); }
    /// Fraction of the library held by one user (equals M/N).
    Rational stored_fraction(int user) const;

private:
    int N_;
    int K_;
    int t_;
    std::vector<UserSet> subsets_;
    std::map<std::uint64_t, int> index_;
};

inline PlacementSpec symmetric_placement(int N, int K, int t) { return PlacementSpec(N, K, t); }
SubfileMass mass_of(const PlacementSpec& p);

} // namespace combnet
