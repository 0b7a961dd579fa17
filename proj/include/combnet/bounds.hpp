#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "combnet/bitset.hpp"
#include "combnet/exactmath.hpp"
#include "combnet/topology.hpp"

namespace combnet {

enum class Sense { GE, LE, EQ };
const char* sense_str(Sense s);

/// One linear row over (R, x_W, y_Q):  coeffR*R + sum coeffX[W] x_W + sum coeffY[Q] y_Q  (sense)  rhs.
struct BoundConstraint {
    std::string thm;
    Rational coeffR = 0;
    std::map<std::uint64_t, Rational> coeffX;
    std::map<std::uint64_t, Rational> coeffY;
    Sense sense = Sense::GE;
    Rational rhs = 0;
    std::string provenance;

    /// Dump line: `<thm> <sense> rhs | R:<q> | x:{W:coeff,...} | y:{Q:coeff,...} | prov:<tuple>`.
    std::string dump() const;
    /// Identity of the row ignoring thm and provenance.
    bool same_row(const BoundConstraint& o) const;
};

/// Generator output: rows plus the y_Q variables they mention.
struct BoundSystem {
    std::string method;
    int H = 0;
    int r = 0;
    int K = 0;
    int b = 0;
    std::vector<RelaySet> yVars;
    std::vector<BoundConstraint> rows;
    /// True when permutations were sampled rather than enumerated; the bound stays valid but may be looser.
    bool sampled = false;
    std::size_t generated = 0;

    std::string dump() const;
};

struct BoundOptions {
    /// 0 enumerates every permutation; otherwise at most this many per family, drawn with `seed`.
    std::size_t permSample = 0;
    std::uint64_t seed = 1;
    /// Families with more permutations than this are sampled automatically (permSample rows each).
    std::size_t exhaustiveLimit = 1000000;
};

/// Upper envelope over x in [r:H] of the piecewise-linear cut-set curves, evaluated at M.
Rational cutset_bound(const Topology& t, int N, const Rational& M);
/// Breakpoints (M, R) of the cut-set curve for one x.
std::vector<std::pair<Rational, Rational>> cutset_points(const Topology& t, int N, int x);

/// c(W1, l) = max{ C(H-1, l-1) - #{Q : |Q| = l, K_Q meets W1}, 0 }.
BigInt coeff_c(const Topology& t, UserSet W1, int l);

BoundSystem gen_thm1(const Topology& t, int N, const BoundOptions& opt = {});
BoundSystem gen_thm2(const Topology& t, int N, const BoundOptions& opt = {});
BoundSystem gen_thm3(const Topology& t, int N, int b, const BoundOptions& opt = {});
BoundSystem gen_thm4(const Topology& t, int N, int b, const BoundOptions& opt = {});

/// Coefficient of x_W in sum_{i} sum_{W' subset of allowed \ {p_1..p_i}} x_{W'}:
/// the number of prefixes of p that avoid W, or 0 when W leaves `allowed`.
int prefix_coefficient(const std::vector<int>& p, UserSet W, UserSet allowed);

/// Set partitions of Q whose blocks all have at least `minBlock` elements.
std::vector<std::vector<RelaySet>> partitions_min_block(RelaySet Q, int minBlock);

/// Removes rows identical up to provenance, keeping the first.
void dedup_rows(std::vector<BoundConstraint>& rows);

} // namespace combnet
