#pragma once

#include <string>
#include <utility>
#include <vector>

#include "combnet/exactmath.hpp"
#include "combnet/topology.hpp"

namespace combnet {

/// Piecewise-linear load curve through (M, R) breakpoints, M strictly increasing.
struct LoadCurve {
    std::vector<std::pair<Rational, Rational>> points;
    /// "lower-hull" (achievable by memory sharing) or "upper-envelope" (converse).
    std::string kind = "lower-hull";

    /// Linear interpolation; ParameterError outside [first M, last M].
    Rational at(const Rational& M) const;
};

/// Lower convex hull of the given points (duplicates in M keep the smaller R).
LoadCurve lower_convex_hull(std::vector<std::pair<Rational, Rational>> pts);

/// Optimal uncoded-placement load for H <= 2r and M <= N/K.
Rational thm8_low_memory(const Topology& topo, int N, const Rational& M);

/// Achievable curve for r = H - 1: hull of (tN/K, (K-t)/((t+1)H)) for t <= K-2 and (N, 0).
LoadCurve thm7_curve(const Topology& topo, int N);

} // namespace combnet
