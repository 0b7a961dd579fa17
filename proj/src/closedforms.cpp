#include "combnet/closedforms.hpp"

#include <algorithm>

#include "combnet/errors.hpp"

namespace combnet {

Rational LoadCurve::at(const Rational& M) const {
    if (points.empty()) throw ParameterError("empty load curve");
    if (M < points.front().first || M > points.back().first) throw ParameterError("M outside the curve's range");
    for (std::size_t i = 0; i + 1 < points.size(); ++i) {
        const auto& [m0, r0] = points[i];
        const auto& [m1, r1] = points[i + 1];
        if (M <= m1) return r0 + (r1 - r0) * (M - m0) / (m1 - m0);
    }
    return points.back().second;
}

LoadCurve lower_convex_hull(std::vector<std::pair<Rational, Rational>> pts) {
    std::sort(pts.begin(), pts.end());
    std::vector<std::pair<Rational, Rational>> uniq;
    for (auto& p : pts)
        if (uniq.empty() || uniq.back().first != p.first) uniq.push_back(p);
    LoadCurve c;
    auto& h = c.points;
    for (auto& p : uniq) {
        while (h.size() >= 2) {
            const auto& a = h[h.size() - 2];
            const auto& b = h.back();
            // Drop b when it lies on or above the segment a -> p.
            Rational cross = (b.first - a.first) * (p.second - a.second) - (b.second - a.second) * (p.first - a.first);
            if (cross <= 0) h.pop_back();
            else break;
        }
        h.push_back(p);
    }
    return c;
}

Rational thm8_low_memory(const Topology& topo, int N, const Rational& M) {
    const int H = topo.H(), r = topo.r(), K = topo.K();
    if (N < K) throw RegimeError("closed form assumes N >= K");
    if (H > 2 * r) throw RegimeError("closed form covers H <= 2r only");
    if (M < 0 || M * K > N) throw RegimeError("closed form covers 0 <= M <= N/K only");
    const Rational x = M * K / N;
    if (H < 2 * r) return -frac(K + 1, 2 * H) * x + frac(K, H);
    return (Rational(K * (H - 1)) - (frac(K * H + H - K, 2) - 1) * x) / (H * (H - 1));
}

LoadCurve thm7_curve(const Topology& topo, int N) {
    const int H = topo.H(), K = topo.K();
    if (topo.r() != H - 1) throw RegimeError("curve holds for r = H - 1 only");
    if (N < K) throw RegimeError("curve assumes N >= K");
    std::vector<std::pair<Rational, Rational>> pts;
    for (int t = 0; t <= K - 2; ++t) pts.push_back({frac(static_cast<long>(t) * N, K), frac(K - t, static_cast<long>(t + 1) * H)});
    pts.push_back({Rational(N), Rational(0)});
    return lower_convex_hull(std::move(pts));
}

} // namespace combnet
