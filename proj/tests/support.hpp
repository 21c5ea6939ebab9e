#pragma once

#include "hdmac/channel.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

namespace testing {

inline hdmac::ChannelGains symmetric(double k) { return {k, k, 1.0, 1.0, 1.0}; }
inline const hdmac::PowerBudget kBudget{2.0, 2.0};

inline double dist_to_segment(const hdmac::Rate& p, const hdmac::Rate& a, const hdmac::Rate& b)
{
    const hdmac::Rate d = b - a;
    const double len2 = d.squaredNorm();
    const double t = len2 == 0.0 ? 0.0 : std::clamp((p - a).dot(d) / len2, 0.0, 1.0);
    return (a + t * d - p).norm();
}

inline double dist_to_boundary(const hdmac::Rate& p, const std::vector<hdmac::Rate>& poly)
{
    if (poly.size() == 1) return (p - poly[0]).norm();
    double best = INFINITY;
    for (std::size_t i = 0; i < poly.size(); ++i)
        best = std::min(best, dist_to_segment(p, poly[i], poly[(i + 1) % poly.size()]));
    return best;
}

// Hausdorff distance between the boundaries of two convex polygons.
inline double hausdorff(const std::vector<hdmac::Rate>& a, const std::vector<hdmac::Rate>& b)
{
    double h = 0.0;
    for (const auto& p : a) h = std::max(h, dist_to_boundary(p, b));
    for (const auto& p : b) h = std::max(h, dist_to_boundary(p, a));
    return h;
}

// Andrew's monotone chain, counter-clockwise, collinear points dropped.
inline std::vector<hdmac::Rate> convex_hull(std::vector<hdmac::Rate> pts)
{
    std::sort(pts.begin(), pts.end(), [](const hdmac::Rate& a, const hdmac::Rate& b) {
        return a.x() < b.x() || (a.x() == b.x() && a.y() < b.y());
    });
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    if (pts.size() < 3) return pts;
    auto cross = [](const hdmac::Rate& o, const hdmac::Rate& a, const hdmac::Rate& b) {
        return (a - o).x() * (b - o).y() - (a - o).y() * (b - o).x();
    };
    std::vector<hdmac::Rate> h(2 * pts.size());
    std::size_t k = 0;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        while (k >= 2 && cross(h[k - 2], h[k - 1], pts[i]) <= 0) --k;
        h[k++] = pts[i];
    }
    for (std::size_t i = pts.size() - 1, t = k + 1; i-- > 0;) {
        while (k >= t && cross(h[k - 2], h[k - 1], pts[i]) <= 0) --k;
        h[k++] = pts[i];
    }
    h.resize(k - 1);
    return h;
}

}  // namespace testing
