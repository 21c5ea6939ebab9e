#include "hdmac/polygon.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace hdmac {

namespace {

double cross(const Rate& o, const Rate& a, const Rate& b)
{
    return (a.x() - o.x()) * (b.y() - o.y()) - (a.y() - o.y()) * (b.x() - o.x());
}

double segment_distance(const Rate& a, const Rate& b, const Rate& p)
{
    const Rate ab = b - a;
    const double len2 = ab.squaredNorm();
    if (len2 == 0.0) return (p - a).norm();
    const double t = std::clamp((p - a).dot(ab) / len2, 0.0, 1.0);
    return (p - (a + t * ab)).norm();
}

}  // namespace

WeightedVertex weighted_best_vertex(const RatePolygon& poly, const Eigen::Vector2d& mu)
{
    if (poly.empty()) throw std::invalid_argument("weighted_best_vertex: empty polygon");
    if (mu.x() < 0.0 || mu.y() < 0.0 || (mu.x() == 0.0 && mu.y() == 0.0))
        throw std::invalid_argument("weighted_best_vertex: weights must be >= 0 and not both 0");

    constexpr double tie = 1e-12;
    WeightedVertex best{poly.vertices.front(), mu.dot(poly.vertices.front())};
    for (const Rate& v : poly.vertices) {
        const double value = mu.dot(v);
        if (value > best.value + tie) {
            best = {v, value};
        } else if (value >= best.value - tie) {
            const bool better = v.x() > best.vertex.x() ||
                                (v.x() == best.vertex.x() && v.y() > best.vertex.y());
            if (better) best = {v, value};
        }
    }
    return best;
}

RatePolygon upper_hull(std::span<const Rate> points)
{
    if (points.empty()) throw std::invalid_argument("upper_hull: no points");

    std::vector<Rate> pts;
    pts.reserve(3 * points.size() + 1);
    pts.emplace_back(0.0, 0.0);
    for (const Rate& p : points) {
        if (!(p.x() >= 0.0 && p.y() >= 0.0) || !p.allFinite())
            throw std::invalid_argument("upper_hull: points must be finite and >= 0");
        pts.push_back(p);
        pts.emplace_back(p.x(), 0.0);
        pts.emplace_back(0.0, p.y());
    }
    std::sort(pts.begin(), pts.end(), [](const Rate& a, const Rate& b) {
        return a.x() < b.x() || (a.x() == b.x() && a.y() < b.y());
    });
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    if (pts.size() == 1) return RatePolygon{pts};

    double scale = 0.0;
    for (const Rate& p : pts) scale = std::max(scale, p.cwiseAbs().maxCoeff());
    const double eps = 1e-14 * scale * scale;

    // Andrew's monotone chain, counter-clockwise from the lexicographic minimum (the origin).
    std::vector<Rate> hull(2 * pts.size());
    std::size_t k = 0;
    for (const Rate& p : pts) {
        while (k >= 2 && cross(hull[k - 2], hull[k - 1], p) <= eps) --k;
        hull[k++] = p;
    }
    for (std::size_t i = pts.size() - 1, lower = k + 1; i-- > 0;) {
        while (k >= lower && cross(hull[k - 2], hull[k - 1], pts[i]) <= eps) --k;
        hull[k++] = pts[i];
    }
    hull.resize(k - 1);
    return RatePolygon{hull};
}

double point_slack(const RatePolygon& poly, const Rate& p)
{
    const auto& v = poly.vertices;
    if (v.empty()) throw std::invalid_argument("point_slack: empty polygon");
    if (v.size() == 1) return -(p - v[0]).norm();
    if (v.size() == 2) return -segment_distance(v[0], v[1], p);

    double slack = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < v.size(); ++i) {
        const Rate& a = v[i];
        const Rate& b = v[(i + 1) % v.size()];
        const double len = (b - a).norm();
        if (len == 0.0) continue;
        slack = std::min(slack, cross(a, b, p) / len);
    }
    return slack;
}

Containment region_contains(const RatePolygon& outer, const RatePolygon& inner, double tol)
{
    Containment c;
    c.worst_slack = std::numeric_limits<double>::infinity();
    for (const Rate& p : inner.vertices) c.worst_slack = std::min(c.worst_slack, point_slack(outer, p));
    if (inner.empty()) c.worst_slack = 0.0;
    c.contained = c.worst_slack >= -tol;
    return c;
}

}  // namespace hdmac
