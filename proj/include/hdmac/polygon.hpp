#pragma once

#include "hdmac/channel.hpp"

#include <span>

namespace hdmac {

struct WeightedVertex {
    Rate vertex = Rate::Zero();
    double value = 0.0;
};

/// Vertex maximizing mu1*r1 + mu2*r2. Ties go to the larger r1, then larger r2.
WeightedVertex weighted_best_vertex(const RatePolygon& poly, const Eigen::Vector2d& mu);

/// Convex closure of rate points with free disposal: the hull of the points, their
/// axis projections and the origin. Dominated and collinear points are dropped.
RatePolygon upper_hull(std::span<const Rate> points);

struct Containment {
    bool contained = true;
    double worst_slack = 0.0;  // min over inner vertices of the signed margin
};

/// Checks every inner vertex against the outer polygon. Slack is the signed
/// distance to the nearest violated edge line (positive inside).
Containment region_contains(const RatePolygon& outer, const RatePolygon& inner, double tol);

/// Signed margin of a point with respect to a convex polygon (negative outside).
double point_slack(const RatePolygon& poly, const Rate& p);

}  // namespace hdmac
