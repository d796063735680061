#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "mmnet/rng.hpp"

namespace mmnet {

struct Point {
    double x = 0.0;  // meters
    double y = 0.0;  // meters
};

inline double squared_distance(const Point& a, const Point& b) {
    const double dx = a.x - b.x;
    const double dy = a.y - b.y;
    return dx * dx + dy * dy;
}

/// Finite realization of a planar point process inside a disk window
/// centered at the origin.
struct PointPattern {
    std::vector<Point> points;
    double window_radius = 0.0;  // meters
    double density = 0.0;        // points per m^2

    std::size_t size() const { return points.size(); }
    bool empty() const { return points.empty(); }
};

/// Minimum separation used when converting distance to path gain. Distances
/// below delta are clamped rather than resampled so the point-process
/// statistics are untouched.
struct ExclusionRadius {
    double delta = 1.0;  // meters
};

/// Sample a homogeneous Poisson point process on the disk of the given
/// radius. The count is Poisson(density * pi * radius^2); given the count,
/// points are i.i.d. uniform on the disk (radius = R*sqrt(u), angle = 2*pi*v).
PointPattern sample_ppp(double density, double window_radius, RandomStream& rng);

/// Index and Euclidean distance of the pattern point closest to `origin`.
/// Ties break toward the lowest index.
std::pair<std::size_t, double> nearest_point(const Point& origin,
                                             const PointPattern& pattern);

/// Log-distance path gain max(distance, delta)^(-alpha). Requires alpha > 2
/// so interference moments stay finite.
double path_gain(double distance, double alpha, ExclusionRadius exclusion);

/// Fraction of the expected interference sum (exponent 2*alpha) that falls
/// outside a window of radius `window_radius`, relative to the interference
/// seen from the median nearest-point distance of a PPP with this density.
/// Used to size windows so truncation bias is negligible.
double truncation_tail_ratio(double density, double alpha, double window_radius);

}  // namespace mmnet
