#include "mmnet/point_process.hpp"

#include <cmath>
#include <limits>

#include "mmnet/errors.hpp"

namespace mmnet {

PointPattern sample_ppp(double density, double window_radius, RandomStream& rng) {
    if (!(density > 0.0))
        throw InvalidParameterError("sample_ppp: density must be > 0");
    if (!(window_radius > 0.0))
        throw InvalidParameterError("sample_ppp: window_radius must be > 0");

    const double mean = density * M_PI * window_radius * window_radius;
    const std::uint64_t count = rng.poisson(mean);

    PointPattern pattern;
    pattern.window_radius = window_radius;
    pattern.density = density;
    pattern.points.reserve(count);
    for (std::uint64_t i = 0; i < count; ++i) {
        const double r = window_radius * std::sqrt(rng.uniform());
        const double theta = 2.0 * M_PI * rng.uniform();
        pattern.points.push_back({r * std::cos(theta), r * std::sin(theta)});
    }
    return pattern;
}

std::pair<std::size_t, double> nearest_point(const Point& origin,
                                             const PointPattern& pattern) {
    if (pattern.empty())
        throw EmptyPatternError("nearest_point: pattern is empty");

    std::size_t best = 0;
    double best_d2 = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < pattern.points.size(); ++i) {
        const double d2 = squared_distance(origin, pattern.points[i]);
        if (d2 < best_d2) {
            best_d2 = d2;
            best = i;
        }
    }
    return {best, std::sqrt(best_d2)};
}

double path_gain(double distance, double alpha, ExclusionRadius exclusion) {
    if (!(alpha > 2.0))
        throw InvalidParameterError("path_gain: alpha must be > 2");
    if (!(exclusion.delta > 0.0))
        throw InvalidParameterError("path_gain: exclusion delta must be > 0");
    if (!(distance >= 0.0))
        throw InvalidParameterError("path_gain: distance must be >= 0");

    const double r = distance > exclusion.delta ? distance : exclusion.delta;
    return std::pow(r, -alpha);
}

double truncation_tail_ratio(double density, double alpha, double window_radius) {
    if (!(density > 0.0) || !(alpha > 2.0) || !(window_radius > 0.0))
        throw InvalidParameterError("truncation_tail_ratio: bad parameters");

    // Campbell tail of sum r^(-2*alpha) beyond R is proportional to
    // R^(2-2*alpha); normalize by the same expression at the median
    // nearest-point distance sqrt(ln 2 / (pi * density)).
    const double median_r = std::sqrt(std::log(2.0) / (M_PI * density));
    return std::pow(median_r / window_radius, 2.0 * alpha - 2.0);
}

}  // namespace mmnet
