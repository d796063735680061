#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <random>

namespace mmnet {

/// SplitMix64 finalizer, used to derive uncorrelated substream seeds from
/// a (root seed, sample index) pair.
inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

inline std::uint64_t derive_stream_seed(std::uint64_t root_seed,
                                        std::uint64_t index) {
    return splitmix64(splitmix64(root_seed) ^ splitmix64(index));
}

/// Random stream with explicit, implementation-independent transforms.
/// std::uniform_real_distribution and friends are not pinned down by the
/// standard, so all variate generation here is done by hand on top of the
/// raw mt19937_64 output. A given seed therefore produces the same variate
/// sequence on every platform and at every thread count.
class RandomStream {
public:
    explicit RandomStream(std::uint64_t seed) : engine_(seed) {}

    /// Uniform on [0, 1) with 53-bit resolution.
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    /// Uniform on (0, 1], for safe use under log().
    double uniform_pos() { return 1.0 - uniform(); }

    /// Standard normal via the polar (Marsaglia) method.
    double normal() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u, v, s;
        do {
            u = 2.0 * uniform() - 1.0;
            v = 2.0 * uniform() - 1.0;
            s = u * u + v * v;
        } while (s >= 1.0 || s == 0.0);
        const double f = std::sqrt(-2.0 * std::log(s) / s);
        spare_ = v * f;
        have_spare_ = true;
        return u * f;
    }

    /// Circularly-symmetric complex normal CN(0, 1): E|v|^2 = 1.
    std::complex<double> complex_normal() {
        constexpr double inv_sqrt2 = 0.7071067811865476;
        return {normal() * inv_sqrt2, normal() * inv_sqrt2};
    }

    /// Unit-mean exponential.
    double exponential() { return -std::log(uniform_pos()); }

    /// Poisson count by the product method, chunked so exp(-lambda) never
    /// underflows. O(mean) uniforms per draw.
    std::uint64_t poisson(double mean) {
        std::uint64_t total = 0;
        double remaining = mean;
        while (remaining > 0.0) {
            const double lam = remaining > 500.0 ? 500.0 : remaining;
            const double threshold = std::exp(-lam);
            double p = 1.0;
            std::uint64_t k = 0;
            do {
                ++k;
                p *= uniform_pos();
            } while (p > threshold);
            total += k - 1;
            remaining -= lam;
        }
        return total;
    }

    /// Gamma(shape, 1) via Marsaglia-Tsang; shape >= 1.
    double gamma(double shape) {
        const double d = shape - 1.0 / 3.0;
        const double c = 1.0 / std::sqrt(9.0 * d);
        for (;;) {
            double x, v;
            do {
                x = normal();
                v = 1.0 + c * x;
            } while (v <= 0.0);
            v = v * v * v;
            const double u = uniform_pos();
            if (u < 1.0 - 0.0331 * x * x * x * x) return d * v;
            if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v)))
                return d * v;
        }
    }

private:
    std::mt19937_64 engine_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

}  // namespace mmnet
