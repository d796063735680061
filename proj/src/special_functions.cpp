#include "mmnet/special_functions.hpp"

#include <cmath>
#include <limits>

#include "mmnet/errors.hpp"

namespace mmnet {

namespace {

constexpr double kRelTol = 1e-15;
constexpr long kMaxTerms = 10000;

bool finite(std::complex<double> z) {
    return std::isfinite(z.real()) && std::isfinite(z.imag());
}

void check_domain(double a, std::complex<double> z) {
    if (!(a > 0.0) || !(a < 2.0))
        throw InvalidParameterError(
            "incomplete_gamma: order a must lie in (0, 2)");
    if (!finite(z))
        throw InvalidParameterError("incomplete_gamma: z must be finite");
    if (z.real() < -1e-12 * std::abs(z))
        throw InvalidParameterError(
            "incomplete_gamma: z must satisfy |arg z| <= pi/2");
}

/// gamma(a, z) by the Kummer series z^a e^(-z) sum_n z^n / (a...(a+n)).
std::complex<double> lower_gamma_series(double a, std::complex<double> z) {
    std::complex<double> term = 1.0 / a;
    std::complex<double> sum = term;
    for (long n = 1; n <= kMaxTerms; ++n) {
        term *= z / (a + static_cast<double>(n));
        sum += term;
        if (std::abs(term) < kRelTol * std::abs(sum))
            return std::pow(z, a) * std::exp(-z) * sum;
    }
    throw NumericalFailureError("lower_incomplete_gamma: series did not converge",
                                std::abs(term / sum), kMaxTerms);
}

/// Gamma(a, z) by the standard continued fraction, modified Lentz.
std::complex<double> upper_gamma_cf(double a, std::complex<double> z) {
    constexpr double kTiny = 1e-300;
    std::complex<double> b = z + 1.0 - a;
    std::complex<double> c = 1.0 / kTiny;
    std::complex<double> d = 1.0 / b;
    std::complex<double> h = d;
    for (long n = 1; n <= kMaxTerms; ++n) {
        const double an = -static_cast<double>(n) * (static_cast<double>(n) - a);
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < kTiny) d = kTiny;
        c = b + an / c;
        if (std::abs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        const std::complex<double> delta = d * c;
        h *= delta;
        if (std::abs(delta - 1.0) < kRelTol)
            return std::exp(-z) * std::pow(z, a) * h;
    }
    throw NumericalFailureError(
        "upper_incomplete_gamma: continued fraction did not converge",
        std::abs(h), kMaxTerms);
}

}  // namespace

std::complex<double> lower_incomplete_gamma(double a, std::complex<double> z) {
    check_domain(a, z);
    if (z == 0.0) return 0.0;

    const double r = std::abs(z);
    const double re = z.real();
    // The continued fraction degrades near the imaginary axis; stretch the
    // series region there. Cancellation in the series grows like e^|Im z|,
    // so the stretched radius stays modest.
    const bool near_axis = re < 0.45 * r;
    const double series_radius = near_axis ? 14.0 : a + 8.0;
    if (r <= series_radius) return lower_gamma_series(a, z);
    return std::tgamma(a) - upper_gamma_cf(a, z);
}

std::complex<double> upper_incomplete_gamma(double a, std::complex<double> z) {
    check_domain(a, z);
    if (z == 0.0) return std::tgamma(a);

    const double r = std::abs(z);
    const bool near_axis = z.real() < 0.45 * r;
    const double series_radius = near_axis ? 14.0 : a + 8.0;
    if (r <= series_radius) return std::tgamma(a) - lower_gamma_series(a, z);
    return upper_gamma_cf(a, z);
}

std::complex<double> eta(std::complex<double> x, double alpha) {
    if (!(alpha > 2.0))
        throw InvalidParameterError("eta: alpha must be > 2");
    if (x == 0.0) return 1.0;

    const double inv_alpha = 1.0 / alpha;
    return std::exp(-x) +
           std::pow(x, inv_alpha) *
               lower_incomplete_gamma(1.0 - inv_alpha, x);
}

}  // namespace mmnet
