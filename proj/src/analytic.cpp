#include "mmnet/analytic.hpp"

#include <algorithm>
#include <cmath>
#include <complex>

#include "mmnet/errors.hpp"
#include "mmnet/quadrature.hpp"
#include "mmnet/special_functions.hpp"

namespace mmnet {

namespace {

using Complex = std::complex<double>;

constexpr Complex kImag{0.0, 1.0};

/// Folded integrand Re[(e^(2*j*pi*s/T) - 1) / (2*j*pi*s * eta(2*j*pi*s))].
double coverage_integrand(double s, double threshold, double alpha) {
    if (s == 0.0) return 1.0 / threshold;
    const double omega = 2.0 * M_PI * s;
    const Complex x{0.0, omega};
    const Complex numerator = std::polar(1.0, omega / threshold) - 1.0;
    const Complex denominator = x * eta(x, alpha);
    return (numerator / denominator).real();
}

/// Gamma(order, z) for order in (-2, 0) by stepping the recurrence
/// Gamma(b, z) = (Gamma(b+1, z) - z^b e^(-z)) / b down from b+1 or b+2
/// inside (0, 2), where the series/continued-fraction kernel applies.
Complex upper_gamma_negative_order(double order, Complex z) {
    // Count the shifts as an integer: stepping a double down by 1.0 does not
    // return exactly to `order` unless it is dyadic, and a naive comparison
    // loop would run once too often (e.g. order = -1/3).
    int shifts = 0;
    double b = order;
    while (b <= 0.0) {
        b += 1.0;
        ++shifts;
    }
    Complex g = upper_incomplete_gamma(b, z);
    for (int k = shifts - 1; k >= 0; --k) {
        const double bk = order + static_cast<double>(k);
        g = (g - std::pow(z, bk) * std::exp(-z)) / bk;
    }
    return g;
}

/// integral_S^inf e^(-w s) s^(order - 1) ds = w^(-order) Gamma(order, w*S)
/// for Re order < 0 and w on the imaginary axis; w = 0 degenerates to the
/// plain power integral.
Complex oscillatory_power_tail(Complex w, double order, double upper) {
    if (std::abs(w) < 1e-14)
        return std::pow(upper, order) / (-order);
    return std::pow(w, -order) * upper_gamma_negative_order(order, w * upper);
}

/// Closed-form tail 2*Re integral_S^inf of the integrand with eta replaced
/// by its large-argument expansion
///   eta(x) = Gamma(a) x^(1/alpha) - e^(-x) (a-1)/x + O(e^(-x) x^-2),
/// a = 1 - 1/alpha. The leading reciprocal gives terms
/// s^(-1-1/alpha) e^(2*j*pi*s/T) and s^(-1-1/alpha); the first correction
/// gives s^(-2-2/alpha) times e^(2*j*pi*s(1/T-1)) and e^(-2*j*pi*s). All
/// four reduce to upper incomplete gamma functions of negative order.
double coverage_tail(double upper, double threshold, double alpha) {
    const double a = 1.0 - 1.0 / alpha;
    const double inv_alpha = 1.0 / alpha;
    const double gamma_a = std::tgamma(a);
    const Complex two_j_pi = 2.0 * M_PI * kImag;

    // Leading order: 1/eta ~ x^(-1/alpha) / Gamma(a).
    const Complex c1 = 1.0 / (gamma_a * std::pow(two_j_pi, 1.0 + inv_alpha));
    const Complex osc1 = oscillatory_power_tail(-two_j_pi / threshold,
                                                -inv_alpha, upper);
    const Complex const1 = oscillatory_power_tail(Complex{0.0, 0.0},
                                                  -inv_alpha, upper);
    double tail = 2.0 * (c1 * (osc1 - const1)).real();

    // First correction: 1/eta gains e^(-x) (a-1) / (x^(1+2/alpha) Gamma(a)^2).
    const Complex c2 = (a - 1.0) /
                       (gamma_a * gamma_a *
                        std::pow(two_j_pi, 2.0 + 2.0 * inv_alpha));
    const double order2 = -1.0 - 2.0 * inv_alpha;
    const Complex osc2 = oscillatory_power_tail(
        -two_j_pi * (1.0 / threshold - 1.0), order2, upper);
    const Complex const2 =
        oscillatory_power_tail(two_j_pi, order2, upper);
    tail += 2.0 * (c2 * (osc2 - const2)).real();

    return tail;
}

}  // namespace

void CoverageCurve::validate() const {
    if (thresholds.size() != probabilities.size() ||
        thresholds.size() != half_widths.size())
        throw InvalidParameterError("CoverageCurve: mismatched lengths");
    for (std::size_t i = 0; i < thresholds.size(); ++i) {
        if (i > 0 && !(thresholds[i] > thresholds[i - 1]))
            throw InvalidParameterError(
                "CoverageCurve: thresholds must be strictly increasing");
        if (!(probabilities[i] >= 0.0) || !(probabilities[i] <= 1.0))
            throw InvalidParameterError(
                "CoverageCurve: probabilities must lie in [0, 1]");
    }
}

double coverage_dl(double threshold, double alpha, double tol) {
    if (!(threshold > 0.0))
        throw InvalidParameterError("coverage_dl: threshold must be > 0");
    if (!(alpha > 2.0))
        throw InvalidParameterError("coverage_dl: alpha must be > 2");
    if (!(tol > 1e-12) || !(tol < 1e-2))
        throw InvalidParameterError("coverage_dl: tol must be in (1e-12, 1e-2)");

    auto f = [threshold, alpha](double s) {
        return coverage_integrand(s, threshold, alpha);
    };

    // Panels no wider than a quarter period of either oscillation: the
    // numerator has period T in s, the e^(-x) inside eta has period 1.
    const double width = std::min(threshold, 1.0) / 4.0;

    double upper = 12.0;
    QuadratureResult body = integrate_panels(f, 0.0, upper, width, tol / 4.0);
    double numeric = 2.0 * body.value;
    double value = numeric + coverage_tail(upper, threshold, alpha);

    constexpr double kMaxUpper = 200.0;
    while (upper < kMaxUpper) {
        const double next = 2.0 * upper;
        const QuadratureResult strip =
            integrate_panels(f, upper, next, width, tol / 4.0);
        numeric += 2.0 * strip.value;
        const double refined = numeric + coverage_tail(next, threshold, alpha);
        const bool converged = std::abs(refined - value) < tol / 2.0;
        value = refined;
        upper = next;
        if (converged) break;
    }
    if (upper >= kMaxUpper)
        throw NumericalFailureError("coverage_dl: tail did not stabilize",
                                    tol, body.evaluations);

    return std::clamp(value, 0.0, 1.0);
}

double coverage_dl_closed(double threshold, double alpha) {
    if (!(alpha > 2.0))
        throw InvalidParameterError("coverage_dl_closed: alpha must be > 2");
    if (!(threshold >= 1.0))
        throw InvalidParameterError(
            "coverage_dl_closed: valid only for thresholds >= 1");

    return alpha * std::sin(M_PI / alpha) /
           (M_PI * std::pow(threshold, 1.0 / alpha));
}

double coverage_baseline(double threshold, double alpha) {
    if (!(threshold > 0.0))
        throw InvalidParameterError("coverage_baseline: threshold must be > 0");
    if (!(alpha > 2.0))
        throw InvalidParameterError("coverage_baseline: alpha must be > 2");

    const double half_alpha = alpha / 2.0;
    const double lower = std::pow(threshold, -2.0 / alpha);

    // Numeric part up to U, then the alternating series
    // integral_U^inf du/(1+u^(alpha/2)) = sum_k (-1)^(k+1) U^(1-k*alpha/2)/(k*alpha/2-1),
    // valid once U^(-alpha/2) is small.
    double cut = std::max(2.0 * lower, std::pow(1e3, 2.0 / alpha));
    double integral = 0.0;
    if (cut > lower) {
        auto f = [half_alpha](double u) {
            return 1.0 / (1.0 + std::pow(u, half_alpha));
        };
        integral += integrate(f, lower, cut, 1e-10).value;
    } else {
        cut = lower;
    }
    double term_exponent = 1.0 - half_alpha;
    double sign = 1.0;
    for (int k = 1; k < 64; ++k) {
        const double term =
            sign * std::pow(cut, term_exponent) / (-term_exponent);
        integral += term;
        if (std::abs(term) < 1e-14) break;
        term_exponent -= half_alpha;
        sign = -sign;
    }

    const double rho = std::pow(threshold, 2.0 / alpha) * integral;
    return 1.0 / (1.0 + rho);
}

RateResult rate_dl(double alpha, double tol) {
    if (!(alpha > 2.0))
        throw InvalidParameterError("rate_dl: alpha must be > 2");
    if (!(tol > 1e-12) || !(tol < 1e-2))
        throw InvalidParameterError("rate_dl: tol must be in (1e-12, 1e-2)");

    const double coverage_tol = std::max(tol * 1e-2, 2e-7);

    // Below t_lo the coverage is 1 - O(T/(alpha-1)) (Markov bound on the
    // inverse SIR), so integrate log(1+T) exactly and take the midpoint of
    // the correction bracket [0, t_lo^2/(2(alpha-1))].
    constexpr double t_lo = 0.02;
    const double corr_bound = t_lo * t_lo / (2.0 * (alpha - 1.0));
    const double head = std::log1p(t_lo) - 0.5 * corr_bound;

    auto mid_integrand = [alpha, coverage_tol](double t) {
        return coverage_dl(t, alpha, coverage_tol) / (1.0 + t);
    };
    const QuadratureResult mid = integrate(mid_integrand, t_lo, 1.0, tol / 4.0,
                                           400000);

    // Tail over (1, inf) from the closed form, with T = v^(-alpha):
    // integral_1^inf T^(-1/alpha)/(1+T) dT = alpha * integral_0^1 dv/(1+v^alpha).
    auto tail_integrand = [alpha](double v) {
        return alpha / (1.0 + std::pow(v, alpha));
    };
    const double tail = coverage_dl_closed(1.0, alpha) *
                        integrate(tail_integrand, 0.0, 1.0, 1e-10).value;

    RateResult result;
    result.rate_per_user = head + mid.value + tail;
    result.quadrature_error_estimate =
        0.5 * corr_bound + mid.error_estimate + 1e-9;
    return result;
}

RateResult rate_baseline(double alpha, double tol) {
    if (!(alpha > 2.0))
        throw InvalidParameterError("rate_baseline: alpha must be > 2");
    if (!(tol > 1e-12) || !(tol < 1e-2))
        throw InvalidParameterError("rate_baseline: tol must be in (1e-12, 1e-2)");

    auto low = [alpha](double t) {
        return coverage_baseline(t, alpha) / (1.0 + t);
    };
    const QuadratureResult head = integrate(low, 0.0, 1.0, tol / 4.0, 400000);

    // Map (1, inf) to (0, 1) with T = 1/u; the integrand is u^(2/alpha - 1)
    // near zero, integrable and handled by panel refinement.
    auto high = [alpha](double u) {
        return coverage_baseline(1.0 / u, alpha) / (u * (1.0 + u));
    };
    const QuadratureResult tail = integrate(high, 0.0, 1.0, tol / 4.0, 400000);

    RateResult result;
    result.rate_per_user = (head.value + tail.value) / std::log(2.0);
    result.quadrature_error_estimate =
        (head.error_estimate + tail.error_estimate) / std::log(2.0);
    return result;
}

double sum_rate(int l_block, int k_pilots, double rate_per_user) {
    if (l_block < 2 || k_pilots < 1 || k_pilots >= l_block)
        throw InvalidParameterError("sum_rate: requires 1 <= K < L");
    return static_cast<double>(k_pilots) *
           static_cast<double>(l_block - k_pilots) * rate_per_user /
           static_cast<double>(l_block);
}

int optimal_pilot_count(int l_block) {
    if (l_block < 2)
        throw InvalidParameterError("optimal_pilot_count: requires L >= 2");
    return l_block / 2;
}

SumRateResult optimal_sum_rate(int l_block, double rate_per_user) {
    SumRateResult result;
    result.k_opt = optimal_pilot_count(l_block);
    result.gamma_tot = sum_rate(l_block, result.k_opt, rate_per_user);
    return result;
}

}  // namespace mmnet
