#pragma once

#include <string>
#include <vector>

namespace mmnet {

enum class CurveSource { analytic, closed_form, monte_carlo };

/// Coverage probability as a function of the SIR threshold, with optional
/// confidence half-widths (zero for analytic curves).
struct CoverageCurve {
    std::vector<double> thresholds;  // linear, strictly increasing
    std::vector<double> probabilities;
    std::vector<double> half_widths;
    CurveSource source = CurveSource::analytic;
    std::string mode;

    /// Throws InvalidParameterError if lengths disagree, thresholds are not
    /// strictly increasing, or probabilities leave [0, 1].
    void validate() const;
};

struct RateResult {
    double rate_per_user = 0.0;
    double quadrature_error_estimate = 0.0;
};

struct SumRateResult {
    int k_opt = 1;
    double gamma_tot = 0.0;
};

/// Asymptotic coverage probability of the many-antenna downlink, by
/// characteristic-function inversion:
///
///   P(T) = 2 * Re integral_0^S of (e^(2*j*pi*s/T) - 1) / (2*j*pi*s * eta(2*j*pi*s)) ds
///          + analytic tail,
///
/// where the real-line integral is folded to s > 0 by conjugate symmetry of
/// eta. Beyond S the kernel is replaced by its algebraic asymptote
/// Gamma(1-1/alpha) * x^(1/alpha), whose tail integral has a closed form in
/// incomplete gamma functions; S is doubled until the result is stable to
/// the requested tolerance.
double coverage_dl(double threshold, double alpha, double tol);

/// Closed form alpha*sin(pi/alpha) / (pi * T^(1/alpha)), valid for T >= 1.
/// Throws for T < 1 rather than extrapolating.
double coverage_dl_closed(double threshold, double alpha);

/// Coverage of the single-antenna Rayleigh-fading baseline:
/// 1 / (1 + rho) with rho = T^(2/alpha) * integral_{T^(-2/alpha)}^inf du/(1+u^(alpha/2)).
/// For alpha = 4 this reduces to 1/(1 + sqrt(T)(pi/2 - atan(1/sqrt(T)))).
double coverage_baseline(double threshold, double alpha);

/// Rate integral integral_{T>0} P(T)/(1+T) dT of the many-antenna coverage
/// curve, split at T = 1 to reuse the closed form on (1, inf). Reported in
/// the units of the reference rate table, which tabulates this integral
/// directly (natural-log rate definition).
RateResult rate_dl(double alpha, double tol);

/// Same rate integral over the single-antenna baseline curve. The reference
/// table reports this one in bit/s/Hz, so the integral is divided by ln 2.
RateResult rate_baseline(double alpha, double tol);

/// Cell sum throughput K*(L-K)*rate/L for K pilot symbols out of L channel
/// uses per block.
double sum_rate(int l_block, int k_pilots, double rate_per_user);

/// K maximizing K*(L-K) over integers in [1, L-1]: floor(L/2).
int optimal_pilot_count(int l_block);

/// Optimal sum rate floor(L/2)*ceil(L/2)*rate/L (approximately L/4 * rate).
SumRateResult optimal_sum_rate(int l_block, double rate_per_user);

}  // namespace mmnet
