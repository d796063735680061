#pragma once

#include <complex>

namespace mmnet {

/// Lower incomplete gamma function gamma(a, z) = integral_0^z t^(a-1) e^(-t) dt
/// for real a in (0, 2) and complex z on the closed right half-plane
/// (|arg z| <= pi/2), principal branch of z^a.
///
/// Algorithm split: Kummer series z^a e^(-z) sum z^n / (a (a+1) ... (a+n))
/// for small |z|; modified-Lentz continued fraction for the upper function
/// Gamma(a, z) otherwise, with gamma = Gamma(a) - Gamma(a, z). Near the
/// imaginary axis the series is kept up to a larger radius because the
/// continued fraction converges slowly as arg z -> pi/2.
std::complex<double> lower_incomplete_gamma(double a, std::complex<double> z);

/// Upper incomplete gamma function Gamma(a, z) = Gamma(a) - gamma(a, z),
/// same domain as lower_incomplete_gamma.
std::complex<double> upper_incomplete_gamma(double a, std::complex<double> z);

/// Kernel eta(x) = e^(-x) + x^(1/alpha) * gamma(1 - 1/alpha, x) of the
/// coverage integral; eta(0) = 1 and conj(eta(x)) = eta(conj(x)).
std::complex<double> eta(std::complex<double> x, double alpha);

}  // namespace mmnet
