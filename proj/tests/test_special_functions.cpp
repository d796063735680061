#include <cmath>
#include <complex>
#include <functional>
#include <vector>

#include "doctest.h"
#include "mmnet/errors.hpp"
#include "mmnet/special_functions.hpp"

using mmnet::eta;
using mmnet::lower_incomplete_gamma;
using mmnet::upper_incomplete_gamma;
using Complex = std::complex<double>;

namespace {

// Independent oracle: gamma(a, z) = (z^a / a) * integral_0^1 exp(-z v^(1/a)) dv
// after substituting t = z v^(1/a), which removes the endpoint singularity.
// Evaluated with complex adaptive Simpson, no shared code with the library.
Complex simpson(const std::function<Complex(double)>& f, double a, double b,
                Complex fa, Complex fm, Complex fb, double tol, int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const Complex flm = f(lm);
    const Complex frm = f(rm);
    const Complex whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    const Complex left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const Complex right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const Complex refined = left + right;
    if (depth <= 0 || std::abs(refined - whole) < 15.0 * tol)
        return refined + (refined - whole) / 15.0;
    return simpson(f, a, m, fa, flm, fm, tol / 2.0, depth - 1) +
           simpson(f, m, b, fm, frm, fb, tol / 2.0, depth - 1);
}

Complex oracle_lower_gamma(double a, Complex z) {
    auto f = [a, z](double v) -> Complex {
        return std::exp(-z * std::pow(v, 1.0 / a));
    };
    const Complex body =
        simpson(f, 0.0, 1.0, f(0.0), f(0.5), f(1.0), 1e-13, 40);
    return std::pow(z, a) / a * body;
}

}  // namespace

TEST_CASE("gamma(1, z) equals 1 - exp(-z) on a complex grid") {
    for (double r : {1e-3, 1e-1, 1.0, 5.0, 30.0, 200.0, 1e3}) {
        for (double arg : {0.0, M_PI / 6.0, M_PI / 4.0, M_PI / 2.0}) {
            const Complex z = std::polar(r, arg);
            const Complex got = lower_incomplete_gamma(1.0, z);
            const Complex want = 1.0 - std::exp(-z);
            CAPTURE(r);
            CAPTURE(arg);
            CHECK(std::abs(got - want) < 1e-12);
        }
    }
}

TEST_CASE("quadrature oracle agreement including imaginary arguments") {
    const std::vector<double> shapes{0.5, 0.6, 0.75, 0.9, 1.25, 1.75};
    const std::vector<Complex> args{
        {0.3, 0.0}, {2.0, 0.0}, {8.0, 0.0},  {1.0, 1.0}, {3.0, 4.0},
        {0.0, 0.5}, {0.0, 2.0}, {0.0, 10.0}, {0.0, 25.0}, {2.0, 20.0}};
    for (double a : shapes)
        for (Complex z : args) {
            const Complex got = lower_incomplete_gamma(a, z);
            const Complex want = oracle_lower_gamma(a, z);
            CAPTURE(a);
            CAPTURE(z.real());
            CAPTURE(z.imag());
            CHECK(std::abs(got - want) < 1e-8 * std::max(1.0, std::abs(want)));
        }
}

TEST_CASE("recurrence gamma(a+1,z) = a*gamma(a,z) - z^a e^(-z)") {
    for (double a : {0.6, 0.75, 0.9}) {
        for (double r = 1e-3; r < 1.1e3; r *= 10.0) {
            for (double arg : {0.0, M_PI / 4.0, M_PI / 2.0}) {
                const Complex z = std::polar(r, arg);
                const Complex lhs = lower_incomplete_gamma(a + 1.0, z);
                const Complex rhs = a * lower_incomplete_gamma(a, z) -
                                    std::pow(z, a) * std::exp(-z);
                const double scale =
                    std::max({1.0, std::abs(lhs), std::abs(rhs)});
                CAPTURE(a);
                CAPTURE(r);
                CAPTURE(arg);
                CHECK(std::abs(lhs - rhs) < 1e-10 * scale);
            }
        }
    }
}

TEST_CASE("large real argument approaches the complete gamma function") {
    for (double a : {0.5, 0.75, 1.5}) {
        const Complex got = lower_incomplete_gamma(a, Complex{700.0, 0.0});
        CHECK(std::abs(got - std::tgamma(a)) < 1e-12 * std::tgamma(a));
    }
}

TEST_CASE("upper + lower = complete") {
    for (double a : {0.3, 0.75, 1.6}) {
        for (Complex z : {Complex{2.0, 3.0}, Complex{0.0, 7.0}, Complex{9.0, 0.0}}) {
            const Complex sum = lower_incomplete_gamma(a, z) +
                                upper_incomplete_gamma(a, z);
            CHECK(std::abs(sum - std::tgamma(a)) < 1e-11 * std::tgamma(a));
        }
    }
}

TEST_CASE("domain checks") {
    CHECK_THROWS_AS(lower_incomplete_gamma(0.0, Complex{1.0, 0.0}),
                    mmnet::InvalidParameterError);
    CHECK_THROWS_AS(lower_incomplete_gamma(2.5, Complex{1.0, 0.0}),
                    mmnet::InvalidParameterError);
    CHECK_THROWS_AS(lower_incomplete_gamma(0.5, Complex{-1.0, 0.5}),
                    mmnet::InvalidParameterError);
}

TEST_CASE("eta(0) = 1 exactly and Schwarz reflection holds") {
    CHECK(eta(Complex{0.0, 0.0}, 4.0) == Complex{1.0, 0.0});
    for (double alpha : {3.0, 4.0, 6.0}) {
        for (Complex x : {Complex{0.0, 1.0}, Complex{0.0, 40.0}, Complex{2.0, 5.0}}) {
            const Complex direct = eta(std::conj(x), alpha);
            const Complex reflected = std::conj(eta(x, alpha));
            CHECK(std::abs(direct - reflected) < 1e-13 * std::abs(direct));
        }
    }
}

TEST_CASE("eta is real, positive and increasing on the positive real axis") {
    double prev = 1.0;
    for (double x = 0.25; x < 64.0; x *= 2.0) {
        const Complex v = eta(Complex{x, 0.0}, 4.0);
        CHECK(std::abs(v.imag()) < 1e-14 * v.real());
        CHECK(v.real() > prev);
        prev = v.real();
    }
}

TEST_CASE("eta matches its large-argument asymptote") {
    // eta(x) -> Gamma(1 - 1/alpha) x^(1/alpha) for large x.
    for (double alpha : {3.0, 4.0}) {
        const double a = 1.0 - 1.0 / alpha;
        const Complex x{0.0, 1e4};
        const Complex ratio =
            eta(x, alpha) / (std::tgamma(a) * std::pow(x, 1.0 / alpha));
        CHECK(std::abs(ratio - 1.0) < 1e-3);
    }
}
