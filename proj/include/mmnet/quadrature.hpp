#pragma once

#include <functional>

namespace mmnet {

struct QuadratureResult {
    double value = 0.0;
    double error_estimate = 0.0;
    long evaluations = 0;
};

/// Adaptive Gauss-Kronrod (7-15) integration of f over [a, b] to absolute
/// tolerance abs_tol. Panels are bisected recursively; throws
/// NumericalFailureError if the evaluation budget is exhausted before the
/// tolerance is met.
QuadratureResult integrate(const std::function<double(double)>& f, double a,
                           double b, double abs_tol,
                           long max_evaluations = 2000000);

/// Same, but the initial subdivision is a uniform grid of panels no wider
/// than max_panel_width. Use for oscillatory integrands where the top-level
/// error estimate of a single wide panel cannot be trusted.
QuadratureResult integrate_panels(const std::function<double(double)>& f,
                                  double a, double b, double max_panel_width,
                                  double abs_tol,
                                  long max_evaluations = 8000000);

}  // namespace mmnet
