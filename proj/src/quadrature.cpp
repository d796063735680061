#include "mmnet/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "mmnet/errors.hpp"

namespace mmnet {

namespace {

// Gauss-Kronrod 7-15 nodes and weights on [-1, 1].
constexpr double kKronrodNodes[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000};

constexpr double kKronrodWeights[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714};

constexpr double kGaussWeights[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327};

struct PanelEstimate {
    double value;
    double error;
};

PanelEstimate gk15(const std::function<double(double)>& f, double a, double b) {
    const double center = 0.5 * (a + b);
    const double half = 0.5 * (b - a);

    double fv[15];
    for (int i = 0; i < 7; ++i) {
        fv[i] = f(center - half * kKronrodNodes[i]);
        fv[14 - i] = f(center + half * kKronrodNodes[i]);
    }
    fv[7] = f(center);

    double kronrod = kKronrodWeights[7] * fv[7];
    for (int i = 0; i < 7; ++i)
        kronrod += kKronrodWeights[i] * (fv[i] + fv[14 - i]);

    double gauss = kGaussWeights[3] * fv[7];
    for (int i = 0; i < 3; ++i)
        gauss += kGaussWeights[i] * (fv[2 * i + 1] + fv[13 - 2 * i]);

    const double value = kronrod * half;
    const double diff = std::abs((kronrod - gauss) * half);
    return {value, diff};
}

struct Panel {
    double a, b, value, error;
};

QuadratureResult run_adaptive(const std::function<double(double)>& f,
                              std::vector<Panel> panels, double abs_tol,
                              long max_evaluations, long evals) {
    double err_sum = 0.0;
    for (const auto& p : panels) err_sum += p.error;

    while (err_sum > abs_tol) {
        // Split the worst panel.
        std::size_t worst = 0;
        for (std::size_t i = 1; i < panels.size(); ++i)
            if (panels[i].error > panels[worst].error) worst = i;

        if (evals + 30 > max_evaluations) {
            throw NumericalFailureError(
                "integrate: evaluation budget exhausted", err_sum, evals);
        }
        const Panel p = panels[worst];
        const double mid = 0.5 * (p.a + p.b);
        if (mid <= p.a || mid >= p.b) {
            throw NumericalFailureError(
                "integrate: panel width underflow", err_sum, evals);
        }
        const PanelEstimate left = gk15(f, p.a, mid);
        const PanelEstimate right = gk15(f, mid, p.b);
        evals += 30;
        err_sum += left.error + right.error - p.error;
        panels[worst] = {p.a, mid, left.value, left.error};
        panels.push_back({mid, p.b, right.value, right.error});
    }

    QuadratureResult result;
    // Fixed summation order (by left endpoint) for run-to-run determinism.
    std::sort(panels.begin(), panels.end(),
              [](const Panel& x, const Panel& y) { return x.a < y.a; });
    for (const auto& p : panels) {
        result.value += p.value;
        result.error_estimate += p.error;
    }
    result.evaluations = evals;
    return result;
}

}  // namespace

QuadratureResult integrate(const std::function<double(double)>& f, double a,
                           double b, double abs_tol, long max_evaluations) {
    if (!(b > a))
        throw InvalidParameterError("integrate: requires b > a");
    if (!(abs_tol > 0.0))
        throw InvalidParameterError("integrate: abs_tol must be > 0");

    const PanelEstimate first = gk15(f, a, b);
    return run_adaptive(f, {{a, b, first.value, first.error}}, abs_tol,
                        max_evaluations, 15);
}

QuadratureResult integrate_panels(const std::function<double(double)>& f,
                                  double a, double b, double max_panel_width,
                                  double abs_tol, long max_evaluations) {
    if (!(b > a))
        throw InvalidParameterError("integrate_panels: requires b > a");
    if (!(max_panel_width > 0.0) || !(abs_tol > 0.0))
        throw InvalidParameterError("integrate_panels: bad tolerance");

    const auto n = static_cast<std::size_t>(
        std::min(4.0e6, std::ceil((b - a) / max_panel_width)));
    std::vector<Panel> panels;
    panels.reserve(n);
    long evals = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const double pa = a + (b - a) * static_cast<double>(i) / static_cast<double>(n);
        const double pb = a + (b - a) * static_cast<double>(i + 1) / static_cast<double>(n);
        const PanelEstimate e = gk15(f, pa, pb);
        evals += 15;
        panels.push_back({pa, pb, e.value, e.error});
        if (evals > max_evaluations)
            throw NumericalFailureError(
                "integrate_panels: evaluation budget exhausted in initial grid",
                0.0, evals);
    }
    return run_adaptive(f, std::move(panels), abs_tol, max_evaluations, evals);
}

}  // namespace mmnet
