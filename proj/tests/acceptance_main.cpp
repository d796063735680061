// Acceptance gate: one pass/fail line per criterion, nonzero exit on any
// failure. Expects the CLI binary path as argv[1] (used by the determinism
// criterion).

#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "mmnet/analytic.hpp"
#include "mmnet/errors.hpp"
#include "mmnet/monte_carlo.hpp"
#include "mmnet/special_functions.hpp"

using namespace mmnet;

namespace {

int failures = 0;

void report(int criterion, const std::string& name, bool pass,
            const std::string& detail, double seconds) {
    std::printf("%s  criterion %2d  %-28s %s  (%.1f s)\n",
                pass ? "PASS" : "FAIL", criterion, name.c_str(),
                detail.c_str(), seconds);
    std::fflush(stdout);
    if (!pass) ++failures;
}

template <typename F>
void timed(int criterion, const std::string& name, F&& body) {
    const auto start = std::chrono::steady_clock::now();
    bool pass = false;
    std::string detail;
    try {
        pass = body(detail);
    } catch (const std::exception& e) {
        detail = std::string("exception: ") + e.what();
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();
    report(criterion, name, pass, detail, secs);
}

std::vector<double> db_grid(double lo, double hi, int n) {
    std::vector<double> g(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
        g[static_cast<std::size_t>(i)] =
            std::pow(10.0, (lo + (hi - lo) * i / (n - 1)) / 10.0);
    return g;
}

std::string slurp(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    std::ostringstream s;
    s << f.rdbuf();
    return s.str();
}

}  // namespace

int main(int argc, char** argv) {
    const std::string cli = argc > 1 ? argv[1] : "";

    timed(1, "closed-form consistency", [](std::string& detail) {
        double worst = 0.0;
        for (double alpha : {3.0, 4.0, 6.0})
            for (int i = 0; i < 30; ++i) {
                const double t = std::pow(10.0, 3.0 * i / 29.0);
                const double gap = std::abs(coverage_dl(t, alpha, 1e-6) -
                                            coverage_dl_closed(t, alpha));
                worst = std::max(worst, gap);
            }
        char buf[64];
        std::snprintf(buf, sizeof buf, "max |integral - closed| = %.2e", worst);
        detail = buf;
        return worst < 1e-4;
    });

    timed(2, "rate table", [](std::string& detail) {
        SimConfig cfg;
        const Table1Result t = reproduce_table1(cfg);
        std::ostringstream s;
        s << "rate " << t.massive_rate_per_user << ", baseline "
          << t.baseline_rate_per_user << ", sum " << t.massive_sum_rate_per_cell;
        detail = s.str();
        return std::abs(t.massive_rate_per_user - 3.79) < 0.05 &&
               std::abs(t.baseline_rate_per_user - 2.15) < 0.05 &&
               std::abs(t.massive_sum_rate_per_cell - 15.16) < 0.20;
    });

    const auto grid = db_grid(-10.0, 30.0, 20);

    timed(3, "monte carlo vs analytic", [&](std::string& detail) {
        SimConfig cfg;
        cfg.n_samples = 100000;
        cfg.seed = 2001;
        const Campaign c = run_coverage(cfg, grid);
        int covered = 0;
        for (std::size_t i = 0; i < grid.size(); ++i) {
            const double want = coverage_dl(grid[i], cfg.alpha, 1e-6);
            if (c.ci_low[i] <= want && want <= c.ci_high[i]) ++covered;
        }
        detail = std::to_string(covered) + "/20 thresholds inside Wilson CI";
        return c.valid && covered >= 18;
    });

    timed(4, "uplink duality", [&](std::string& detail) {
        SimConfig cfg;
        cfg.mode = Mode::uplink;
        cfg.n_samples = 100000;
        cfg.seed = 2002;
        const Campaign c = run_coverage(cfg, grid);
        int covered = 0;
        for (std::size_t i = 0; i < grid.size(); ++i) {
            const double want = coverage_dl(grid[i], cfg.alpha, 1e-6);
            if (c.ci_low[i] <= want && want <= c.ci_high[i]) ++covered;
        }
        detail = std::to_string(covered) + "/20 thresholds inside Wilson CI";
        return c.valid && covered >= 18;
    });

    timed(5, "power-constraint ordering", [&](std::string& detail) {
        SimConfig cfg;
        cfg.mode = Mode::power_constrained_dl;
        cfg.n_samples = 20000;
        cfg.window_radius = 1500.0;
        cfg.seed = 2003;
        const Campaign c = run_coverage(cfg, grid);
        int violations = 0;
        for (std::size_t i = 0; i < grid.size(); ++i) {
            const double p = c.curve.probabilities[i];
            const double sigma = std::sqrt(
                std::max(p * (1.0 - p), 1e-9) /
                static_cast<double>(cfg.n_samples));
            const double bound = coverage_dl(grid[i], cfg.alpha, 1e-6);
            if (p > bound + 3.0 * sigma) ++violations;
        }
        detail = std::to_string(violations) + " one-sided 3-sigma violations";
        return c.valid && violations == 0;
    });

    timed(6, "finite-M convergence", [](std::string& detail) {
        SimConfig cfg;
        cfg.window_radius = 620.0;
        cfg.k_pilots = 4;
        cfg.seed = 2004;
        const auto rows = run_convergence_study(cfg, {16, 64, 256, 1024},
                                                1000, 100);
        bool decreasing = true;
        std::ostringstream s;
        s << "median gaps";
        for (std::size_t i = 0; i < rows.size(); ++i) {
            s << " " << rows[i].median_rel_gap;
            if (i > 0 && !(rows[i].median_rel_gap < rows[i - 1].median_rel_gap))
                decreasing = false;
        }
        detail = s.str();
        return decreasing;
    });

    timed(7, "special functions", [](std::string& detail) {
        using Complex = std::complex<double>;
        double worst_id = 0.0;
        for (double r : {0.01, 1.0, 10.0, 100.0})
            for (double arg : {0.0, M_PI / 4.0, M_PI / 2.0}) {
                const Complex z = std::polar(r, arg);
                worst_id = std::max(
                    worst_id, std::abs(lower_incomplete_gamma(1.0, z) -
                                       (1.0 - std::exp(-z))));
            }
        double worst_rec = 0.0;
        for (double a : {0.6, 0.75, 0.9})
            for (double r : {0.1, 1.0, 10.0, 100.0})
                for (double arg : {0.0, M_PI / 2.0}) {
                    const Complex z = std::polar(r, arg);
                    const Complex lhs = lower_incomplete_gamma(a + 1.0, z);
                    const Complex rhs = a * lower_incomplete_gamma(a, z) -
                                        std::pow(z, a) * std::exp(-z);
                    worst_rec =
                        std::max(worst_rec, std::abs(lhs - rhs) /
                                                std::max(1.0, std::abs(lhs)));
                }
        // Trapezoid-oracle check of gamma(3/4, i*y) via
        // gamma(a, z) = (z^a / a) integral_0^1 exp(-z v^(1/a)) dv.
        double worst_quad = 0.0;
        for (double y : {2.0, 10.0}) {
            const Complex z{0.0, y};
            const double a = 0.75;
            const int n = 400000;
            Complex acc = 0.5 * (std::exp(-z * 0.0) + std::exp(-z));
            for (int i = 1; i < n; ++i) {
                const double v = static_cast<double>(i) / n;
                acc += std::exp(-z * std::pow(v, 1.0 / a));
            }
            const Complex oracle = std::pow(z, a) / a * (acc / Complex(n));
            worst_quad = std::max(
                worst_quad,
                std::abs(lower_incomplete_gamma(a, z) - oracle));
        }
        const bool eta_exact = eta(Complex{0.0, 0.0}, 4.0) == Complex{1.0, 0.0};
        std::ostringstream s;
        s << "id " << worst_id << ", rec " << worst_rec << ", quad "
          << worst_quad;
        detail = s.str();
        return worst_id < 1e-12 && worst_rec < 1e-10 && worst_quad < 1e-8 &&
               eta_exact;
    });

    timed(8, "laplace consistency", [](std::string& detail) {
        SimConfig cfg;
        cfg.seed = 2005;
        const long n = 40000;
        const std::vector<double> zs{0.5, 1.0, 2.0};
        std::vector<double> sum(zs.size(), 0.0), sum2(zs.size(), 0.0);
        for (long i = 0; i < n; ++i) {
            RandomStream rng(derive_stream_seed(cfg.seed,
                                                static_cast<std::uint64_t>(i)));
            double f;
            for (;;) {
                const NetworkRealization real = build_realization(cfg, rng);
                try {
                    f = 1.0 / sir_asymptotic_dl(real).value;
                    break;
                } catch (const InfiniteSirError&) {
                }
            }
            for (std::size_t k = 0; k < zs.size(); ++k) {
                const double x = std::exp(-zs[k] * f);
                sum[k] += x;
                sum2[k] += x * x;
            }
        }
        bool ok = true;
        std::ostringstream s;
        for (std::size_t k = 0; k < zs.size(); ++k) {
            const double mean = sum[k] / static_cast<double>(n);
            const double var =
                sum2[k] / static_cast<double>(n) - mean * mean;
            const double sigma = std::sqrt(var / static_cast<double>(n));
            const double want =
                1.0 / eta(std::complex<double>{zs[k], 0.0}, cfg.alpha).real();
            s << " z=" << zs[k] << ": " << (mean - want) / sigma << " sigma";
            if (std::abs(mean - want) > 3.0 * sigma) ok = false;
        }
        detail = s.str();
        return ok;
    });

    timed(9, "density invariance", [&](std::string& detail) {
        SimConfig lo;
        lo.n_samples = 50000;
        lo.seed = 2006;
        SimConfig hi = lo;
        hi.lambda_b *= 4.0;
        hi.window_radius /= 2.0;
        hi.seed = 2007;
        const Campaign a = run_coverage(lo, grid);
        const Campaign b = run_coverage(hi, grid);
        int overlap = 0;
        for (std::size_t i = 0; i < grid.size(); ++i)
            if (a.ci_low[i] <= b.ci_high[i] && b.ci_low[i] <= a.ci_high[i])
                ++overlap;
        detail = std::to_string(overlap) + "/20 intervals overlap";
        return a.valid && b.valid && overlap >= 18;
    });

    timed(10, "determinism across threads", [&](std::string& detail) {
        if (cli.empty()) {
            detail = "CLI path missing (argv[1])";
            return false;
        }
        const std::string base =
            cli + " simulate --mode asymptotic_dl --samples 20000 --seed 13 ";
        const std::string a = "/tmp/mmnet_acceptance_t1.csv";
        const std::string b = "/tmp/mmnet_acceptance_t4.csv";
        if (std::system((base + "--threads 1 --out " + a).c_str()) != 0 ||
            std::system((base + "--threads 4 --out " + b).c_str()) != 0) {
            detail = "CLI run failed";
            return false;
        }
        const std::string ca = slurp(a);
        detail = ca == slurp(b) ? "1-thread and 4-thread CSV byte-identical"
                                : "outputs differ";
        return !ca.empty() && ca == slurp(b);
    });

    std::printf("%s: %d/10 criteria passed\n",
                failures == 0 ? "ACCEPTANCE PASS" : "ACCEPTANCE FAIL",
                10 - failures);
    return failures == 0 ? 0 : 1;
}
