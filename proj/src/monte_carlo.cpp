#include "mmnet/monte_carlo.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <exception>
#include <thread>

#include "mmnet/errors.hpp"

namespace mmnet {

namespace {

constexpr double kZ95 = 1.959963984540054;
constexpr long kMaxRedraws = 1000;
constexpr std::uint64_t kRealizationTag = 0x52454c5aULL;
constexpr std::uint64_t kFadingTag = 0x46414445ULL;

void check_grid(const std::vector<double>& grid) {
    if (grid.empty())
        throw InvalidParameterError("threshold grid must be non-empty");
    for (std::size_t i = 1; i < grid.size(); ++i)
        if (!(grid[i] > grid[i - 1]))
            throw InvalidParameterError(
                "threshold grid must be strictly increasing");
}

/// Draw one SIR sample in cfg.mode, redrawing the realization when it
/// yields an undefined (infinite) SIR. Returns the sample and adds any
/// redraws to `rejected`.
double draw_sir(const SimConfig& cfg, RandomStream& rng, long& rejected) {
    for (long attempt = 0; attempt < kMaxRedraws; ++attempt) {
        NetworkRealization real = build_realization(cfg, rng);
        rejected += real.resample_count;
        try {
            switch (cfg.mode) {
                case Mode::asymptotic_dl:
                    return sir_asymptotic_dl(real).value;
                case Mode::power_constrained_dl:
                    return sir_power_constrained_dl(real).value;
                case Mode::uplink:
                    return sir_asymptotic_ul(real).value;
                case Mode::baseline_single_antenna:
                    return sir_baseline_single_antenna(real, rng).value;
                case Mode::finite_dl: {
                    ChannelBlock block =
                        draw_channel_block(real, cfg.m_antennas, rng);
                    return sir_finite_dl(real, block, cfg).value;
                }
            }
            throw InvalidParameterError("draw_sir: unknown mode");
        } catch (const InfiniteSirError&) {
            ++rejected;
        }
    }
    throw WindowTooSmallError(
        "draw_sir: redraw budget exhausted; window too small");
}

template <typename Body>
void parallel_blocks(long n, int threads, Body&& body) {
    const int t = std::max(1, threads);
    if (t == 1) {
        body(0L, n, 0);
        return;
    }
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(static_cast<std::size_t>(t));
    const long chunk = (n + t - 1) / t;
    for (int w = 0; w < t; ++w) {
        const long begin = static_cast<long>(w) * chunk;
        const long end = std::min(n, begin + chunk);
        pool.emplace_back([&, begin, end, w] {
            try {
                if (begin < end) body(begin, end, w);
            } catch (...) {
                errors[static_cast<std::size_t>(w)] = std::current_exception();
            }
        });
    }
    for (auto& th : pool) th.join();
    for (const auto& e : errors)
        if (e) std::rethrow_exception(e);
}

}  // namespace

BinomialInterval wilson_interval(long successes, long trials) {
    if (trials < 1 || successes < 0 || successes > trials)
        throw InvalidParameterError("wilson_interval: bad counts");
    const double n = static_cast<double>(trials);
    const double p = static_cast<double>(successes) / n;
    const double z2 = kZ95 * kZ95;
    const double denom = 1.0 + z2 / n;
    const double center = (p + z2 / (2.0 * n)) / denom;
    const double half =
        kZ95 * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n)) / denom;
    return {std::max(0.0, center - half), std::min(1.0, center + half)};
}

Campaign run_coverage(const SimConfig& cfg, const std::vector<double>& grid,
                      int threads) {
    cfg.validate();
    check_grid(grid);
    const auto start = std::chrono::steady_clock::now();

    const int n_workers = std::max(1, threads);
    const std::size_t g = grid.size();
    // Per worker: histogram over "first grid index >= SIR" plus a rejection
    // counter. Integer counts make the reduction order-independent, so the
    // result is byte-identical at any thread count.
    std::vector<std::vector<long>> hist(
        static_cast<std::size_t>(n_workers), std::vector<long>(g + 1, 0));
    std::vector<long> rejected(static_cast<std::size_t>(n_workers), 0);

    parallel_blocks(cfg.n_samples, n_workers, [&](long begin, long end, int w) {
        auto& h = hist[static_cast<std::size_t>(w)];
        long& rej = rejected[static_cast<std::size_t>(w)];
        for (long i = begin; i < end; ++i) {
            RandomStream rng(derive_stream_seed(cfg.seed,
                                                static_cast<std::uint64_t>(i)));
            const double sir = draw_sir(cfg, rng, rej);
            const auto idx = static_cast<std::size_t>(
                std::lower_bound(grid.begin(), grid.end(), sir) - grid.begin());
            ++h[idx];
        }
    });

    std::vector<long> total_hist(g + 1, 0);
    long total_rejected = 0;
    for (int w = 0; w < n_workers; ++w) {
        for (std::size_t j = 0; j <= g; ++j)
            total_hist[j] += hist[static_cast<std::size_t>(w)][j];
        total_rejected += rejected[static_cast<std::size_t>(w)];
    }

    Campaign campaign;
    campaign.cfg = cfg;
    campaign.threshold_grid = grid;
    campaign.rejected_count = total_rejected;
    campaign.valid =
        total_rejected * 1000 < cfg.n_samples || total_rejected == 0;

    campaign.curve.thresholds = grid;
    campaign.curve.source = CurveSource::monte_carlo;
    campaign.curve.mode = to_string(cfg.mode);
    campaign.curve.probabilities.resize(g);
    campaign.curve.half_widths.resize(g);
    campaign.ci_low.resize(g);
    campaign.ci_high.resize(g);

    // count of samples with SIR > grid[j] is the tail of the histogram.
    long exceed = 0;
    for (std::size_t j = g; j-- > 0;) {
        exceed += total_hist[j + 1];
        const long k = exceed;
        campaign.curve.probabilities[j] =
            static_cast<double>(k) / static_cast<double>(cfg.n_samples);
        const BinomialInterval ci = wilson_interval(k, cfg.n_samples);
        campaign.ci_low[j] = ci.low;
        campaign.ci_high[j] = ci.high;
        campaign.curve.half_widths[j] = 0.5 * (ci.high - ci.low);
    }
    campaign.curve.validate();

    campaign.wall_time_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();
    return campaign;
}

double sir_finite_dl_conditional(const NetworkRealization& real, int m_antennas,
                                 RandomStream& rng) {
    if (real.mode != Mode::finite_dl)
        throw InvalidParameterError(
            "sir_finite_dl_conditional: requires a finite_dl realization");
    if (m_antennas < 1)
        throw InvalidParameterError("sir_finite_dl_conditional: m must be >= 1");

    const std::size_t n_cells = real.bs.size();
    const std::size_t n_pilots = real.beta_cell.size();
    const std::size_t serving = real.serving_index;

    double numerator = 0.0;
    double denominator = 0.0;
    for (std::size_t l = 0; l < n_cells; ++l) {
        // ||v_l0||^2 is a sum of M unit-mean exponentials: Gamma(M, 1).
        const double norm2 = rng.gamma(static_cast<double>(m_antennas));
        const double beta_l0 = real.beta_cell[0][l * n_cells + serving];
        const double h_norm4 = beta_l0 * norm2 * beta_l0 * norm2;
        if (l == serving)
            numerator = h_norm4;
        else
            denominator += h_norm4;

        // Conditioned on ||v_l0||, each cross inner product has power
        // beta_l0 * beta * ||v_l0||^2 * Exp(1), independently.
        for (std::size_t k = 0; k < n_pilots; ++k)
            for (std::size_t j = 0; j < n_cells; ++j) {
                if (k == 0 && (j == serving || j == l)) continue;
                const double beta = real.beta_cell[k][l * n_cells + j];
                denominator +=
                    beta_l0 * beta * norm2 * rng.exponential();
            }
    }
    if (denominator <= 0.0)
        throw InfiniteSirError("sir_finite_dl_conditional: zero interference");
    return numerator / denominator;
}

std::vector<ConvergenceRow> run_convergence_study(const SimConfig& cfg,
                                                  const std::vector<int>& m_list,
                                                  long n_realizations,
                                                  long n_fading, int threads) {
    cfg.validate();
    if (m_list.empty() || !std::is_sorted(m_list.begin(), m_list.end()) ||
        m_list.front() < 1)
        throw InvalidParameterError(
            "run_convergence_study: m_list must be ascending and positive");
    if (n_realizations < 1 || n_fading < 1)
        throw InvalidParameterError(
            "run_convergence_study: sample counts must be >= 1");

    SimConfig fin = cfg;
    fin.mode = Mode::finite_dl;

    const std::size_t n_m = m_list.size();
    const long per_m = n_realizations * n_fading;
    std::vector<std::vector<double>> gaps(
        n_m, std::vector<double>(static_cast<std::size_t>(per_m), 0.0));

    parallel_blocks(n_realizations, threads, [&](long begin, long end, int) {
        for (long r = begin; r < end; ++r) {
            RandomStream geo_rng(derive_stream_seed(
                cfg.seed ^ kRealizationTag, static_cast<std::uint64_t>(r)));

            NetworkRealization real;
            double sir_inf = 0.0;
            for (long attempt = 0;; ++attempt) {
                if (attempt >= kMaxRedraws)
                    throw WindowTooSmallError(
                        "run_convergence_study: redraw budget exhausted");
                real = build_realization(fin, geo_rng);
                try {
                    sir_inf = sir_asymptotic_dl(real).value;
                    break;
                } catch (const InfiniteSirError&) {
                }
            }

            for (long f = 0; f < n_fading; ++f) {
                RandomStream fad_rng(derive_stream_seed(
                    cfg.seed ^ kFadingTag,
                    static_cast<std::uint64_t>(r * n_fading + f)));
                const auto slot =
                    static_cast<std::size_t>(r * n_fading + f);
                for (std::size_t mi = 0; mi < n_m; ++mi) {
                    const double sir_m =
                        sir_finite_dl_conditional(real, m_list[mi], fad_rng);
                    gaps[mi][slot] = std::abs(sir_m / sir_inf - 1.0);
                }
            }
        }
    });

    std::vector<ConvergenceRow> rows(n_m);
    for (std::size_t mi = 0; mi < n_m; ++mi) {
        std::vector<double>& v = gaps[mi];
        std::sort(v.begin(), v.end());
        rows[mi].m_antennas = m_list[mi];
        rows[mi].median_rel_gap = v[v.size() / 2];
        rows[mi].p90_rel_gap = v[(v.size() * 9) / 10];
    }
    return rows;
}

Table1Result reproduce_table1(const SimConfig& cfg, double tol) {
    Table1Result result;
    result.massive_rate_per_user = rate_dl(cfg.alpha, tol).rate_per_user;
    result.baseline_rate_per_user =
        rate_baseline(cfg.alpha, tol).rate_per_user;
    const SumRateResult opt =
        optimal_sum_rate(cfg.l_block, result.massive_rate_per_user);
    result.k_opt = opt.k_opt;
    result.massive_sum_rate_per_cell = opt.gamma_tot;
    return result;
}

}  // namespace mmnet
