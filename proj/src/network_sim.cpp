#include "mmnet/network_sim.hpp"

#include <algorithm>
#include <cmath>

#include "mmnet/errors.hpp"

namespace mmnet {

namespace {

constexpr long kMaxResamples = 100000;

Point uniform_in_disk(double radius, RandomStream& rng) {
    const double r = radius * std::sqrt(rng.uniform());
    const double theta = 2.0 * M_PI * rng.uniform();
    return {r * std::cos(theta), r * std::sin(theta)};
}

PointPattern sample_nonempty_ppp(double density, double radius,
                                 RandomStream& rng, long& resample_count) {
    for (long attempt = 0; attempt < kMaxResamples; ++attempt) {
        PointPattern pattern = sample_ppp(density, radius, rng);
        if (!pattern.empty()) return pattern;
        ++resample_count;
    }
    throw WindowTooSmallError(
        "build_realization: could not sample a non-empty pattern");
}

double gain_from_origin(const Point& p, double alpha, ExclusionRadius delta) {
    return path_gain(std::sqrt(p.x * p.x + p.y * p.y), alpha, delta);
}

}  // namespace

std::string to_string(Mode mode) {
    switch (mode) {
        case Mode::asymptotic_dl: return "asymptotic_dl";
        case Mode::finite_dl: return "finite_dl";
        case Mode::power_constrained_dl: return "power_constrained_dl";
        case Mode::uplink: return "uplink";
        case Mode::baseline_single_antenna: return "baseline_single_antenna";
    }
    throw InvalidParameterError("to_string: unknown mode");
}

Mode mode_from_string(const std::string& name) {
    if (name == "asymptotic_dl") return Mode::asymptotic_dl;
    if (name == "finite_dl") return Mode::finite_dl;
    if (name == "power_constrained_dl") return Mode::power_constrained_dl;
    if (name == "uplink") return Mode::uplink;
    if (name == "baseline_single_antenna") return Mode::baseline_single_antenna;
    throw InvalidParameterError(
        "unknown mode '" + name +
        "'; valid modes: asymptotic_dl, finite_dl, power_constrained_dl, "
        "uplink, baseline_single_antenna");
}

void SimConfig::validate() const {
    if (!(lambda_b > 0.0))
        throw InvalidParameterError("SimConfig: lambda_b must be > 0");
    if (!(alpha > 2.0))
        throw InvalidParameterError("SimConfig: alpha must be > 2");
    if (m_antennas < 1)
        throw InvalidParameterError("SimConfig: m_antennas must be >= 1");
    if (k_pilots < 1 || k_pilots >= l_block)
        throw InvalidParameterError("SimConfig: requires 1 <= K < L");
    if (!(window_radius > 0.0))
        throw InvalidParameterError("SimConfig: window_radius must be > 0");
    if (!(delta > 0.0))
        throw InvalidParameterError("SimConfig: delta must be > 0");
    if (n_samples < 1)
        throw InvalidParameterError("SimConfig: n_samples must be >= 1");
}

NetworkRealization build_realization(const SimConfig& cfg, RandomStream& rng) {
    cfg.validate();

    NetworkRealization real;
    real.mode = cfg.mode;
    const ExclusionRadius delta{cfg.delta};
    const Point origin{0.0, 0.0};

    if (cfg.mode == Mode::uplink) {
        real.typical_kind = TypicalKind::bs_at_origin;
        real.pilot1_users = sample_nonempty_ppp(cfg.lambda_b, cfg.window_radius,
                                                rng, real.resample_count);
        real.serving_index = nearest_point(origin, real.pilot1_users).first;
        real.beta_to_typical.reserve(real.pilot1_users.size());
        for (const Point& u : real.pilot1_users.points)
            real.beta_to_typical.push_back(gain_from_origin(u, cfg.alpha, delta));
        return real;
    }

    real.typical_kind = TypicalKind::user_at_origin;
    real.bs = sample_nonempty_ppp(cfg.lambda_b, cfg.window_radius, rng,
                                  real.resample_count);
    real.serving_index = nearest_point(origin, real.bs).first;
    real.beta_to_typical.reserve(real.bs.size());
    for (const Point& b : real.bs.points)
        real.beta_to_typical.push_back(gain_from_origin(b, cfg.alpha, delta));

    if (cfg.mode == Mode::power_constrained_dl) {
        // Typical user at the origin plus an independent PPP of the other
        // pilot-1 users; b_l sums gains over all of them, origin included.
        real.pilot1_users.window_radius = cfg.window_radius;
        real.pilot1_users.density = cfg.lambda_b;
        real.pilot1_users.points.push_back(origin);
        PointPattern others = sample_ppp(cfg.lambda_b, cfg.window_radius, rng);
        real.pilot1_users.points.insert(real.pilot1_users.points.end(),
                                        others.points.begin(),
                                        others.points.end());
        const std::size_t n_bs = real.bs.size();
        const std::size_t n_users = real.pilot1_users.size();
        real.beta_bs_user.resize(n_bs * n_users);
        for (std::size_t l = 0; l < n_bs; ++l)
            for (std::size_t u = 0; u < n_users; ++u)
                real.beta_bs_user[l * n_users + u] = path_gain(
                    std::sqrt(squared_distance(real.bs.points[l],
                                               real.pilot1_users.points[u])),
                    cfg.alpha, delta);
    } else if (cfg.mode == Mode::finite_dl) {
        // One user per cell and pilot, positions i.i.d. uniform on the
        // window (PPP user approximation with per-cell pairing); the serving
        // cell's pilot-1 user is the typical user at the origin.
        const std::size_t n_cells = real.bs.size();
        real.users_per_pilot.resize(cfg.k_pilots);
        real.beta_cell.resize(cfg.k_pilots);
        for (int k = 0; k < cfg.k_pilots; ++k) {
            PointPattern& users = real.users_per_pilot[k];
            users.window_radius = cfg.window_radius;
            users.density = cfg.lambda_b;
            users.points.reserve(n_cells);
            for (std::size_t j = 0; j < n_cells; ++j)
                users.points.push_back(uniform_in_disk(cfg.window_radius, rng));
            if (k == 0) users.points[real.serving_index] = origin;

            std::vector<double>& beta = real.beta_cell[k];
            beta.resize(n_cells * n_cells);
            for (std::size_t l = 0; l < n_cells; ++l)
                for (std::size_t j = 0; j < n_cells; ++j)
                    beta[l * n_cells + j] = path_gain(
                        std::sqrt(squared_distance(real.bs.points[l],
                                                   users.points[j])),
                        cfg.alpha, delta);
        }
    }
    return real;
}

ChannelBlock draw_channel_block(const NetworkRealization& real, int m_antennas,
                                RandomStream& rng) {
    if (real.mode != Mode::finite_dl)
        throw InvalidParameterError(
            "draw_channel_block: requires a finite_dl realization");
    if (m_antennas < 1)
        throw InvalidParameterError("draw_channel_block: m must be >= 1");

    ChannelBlock block;
    block.m = m_antennas;
    block.n_bs = real.bs.size();
    block.n_pilots = real.users_per_pilot.size();
    block.n_cells = real.bs.size();
    block.fading.resize(block.n_bs * block.n_pilots * block.n_cells *
                        static_cast<std::size_t>(m_antennas));
    for (auto& v : block.fading) v = rng.complex_normal();
    return block;
}

std::vector<std::complex<double>> channel_estimate(const NetworkRealization& real,
                                                   const ChannelBlock& block,
                                                   std::size_t bs,
                                                   std::size_t pilot) {
    if (bs >= block.n_bs || pilot >= block.n_pilots)
        throw InvalidParameterError("channel_estimate: index out of range");

    std::vector<std::complex<double>> g(static_cast<std::size_t>(block.m));
    for (std::size_t j = 0; j < block.n_cells; ++j) {
        const double root_beta =
            std::sqrt(real.beta_cell[pilot][bs * block.n_cells + j]);
        const std::complex<double>* v = block.vec(bs, pilot, j);
        for (int t = 0; t < block.m; ++t)
            g[t] += root_beta * v[t];
    }
    return g;
}

SirSample sir_asymptotic_dl(const NetworkRealization& real) {
    if (real.typical_kind != TypicalKind::user_at_origin)
        throw InvalidParameterError(
            "sir_asymptotic_dl: requires a user-typical realization");

    const double serving = real.beta_to_typical[real.serving_index];
    double interference = 0.0;
    for (std::size_t l = 0; l < real.beta_to_typical.size(); ++l)
        if (l != real.serving_index)
            interference += real.beta_to_typical[l] * real.beta_to_typical[l];
    if (interference <= 0.0)
        throw InfiniteSirError("sir_asymptotic_dl: no interferer in window");
    return {serving * serving / interference, Mode::asymptotic_dl};
}

std::vector<SirSample> sir_finite_dl_prefixes(const NetworkRealization& real,
                                              const ChannelBlock& block,
                                              const std::vector<int>& m_list) {
    if (real.mode != Mode::finite_dl)
        throw InvalidParameterError(
            "sir_finite_dl: requires a finite_dl realization");
    if (m_list.empty() || m_list.front() < 1 || m_list.back() > block.m ||
        !std::is_sorted(m_list.begin(), m_list.end()))
        throw InvalidParameterError(
            "sir_finite_dl: m_list must be ascending and within block.m");

    const std::size_t n_bs = block.n_bs;
    const std::size_t n_cells = block.n_cells;
    const std::size_t n_pilots = block.n_pilots;
    const std::size_t serving = real.serving_index;
    const std::size_t n_cuts = m_list.size();

    std::vector<double> numerator(n_cuts, 0.0);
    std::vector<double> sum_estimate_power(n_cuts, 0.0);  // same-pilot norms
    std::vector<double> sum_same_pilot_cross(n_cuts, 0.0);
    std::vector<double> sum_other_pilot(n_cuts, 0.0);

    std::vector<std::complex<double>> dot(n_cuts);
    for (std::size_t l = 0; l < n_bs; ++l) {
        const std::complex<double>* v0 = block.vec(l, 0, serving);
        const double beta_l0 = real.beta_cell[0][l * n_cells + serving];

        // ||v_l0||^2 prefixes.
        std::vector<double> norm2(n_cuts);
        {
            double acc = 0.0;
            int t = 0;
            for (std::size_t c = 0; c < n_cuts; ++c) {
                for (; t < m_list[c]; ++t) acc += std::norm(v0[t]);
                norm2[c] = acc;
            }
        }
        for (std::size_t c = 0; c < n_cuts; ++c) {
            const double h_norm4 =
                beta_l0 * norm2[c] * beta_l0 * norm2[c];
            if (l == serving)
                numerator[c] = h_norm4;
            else
                sum_estimate_power[c] += h_norm4;
        }

        for (std::size_t k = 0; k < n_pilots; ++k) {
            for (std::size_t j = 0; j < n_cells; ++j) {
                if (k == 0 && (j == serving || j == l)) continue;
                const std::complex<double>* v = block.vec(l, k, j);
                std::fill(dot.begin(), dot.end(), std::complex<double>{});
                {
                    std::complex<double> acc{};
                    int t = 0;
                    for (std::size_t c = 0; c < n_cuts; ++c) {
                        for (; t < m_list[c]; ++t)
                            acc += std::conj(v0[t]) * v[t];
                        dot[c] = acc;
                    }
                }
                const double beta_pair =
                    beta_l0 * real.beta_cell[k][l * n_cells + j];
                for (std::size_t c = 0; c < n_cuts; ++c) {
                    const double power = beta_pair * std::norm(dot[c]);
                    if (k == 0)
                        sum_same_pilot_cross[c] += power;
                    else
                        sum_other_pilot[c] += power;
                }
            }
        }
    }

    std::vector<SirSample> result(n_cuts);
    for (std::size_t c = 0; c < n_cuts; ++c) {
        const double denominator = sum_estimate_power[c] +
                                   sum_same_pilot_cross[c] + sum_other_pilot[c];
        if (denominator <= 0.0)
            throw InfiniteSirError("sir_finite_dl: zero interference");
        result[c] = {numerator[c] / denominator, Mode::finite_dl};
    }
    return result;
}

SirSample sir_finite_dl(const NetworkRealization& real,
                        const ChannelBlock& block, const SimConfig& cfg) {
    return sir_finite_dl_prefixes(real, block, {cfg.m_antennas}).front();
}

SirSample sir_power_constrained_dl(const NetworkRealization& real) {
    if (real.mode != Mode::power_constrained_dl)
        throw InvalidParameterError(
            "sir_power_constrained_dl: requires a power_constrained_dl "
            "realization");

    const std::size_t n_bs = real.bs.size();
    const std::size_t n_users = real.pilot1_users.size();
    double numerator = 0.0;
    double denominator = 0.0;
    for (std::size_t l = 0; l < n_bs; ++l) {
        double b_l = 0.0;
        for (std::size_t u = 0; u < n_users; ++u)
            b_l += real.beta_bs_user[l * n_users + u];
        const double beta_l0 = real.beta_to_typical[l];
        const double term = beta_l0 * beta_l0 / b_l;
        if (l == real.serving_index)
            numerator = term;
        else
            denominator += term;
    }
    if (denominator <= 0.0)
        throw InfiniteSirError(
            "sir_power_constrained_dl: no interferer in window");
    return {numerator / denominator, Mode::power_constrained_dl};
}

SirSample sir_asymptotic_ul(const NetworkRealization& real) {
    if (real.typical_kind != TypicalKind::bs_at_origin)
        throw InvalidParameterError(
            "sir_asymptotic_ul: requires a BS-typical realization");

    const double serving = real.beta_to_typical[real.serving_index];
    double interference = 0.0;
    for (std::size_t u = 0; u < real.beta_to_typical.size(); ++u)
        if (u != real.serving_index)
            interference += real.beta_to_typical[u] * real.beta_to_typical[u];
    if (interference <= 0.0)
        throw InfiniteSirError("sir_asymptotic_ul: no interferer in window");
    return {serving * serving / interference, Mode::uplink};
}

SirSample sir_baseline_single_antenna(const NetworkRealization& real,
                                      RandomStream& rng) {
    if (real.typical_kind != TypicalKind::user_at_origin)
        throw InvalidParameterError(
            "sir_baseline_single_antenna: requires a user-typical realization");

    double numerator = 0.0;
    double interference = 0.0;
    for (std::size_t l = 0; l < real.beta_to_typical.size(); ++l) {
        const double faded = rng.exponential() * real.beta_to_typical[l];
        if (l == real.serving_index)
            numerator = faded;
        else
            interference += faded;
    }
    if (interference <= 0.0)
        throw InfiniteSirError(
            "sir_baseline_single_antenna: no interferer in window");
    return {numerator / interference, Mode::baseline_single_antenna};
}

}  // namespace mmnet
