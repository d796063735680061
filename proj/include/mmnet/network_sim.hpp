#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "mmnet/point_process.hpp"
#include "mmnet/rng.hpp"

namespace mmnet {

enum class Mode {
    asymptotic_dl,
    finite_dl,
    power_constrained_dl,
    uplink,
    baseline_single_antenna
};

std::string to_string(Mode mode);
Mode mode_from_string(const std::string& name);

struct SimConfig {
    double lambda_b = 1e-5;        // BS density, per m^2
    double alpha = 4.0;            // path loss exponent
    int m_antennas = 64;           // M
    int k_pilots = 4;              // K pilots (= users per cell)
    int l_block = 16;              // L channel uses per coherence block
    double window_radius = 2000.0; // meters
    double delta = 1.0;            // exclusion radius, meters
    long n_samples = 100000;
    std::uint64_t seed = 1;
    Mode mode = Mode::asymptotic_dl;

    void validate() const;  // throws InvalidParameterError
};

enum class TypicalKind { user_at_origin, bs_at_origin };

/// One coupled draw of the network geometry with all path gains cached.
///
/// Layout by mode:
///  - asymptotic_dl / baseline: `bs` plus `beta_to_typical` (BS -> origin).
///  - power_constrained_dl: additionally `pilot1_users` (index 0 = typical
///    user at the origin, remainder an independent PPP) and `beta_bs_user`
///    (#bs x #users, row-major).
///  - finite_dl: `users_per_pilot[k]` holds one user per cell (cell j's
///    pilot-k user), pilot 0's entry for the serving cell being the origin;
///    `beta_cell[k]` is #bs x #cells row-major.
///  - uplink: typical BS at the origin; `pilot1_users` is the pilot-1 user
///    PPP, `serving_index` the nearest user, `beta_to_typical` per user.
struct NetworkRealization {
    Mode mode = Mode::asymptotic_dl;
    TypicalKind typical_kind = TypicalKind::user_at_origin;

    PointPattern bs;
    PointPattern pilot1_users;
    std::vector<PointPattern> users_per_pilot;

    std::size_t serving_index = 0;  // BS index, or user index for uplink
    std::vector<double> beta_to_typical;
    std::vector<double> beta_bs_user;              // power-constrained
    std::vector<std::vector<double>> beta_cell;    // finite_dl

    long resample_count = 0;  // empty-pattern redraws during construction
};

/// Independent CN(0,1) small-scale fading for every (BS, pilot, cell-user)
/// pair of a finite-M realization; channels are h = sqrt(beta) * v.
struct ChannelBlock {
    int m = 0;
    std::size_t n_bs = 0;
    std::size_t n_pilots = 0;
    std::size_t n_cells = 0;
    std::vector<std::complex<double>> fading;

    const std::complex<double>* vec(std::size_t bs, std::size_t pilot,
                                    std::size_t cell) const {
        return fading.data() +
               ((bs * n_pilots + pilot) * n_cells + cell) * static_cast<std::size_t>(m);
    }
};

struct SirSample {
    double value = 0.0;  // linear
    Mode mode = Mode::asymptotic_dl;
};

NetworkRealization build_realization(const SimConfig& cfg, RandomStream& rng);

ChannelBlock draw_channel_block(const NetworkRealization& real, int m_antennas,
                                RandomStream& rng);

/// Pilot-contaminated estimate at BS `bs` for the given pilot: the sum of
/// the channels from `bs` to every cell's user on that pilot.
std::vector<std::complex<double>> channel_estimate(const NetworkRealization& real,
                                                   const ChannelBlock& block,
                                                   std::size_t bs,
                                                   std::size_t pilot);

/// beta_serving^2 / sum of beta^2 over the other base stations.
SirSample sir_asymptotic_dl(const NetworkRealization& real);

/// Finite-M downlink SIR of the typical user: ||h_00||^4 over the
/// same-pilot estimate-power sum, the same-pilot cross sum, and the
/// other-pilot sum.
SirSample sir_finite_dl(const NetworkRealization& real,
                        const ChannelBlock& block, const SimConfig& cfg);

/// Finite-M SIR evaluated at several antenna-count prefixes of one block
/// (m_list ascending, each <= block.m). Sharing one fading draw across the
/// prefixes makes convergence studies a single pass over the antennas.
std::vector<SirSample> sir_finite_dl_prefixes(const NetworkRealization& real,
                                              const ChannelBlock& block,
                                              const std::vector<int>& m_list);

/// Power-constrained asymptotic SIR: (beta_00^2/b_0) / sum (beta_l0^2/b_l)
/// with b_l the sum of path gains from BS l to every pilot-1 user.
SirSample sir_power_constrained_dl(const NetworkRealization& real);

/// Uplink mirror of sir_asymptotic_dl; interferers are the other pilot-1
/// users seen from the typical BS at the origin.
SirSample sir_asymptotic_ul(const NetworkRealization& real);

/// Single-antenna baseline with unit-mean exponential power fading on every
/// link; serving BS is the nearest.
SirSample sir_baseline_single_antenna(const NetworkRealization& real,
                                      RandomStream& rng);

}  // namespace mmnet
