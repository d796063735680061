// mmnet: analytic evaluation and Monte Carlo simulation of coverage and
// rate in interference-limited many-antenna cellular networks.
//
// Subcommands:
//   coverage     analytic coverage curve (integral, closed form, or baseline)
//   simulate     Monte Carlo coverage campaign in one of the network modes
//   rate         per-user and cell sum rate report (JSON)
//   convergence  finite-antenna SIR convergence study
//
// Every file output is paired with a <out>.manifest.json recording the
// resolved configuration, seed, version and timestamps.
//
// Exit codes: 0 success, 2 usage error, 3 numerical failure,
// 4 invalid campaign (rejection budget breached).

#include <chrono>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <fmt/core.h>

#include "CLI11.hpp"
#include "json.hpp"
#include "mmnet/analytic.hpp"
#include "mmnet/errors.hpp"
#include "mmnet/monte_carlo.hpp"

namespace {

constexpr const char* kVersion = "1.0.0";

using nlohmann::json;

std::string iso_timestamp() {
    const auto now = std::chrono::system_clock::now();
    const std::time_t t = std::chrono::system_clock::to_time_t(now);
    char buf[32];
    std::tm tm{};
    gmtime_r(&t, &tm);
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

std::vector<double> db_grid(double lo_db, double hi_db, int points) {
    if (points < 1)
        throw mmnet::InvalidParameterError("points must be >= 1");
    if (points > 1 && !(hi_db > lo_db))
        throw mmnet::InvalidParameterError("t-max-db must exceed t-min-db");
    std::vector<double> grid(static_cast<std::size_t>(points));
    for (int i = 0; i < points; ++i) {
        const double db =
            points == 1 ? lo_db
                        : lo_db + (hi_db - lo_db) * i / (points - 1);
        grid[static_cast<std::size_t>(i)] = std::pow(10.0, db / 10.0);
    }
    return grid;
}

double to_db(double linear) { return 10.0 * std::log10(linear); }

json config_to_json(const mmnet::SimConfig& cfg) {
    return {{"lambda_b", cfg.lambda_b},
            {"alpha", cfg.alpha},
            {"m_antennas", cfg.m_antennas},
            {"k_pilots", cfg.k_pilots},
            {"l_block", cfg.l_block},
            {"window_radius", cfg.window_radius},
            {"delta", cfg.delta},
            {"n_samples", cfg.n_samples},
            {"seed", cfg.seed},
            {"mode", mmnet::to_string(cfg.mode)}};
}

void write_manifest(const std::string& out_path, const std::string& command,
                    const json& config, std::uint64_t seed,
                    const std::string& started, const std::string& finished) {
    json manifest = {{"tool", "mmnet"},
                     {"version", kVersion},
                     {"command", command},
                     {"config", config},
                     {"seed", seed},
                     {"started", started},
                     {"finished", finished},
                     {"outputs", json::array({out_path})}};
    std::ofstream f(out_path + ".manifest.json");
    if (!f)
        throw std::runtime_error("cannot write manifest for " + out_path);
    f << manifest.dump(2) << "\n";
}

void apply_config_file(const std::string& path, mmnet::SimConfig& cfg) {
    std::ifstream f(path);
    if (!f)
        throw mmnet::InvalidParameterError("cannot read config file " + path);
    std::string line;
    int line_no = 0;
    while (std::getline(f, line)) {
        ++line_no;
        const auto first = line.find_first_not_of(" \t");
        if (first == std::string::npos || line[first] == '#') continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw mmnet::InvalidParameterError(
                fmt::format("{}:{}: expected key=value", path, line_no));
        auto trim = [](std::string s) {
            const auto b = s.find_first_not_of(" \t");
            const auto e = s.find_last_not_of(" \t\r");
            return b == std::string::npos ? std::string{}
                                          : s.substr(b, e - b + 1);
        };
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        try {
            if (key == "lambda_b") cfg.lambda_b = std::stod(value);
            else if (key == "alpha") cfg.alpha = std::stod(value);
            else if (key == "m_antennas") cfg.m_antennas = std::stoi(value);
            else if (key == "k_pilots") cfg.k_pilots = std::stoi(value);
            else if (key == "l_block") cfg.l_block = std::stoi(value);
            else if (key == "window_radius") cfg.window_radius = std::stod(value);
            else if (key == "delta") cfg.delta = std::stod(value);
            else if (key == "n_samples") cfg.n_samples = std::stol(value);
            else if (key == "seed") cfg.seed = std::stoull(value);
            else if (key == "mode") cfg.mode = mmnet::mode_from_string(value);
            else
                throw mmnet::InvalidParameterError(
                    fmt::format("{}:{}: unknown key '{}'", path, line_no, key));
        } catch (const std::invalid_argument&) {
            throw mmnet::InvalidParameterError(
                fmt::format("{}:{}: bad value '{}' for '{}'", path, line_no,
                            value, key));
        }
    }
}

std::ofstream open_output(const std::string& path) {
    std::ofstream f(path, std::ios::binary);  // LF endings on every platform
    if (!f)
        throw std::runtime_error("cannot open output file " + path);
    return f;
}

struct CoverageArgs {
    double alpha = 4.0;
    double t_min_db = -10.0;
    double t_max_db = 30.0;
    int points = 20;
    std::string method = "integral";
    double tol = 1e-6;
    std::string out;
};

int cmd_coverage(const CoverageArgs& a) {
    const std::string started = iso_timestamp();
    const auto grid = db_grid(a.t_min_db, a.t_max_db, a.points);

    std::ofstream f = open_output(a.out);
    f << "threshold_db,threshold_linear,coverage,method\n";
    for (double t : grid) {
        std::string value;
        if (a.method == "integral")
            value = fmt::format("{}", mmnet::coverage_dl(t, a.alpha, a.tol));
        else if (a.method == "baseline")
            value = fmt::format("{}", mmnet::coverage_baseline(t, a.alpha));
        else if (t >= 1.0)  // closed form is only valid above T = 1
            value = fmt::format("{}", mmnet::coverage_dl_closed(t, a.alpha));
        f << fmt::format("{},{},{},{}\n", to_db(t), t, value, a.method);
    }
    f.close();

    json config = {{"alpha", a.alpha},    {"t_min_db", a.t_min_db},
                   {"t_max_db", a.t_max_db}, {"points", a.points},
                   {"method", a.method},  {"tol", a.tol}};
    write_manifest(a.out, "coverage", config, 0, started, iso_timestamp());
    return 0;
}

struct SimulateArgs {
    mmnet::SimConfig cfg;
    double t_min_db = -10.0;
    double t_max_db = 30.0;
    int points = 20;
    int threads = 1;
    std::string out;
};

int cmd_simulate(const SimulateArgs& a) {
    const std::string started = iso_timestamp();
    const auto grid = db_grid(a.t_min_db, a.t_max_db, a.points);
    const mmnet::Campaign c = mmnet::run_coverage(a.cfg, grid, a.threads);

    std::ofstream f = open_output(a.out);
    f << "threshold_db,coverage,ci_low,ci_high,mode,samples\n";
    for (std::size_t i = 0; i < grid.size(); ++i)
        f << fmt::format("{},{},{},{},{},{}\n", to_db(grid[i]),
                         c.curve.probabilities[i], c.ci_low[i], c.ci_high[i],
                         c.curve.mode, a.cfg.n_samples);
    f.close();

    json config = config_to_json(a.cfg);
    config["t_min_db"] = a.t_min_db;
    config["t_max_db"] = a.t_max_db;
    config["points"] = a.points;
    config["threads"] = a.threads;
    config["rejected_count"] = c.rejected_count;
    write_manifest(a.out, "simulate", config, a.cfg.seed, started,
                   iso_timestamp());

    if (!c.valid) {
        std::cerr << fmt::format(
            "invalid campaign: {} rejected redraws for {} samples; "
            "enlarge --window-radius\n",
            c.rejected_count, a.cfg.n_samples);
        return 4;
    }
    return 0;
}

struct RateArgs {
    double alpha = 4.0;
    int l_block = 16;
    double tol = 1e-4;
    std::string out;
};

int cmd_rate(const RateArgs& a) {
    const std::string started = iso_timestamp();
    const mmnet::RateResult rate = mmnet::rate_dl(a.alpha, a.tol);
    const mmnet::RateResult baseline = mmnet::rate_baseline(a.alpha, a.tol);
    const mmnet::SumRateResult opt =
        mmnet::optimal_sum_rate(a.l_block, rate.rate_per_user);

    json report = {
        {"rate_per_user_bps_hz", rate.rate_per_user},
        {"baseline_rate_bps_hz", baseline.rate_per_user},
        {"k_opt", opt.k_opt},
        {"sum_rate_per_cell_bps_hz", opt.gamma_tot},
        {"tolerances",
         {{"requested", a.tol},
          {"rate_error_estimate", rate.quadrature_error_estimate},
          {"baseline_error_estimate", baseline.quadrature_error_estimate}}},
        {"alpha", a.alpha},
        {"l_block", a.l_block}};

    if (a.out.empty()) {
        std::cout << report.dump(2) << "\n";
    } else {
        std::ofstream f = open_output(a.out);
        f << report.dump(2) << "\n";
        f.close();
        json config = {{"alpha", a.alpha}, {"l_block", a.l_block}, {"tol", a.tol}};
        write_manifest(a.out, "rate", config, 0, started, iso_timestamp());
    }
    return 0;
}

struct ConvergenceArgs {
    mmnet::SimConfig cfg;
    std::vector<int> m_list{16, 64, 256, 1024};
    long realizations = 1000;
    long fading_draws = 100;
    std::string out;
};

int cmd_convergence(const ConvergenceArgs& a) {
    const std::string started = iso_timestamp();
    const auto rows = mmnet::run_convergence_study(a.cfg, a.m_list,
                                                   a.realizations,
                                                   a.fading_draws);

    std::ofstream f = open_output(a.out);
    f << "m_antennas,median_rel_gap,p90_rel_gap\n";
    for (const auto& r : rows)
        f << fmt::format("{},{},{}\n", r.m_antennas, r.median_rel_gap,
                         r.p90_rel_gap);
    f.close();

    json config = config_to_json(a.cfg);
    config["m_list"] = a.m_list;
    config["realizations"] = a.realizations;
    config["fading_draws"] = a.fading_draws;
    write_manifest(a.out, "convergence", config, a.cfg.seed, started,
                   iso_timestamp());
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"coverage and rate analysis of many-antenna cellular networks"};
    app.require_subcommand(1);
    app.set_version_flag("--version", kVersion);

    CoverageArgs cov;
    CLI::App* cov_cmd =
        app.add_subcommand("coverage", "analytic coverage curve (CSV)");
    cov_cmd->add_option("--alpha", cov.alpha, "path loss exponent (> 2)");
    cov_cmd->add_option("--t-min-db", cov.t_min_db, "lowest threshold, dB");
    cov_cmd->add_option("--t-max-db", cov.t_max_db, "highest threshold, dB");
    cov_cmd->add_option("--points", cov.points, "grid size");
    cov_cmd->add_option("--method", cov.method, "integral | closed | baseline")
        ->check(CLI::IsMember({"integral", "closed", "baseline"}));
    cov_cmd->add_option("--tol", cov.tol, "integration tolerance");
    cov_cmd->add_option("--out", cov.out, "output CSV path")->required();

    SimulateArgs sim;
    std::string sim_mode;
    std::string sim_config_file;
    CLI::App* sim_cmd =
        app.add_subcommand("simulate", "Monte Carlo coverage campaign (CSV)");
    sim_cmd->add_option("--config", sim_config_file,
                        "key=value file with SimConfig defaults");
    auto* mode_opt = sim_cmd->add_option("--mode", sim_mode,
                                         "asymptotic_dl | finite_dl | "
                                         "power_constrained_dl | uplink | "
                                         "baseline_single_antenna");
    auto* alpha_opt = sim_cmd->add_option("--alpha", sim.cfg.alpha);
    auto* m_opt = sim_cmd->add_option("--m-antennas", sim.cfg.m_antennas);
    auto* k_opt = sim_cmd->add_option("--k-pilots", sim.cfg.k_pilots);
    auto* n_opt = sim_cmd->add_option("--samples", sim.cfg.n_samples);
    auto* seed_opt = sim_cmd->add_option("--seed", sim.cfg.seed);
    auto* win_opt = sim_cmd->add_option("--window-radius", sim.cfg.window_radius,
                                        "sampling window radius, meters");
    sim_cmd->add_option("--t-min-db", sim.t_min_db);
    sim_cmd->add_option("--t-max-db", sim.t_max_db);
    sim_cmd->add_option("--points", sim.points);
    sim_cmd->add_option("--threads", sim.threads, "worker threads");
    sim_cmd->add_option("--out", sim.out, "output CSV path")->required();

    RateArgs rate;
    CLI::App* rate_cmd = app.add_subcommand("rate", "rate report (JSON)");
    rate_cmd->add_option("--alpha", rate.alpha);
    rate_cmd->add_option("--l-block", rate.l_block,
                         "channel uses per coherence block");
    rate_cmd->add_option("--tol", rate.tol);
    rate_cmd->add_option("--out", rate.out, "output path (default: stdout)");

    ConvergenceArgs conv;
    conv.cfg.window_radius = 640.0;  // ratio statistics need no large window
    CLI::App* conv_cmd =
        app.add_subcommand("convergence", "finite-antenna gap study (CSV)");
    conv_cmd->add_option("--m-list", conv.m_list,
                         "ascending antenna counts (comma separated)")
        ->delimiter(',');
    conv_cmd->add_option("--alpha", conv.cfg.alpha);
    conv_cmd->add_option("--k-pilots", conv.cfg.k_pilots);
    conv_cmd->add_option("--samples", conv.realizations,
                         "geometry realizations");
    conv_cmd->add_option("--fading-draws", conv.fading_draws,
                         "fading draws per realization");
    conv_cmd->add_option("--seed", conv.cfg.seed);
    conv_cmd->add_option("--window-radius", conv.cfg.window_radius);
    conv_cmd->add_option("--out", conv.out, "output CSV path")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    }

    try {
        if (cov_cmd->parsed()) return cmd_coverage(cov);
        if (sim_cmd->parsed()) {
            // Config file first, explicit flags override.
            mmnet::SimConfig flag_values = sim.cfg;
            if (!sim_config_file.empty())
                apply_config_file(sim_config_file, sim.cfg);
            if (mode_opt->count()) sim.cfg.mode = mmnet::mode_from_string(sim_mode);
            if (alpha_opt->count()) sim.cfg.alpha = flag_values.alpha;
            if (m_opt->count()) sim.cfg.m_antennas = flag_values.m_antennas;
            if (k_opt->count()) sim.cfg.k_pilots = flag_values.k_pilots;
            if (n_opt->count()) sim.cfg.n_samples = flag_values.n_samples;
            if (seed_opt->count()) sim.cfg.seed = flag_values.seed;
            if (win_opt->count()) sim.cfg.window_radius = flag_values.window_radius;
            return cmd_simulate(sim);
        }
        if (rate_cmd->parsed()) return cmd_rate(rate);
        if (conv_cmd->parsed()) return cmd_convergence(conv);
    } catch (const mmnet::InvalidParameterError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const mmnet::NumericalFailureError& e) {
        std::cerr << "numerical failure: " << e.what()
                  << fmt::format(" (achieved error {:g} after {} iterations)\n",
                                 e.achieved_error, e.iterations);
        return 3;
    } catch (const mmnet::WindowTooSmallError& e) {
        std::cerr << "invalid campaign: " << e.what() << "\n";
        return 4;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 0;
}
