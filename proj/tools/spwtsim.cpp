// SPDX-License-Identifier: Apache-2.0
//
// spwt: secure precise wireless transmission and jamming simulation library
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// spwtsim: command-line front end. Subcommands: beampattern | ber | sr |
// weights. Every run writes one CSV plus a <out>.manifest sidecar that holds
// the fully resolved configuration and seed; output bytes are a pure function
// of (config, flags, seed) for any worker count.

#include <cstdint>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "spwt/spwt.hpp"

namespace
{

// exit codes shared by all subcommands
constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitDegenerate = 3;
constexpr int kExitIo = 4;
constexpr int kExitInternal = 1;

std::uint64_t entropy_seed()
{
    std::random_device rd;
    return (std::uint64_t(rd()) << 32) ^ std::uint64_t(rd());
}

// "START:STOP:STEP" -> inclusive lattice
std::vector<double> parse_range(const std::string &text)
{
    double start = 0.0, stop = 0.0, step = 0.0;
    char extra = 0;
    if (std::sscanf(text.c_str(), "%lf:%lf:%lf%c", &start, &stop, &step, &extra) != 3)
        throw spwt::config_error("malformed range '" + text + "' (expected START:STOP:STEP)");
    if (!(step > 0.0))
        throw spwt::config_error("range '" + text + "': STEP must be positive");
    if (!(stop >= start))
        throw spwt::config_error("range '" + text + "': STOP must not precede START");
    const int count = int((stop - start) / step + 1e-9) + 1;
    std::vector<double> grid(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i)
        grid[std::size_t(i)] = start + double(i) * step;
    return grid;
}

spwt::AxisSpec parse_axis(const std::string &text)
{
    const std::vector<double> grid = parse_range(text);
    double start = 0.0, stop = 0.0, step = 0.0;
    std::sscanf(text.c_str(), "%lf:%lf:%lf", &start, &stop, &step);
    return spwt::AxisSpec(start, stop, step);
}

std::vector<spwt::Scheme> parse_schemes(const std::vector<std::string> &names)
{
    std::vector<spwt::Scheme> schemes;
    for (const std::string &n : names)
        schemes.push_back(spwt::scheme_from_string(n));
    return schemes;
}

std::string range_to_string(const std::vector<double> &grid)
{
    std::string out;
    for (std::size_t i = 0; i < grid.size(); ++i)
    {
        if (i)
            out += ' ';
        out += spwt::fmt_g17(grid[i]);
    }
    return out;
}

struct CommonArgs
{
    std::string config_path;
    std::string out_path;
    std::uint64_t seed = 0;
    int threads = 0;
    CLI::Option *seed_opt = nullptr;

    void attach(CLI::App *cmd)
    {
        cmd->add_option("--config", config_path, "scenario config file (key = value)");
        cmd->add_option("--out", out_path, "output CSV path")->required();
        seed_opt = cmd->add_option("--seed", seed, "master seed (default: drawn from entropy)");
        cmd->add_option("--threads", threads, "worker threads, 0 = hardware concurrency (never changes results)");
    }

    spwt::SimConfig load() const
    {
        if (config_path.empty())
        {
            spwt::SimConfig cfg;
            cfg.validate();
            return cfg;
        }
        return spwt::load_config(config_path);
    }

    std::uint64_t resolve_seed()
    {
        if (seed_opt != nullptr && seed_opt->count() == 0)
            seed = entropy_seed();
        return seed;
    }
};

void write_outputs(const std::string &out_path, const std::string &csv, spwt::RunManifest manifest)
{
    manifest.timestamp_utc = spwt::utc_timestamp_now();
    spwt::write_file_atomic(out_path, csv);
    spwt::write_file_atomic(out_path + ".manifest", spwt::manifest_to_text(manifest));
}

int run_guarded(const std::function<void()> &body)
{
    try
    {
        body();
        return kExitOk;
    }
    catch (const spwt::config_error &e)
    {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    }
    catch (const spwt::degenerate_scenario_error &e)
    {
        std::cerr << "degenerate scenario: " << e.what() << "\n";
        return kExitDegenerate;
    }
    catch (const spwt::io_error &e)
    {
        std::cerr << "i/o error: " << e.what() << "\n";
        return kExitIo;
    }
    catch (const std::invalid_argument &e)
    {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    }
    catch (const std::exception &e)
    {
        std::cerr << "internal error: " << e.what() << "\n";
        return kExitInternal;
    }
}

} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"secure precise wireless transmission and jamming simulator"};
    app.require_subcommand(1);

    // ---- beampattern ----------------------------------------------------
    auto *bp = app.add_subcommand("beampattern", "range-angle SINR surfaces for one scheme");
    CommonArgs bp_common;
    bp_common.attach(bp);
    std::string bp_scheme = "eab";
    double bp_snr_db = 14.0;
    std::string bp_theta = "0:180:1";
    std::string bp_r = "10:1200:5";
    int bp_allocs = 10;
    bp->add_option("--scheme", bp_scheme, "eab | leakage | maxrp")->default_str("eab");
    bp->add_option("--snr-db", bp_snr_db, "operating SNR in dB (g_d P_s / sigma^2)");
    bp->add_option("--theta-range", bp_theta, "theta grid START:STOP:STEP in degrees");
    bp->add_option("--r-range", bp_r, "range grid START:STOP:STEP in meters");
    bp->add_option("--allocations", bp_allocs, "allocation draws averaged into the surface");

    // ---- ber -------------------------------------------------------------
    auto *ber = app.add_subcommand("ber", "Monte-Carlo QPSK BER curve");
    CommonArgs ber_common;
    ber_common.attach(ber);
    std::vector<std::string> ber_schemes{};
    double ber_snr_db = 0.0;
    std::string ber_snr_range;
    long long ber_symbols = 500000;
    int ber_allocs = 20;
    bool ber_realloc = false;
    bool ber_track_eve = false;
    auto *ber_schemes_opt = ber->add_option("--scheme", ber_schemes, "repeatable; default: all three");
    auto *ber_snr_opt = ber->add_option("--snr-db", ber_snr_db, "single SNR point in dB");
    auto *ber_range_opt = ber->add_option("--snr-range", ber_snr_range, "SNR grid START:STOP:STEP in dB");
    ber->add_option("--symbols", ber_symbols, "QPSK symbols per point (bits = 2x)");
    ber->add_option("--allocations", ber_allocs, "allocation blocks per point");
    ber->add_flag("--reallocate-per-symbol", ber_realloc, "fresh allocation for every symbol");
    ber->add_flag("--track-eve", ber_track_eve, "also record Eve's BER on the CM bits");

    // ---- sr --------------------------------------------------------------
    auto *sr = app.add_subcommand("sr", "secrecy-rate curve over allocation draws");
    CommonArgs sr_common;
    sr_common.attach(sr);
    std::vector<std::string> sr_schemes{};
    double sr_snr_db = 0.0;
    std::string sr_snr_range;
    int sr_allocs = 100;
    auto *sr_schemes_opt = sr->add_option("--scheme", sr_schemes, "repeatable; default: all three");
    auto *sr_snr_opt = sr->add_option("--snr-db", sr_snr_db, "single SNR point in dB");
    auto *sr_range_opt = sr->add_option("--snr-range", sr_snr_range, "SNR grid START:STOP:STEP in dB");
    sr->add_option("--allocations", sr_allocs, "allocation draws averaged per point");

    // ---- weights ---------------------------------------------------------
    auto *wt = app.add_subcommand("weights", "dump one beamformer for inspection");
    CommonArgs wt_common;
    wt_common.attach(wt);
    std::string wt_scheme = "eab";
    double wt_snr_db = 14.0;
    std::string wt_allocation;
    wt->add_option("--scheme", wt_scheme, "eab | leakage | maxrp");
    wt->add_option("--snr-db", wt_snr_db, "operating SNR in dB");
    wt->add_option("--allocation", wt_allocation, "fixed comma-separated subcarrier indices (default: seeded draw)");

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::CallForHelp &e)
    {
        return app.exit(e);
    }
    catch (const CLI::CallForAllHelp &e)
    {
        return app.exit(e);
    }
    catch (const CLI::ParseError &e)
    {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    }

    if (bp->parsed())
        return run_guarded([&] {
            const spwt::SimConfig cfg = bp_common.load();
            const std::uint64_t seed = bp_common.resolve_seed();
            const spwt::Scenario scn = cfg.scenario();
            const spwt::PowerSplit split = spwt::split_for_snr_db(bp_snr_db, cfg.beta, cfg.noise_power_w(), scn);
            const spwt::GridSpec grid{parse_axis(bp_theta), parse_axis(bp_r)};
            spwt::RngStream stream(seed, {spwt::kStreamPattern, spwt::scheme_stream_id(spwt::scheme_from_string(bp_scheme))});
            const spwt::BeampatternGrid surf = spwt::beampattern(scn, split, spwt::scheme_from_string(bp_scheme),
                                                                 grid, bp_allocs, stream, bp_common.threads);
            spwt::RunManifest man;
            man.command = "beampattern";
            man.config = cfg;
            man.seed = seed;
            man.parameters = {{"scheme", bp_scheme},
                              {"snr_db", spwt::fmt_g17(bp_snr_db)},
                              {"theta_range", bp_theta},
                              {"r_range", bp_r},
                              {"allocations", std::to_string(bp_allocs)}};
            write_outputs(bp_common.out_path, spwt::beampattern_csv(surf), man);
            std::cout << "wrote " << bp_common.out_path << " (" << surf.samples.size() << " cells, "
                      << surf.n_allocations_averaged << " allocations, seed " << seed << ")\n";
        });

    if (ber->parsed())
        return run_guarded([&] {
            const spwt::SimConfig cfg = ber_common.load();
            const std::uint64_t seed = ber_common.resolve_seed();
            const spwt::Scenario scn = cfg.scenario();
            if (*ber_snr_opt && *ber_range_opt)
                throw spwt::config_error("--snr-db and --snr-range are mutually exclusive");
            const std::vector<double> grid = *ber_snr_opt   ? std::vector<double>{ber_snr_db}
                                             : *ber_range_opt ? parse_range(ber_snr_range)
                                                              : parse_range("0:20:2");
            const std::vector<spwt::Scheme> schemes =
                *ber_schemes_opt ? parse_schemes(ber_schemes)
                                 : std::vector<spwt::Scheme>{spwt::Scheme::kEab, spwt::Scheme::kLeakage,
                                                             spwt::Scheme::kMaxRp};
            spwt::TrialConfig trial;
            trial.symbols_per_point = ber_symbols;
            trial.allocations_per_point = ber_allocs;
            trial.reallocate_per_symbol = ber_realloc;
            trial.master_seed = seed;
            trial.n_threads = ber_common.threads;
            const spwt::BerReport report =
                spwt::ber_curve(schemes, scn, cfg.beta, cfg.noise_power_w(), trial, grid, ber_track_eve);
            spwt::RunManifest man;
            man.command = "ber";
            man.config = cfg;
            man.seed = seed;
            std::string scheme_names;
            for (spwt::Scheme s : schemes)
            {
                if (!scheme_names.empty())
                    scheme_names += ',';
                scheme_names += spwt::to_string(s);
            }
            man.parameters = {{"schemes", scheme_names},
                              {"snr_grid_db", range_to_string(grid)},
                              {"symbols", std::to_string(ber_symbols)},
                              {"allocations", std::to_string(ber_allocs)},
                              {"reallocate_per_symbol", ber_realloc ? "true" : "false"},
                              {"track_eve", ber_track_eve ? "true" : "false"}};
            write_outputs(ber_common.out_path, spwt::ber_csv(report), man);
            std::cout << "wrote " << ber_common.out_path << " (" << report.cells.size() << " cells, seed " << seed
                      << ")\n";
        });

    if (sr->parsed())
        return run_guarded([&] {
            const spwt::SimConfig cfg = sr_common.load();
            const std::uint64_t seed = sr_common.resolve_seed();
            const spwt::Scenario scn = cfg.scenario();
            if (*sr_snr_opt && *sr_range_opt)
                throw spwt::config_error("--snr-db and --snr-range are mutually exclusive");
            const std::vector<double> grid = *sr_snr_opt   ? std::vector<double>{sr_snr_db}
                                             : *sr_range_opt ? parse_range(sr_snr_range)
                                                             : parse_range("-10:20:2");
            const std::vector<spwt::Scheme> schemes =
                *sr_schemes_opt ? parse_schemes(sr_schemes)
                                : std::vector<spwt::Scheme>{spwt::Scheme::kEab, spwt::Scheme::kLeakage,
                                                            spwt::Scheme::kMaxRp};
            spwt::TrialConfig trial;
            trial.allocations_per_point = sr_allocs;
            trial.master_seed = seed;
            trial.n_threads = sr_common.threads;
            const spwt::SrReport report = spwt::sr_curve(schemes, scn, cfg.beta, cfg.noise_power_w(), trial, grid);
            spwt::RunManifest man;
            man.command = "sr";
            man.config = cfg;
            man.seed = seed;
            std::string scheme_names;
            for (spwt::Scheme s : schemes)
            {
                if (!scheme_names.empty())
                    scheme_names += ',';
                scheme_names += spwt::to_string(s);
            }
            man.parameters = {{"schemes", scheme_names},
                              {"snr_grid_db", range_to_string(grid)},
                              {"allocations", std::to_string(sr_allocs)}};
            write_outputs(sr_common.out_path, spwt::sr_csv(report), man);
            std::cout << "wrote " << sr_common.out_path << " (" << report.cells.size() << " cells, seed " << seed
                      << ")\n";
        });

    if (wt->parsed())
        return run_guarded([&] {
            const spwt::SimConfig cfg = wt_common.load();
            const std::uint64_t seed = wt_common.resolve_seed();
            const spwt::Scenario scn = cfg.scenario();
            const spwt::Scheme scheme = spwt::scheme_from_string(wt_scheme);
            const spwt::PowerSplit split = spwt::split_for_snr_db(wt_snr_db, cfg.beta, cfg.noise_power_w(), scn);
            spwt::RngStream stream(seed, {spwt::kStreamWeights, spwt::scheme_stream_id(scheme)});
            const spwt::FrequencyAllocation alloc =
                wt_allocation.empty() ? spwt::draw_allocation(scn.geometry, stream)
                                      : spwt::allocation_from_string(scn.geometry, wt_allocation);
            const spwt::Beamformer bf = spwt::build_beamformer(scheme, scn, alloc, split);
            if (scheme == spwt::Scheme::kMaxRp)
            {
                // pre-modulus hard-null residuals; the composed weights keep
                // only the amplitudes, so their null is approximate
                const spwt::cvector a = spwt::maxrp_cm(scn, alloc, split);
                const spwt::cvector b = spwt::maxrp_an(scn, alloc, split);
                const spwt::cvector p_e = spwt::aligned_channel(scn.geometry, alloc, scn.bob, scn.eve);
                const spwt::cvector q_b = spwt::aligned_channel(scn.geometry, alloc, scn.eve, scn.bob);
                std::cout << "maxrp pre-modulus null residual |p_E^H a| = "
                          << spwt::fmt_g17(std::abs(spwt::vdot(p_e, a))) << "\n";
                std::cout << "maxrp pre-modulus null residual |q_B^H b| = "
                          << spwt::fmt_g17(std::abs(spwt::vdot(q_b, b))) << "\n";
            }
            spwt::RunManifest man;
            man.command = "weights";
            man.config = cfg;
            man.seed = seed;
            man.parameters = {{"scheme", wt_scheme},
                              {"snr_db", spwt::fmt_g17(wt_snr_db)},
                              {"allocation", spwt::allocation_to_string(alloc)}};
            write_outputs(wt_common.out_path, spwt::weights_csv(bf), man);
            std::cout << "wrote " << wt_common.out_path << " (seed " << seed << ")\n";
        });

    return kExitInternal; // unreachable: require_subcommand(1)
}
