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

#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "spwt/spwt.hpp"
#include "support/oracles.hpp"

using namespace spwt;

namespace
{

Scenario reference_scenario()
{
    const double carrier = 3.0e9;
    ArrayGeometry g(32, 0.5 * kLightSpeed / carrier, carrier, 5.0e6 / 1024.0, 1024);
    return Scenario(g, PolarPosition::from_degrees(30.0, 650.0), PolarPosition::from_degrees(100.0, 550.0), 1.0);
}

TrialConfig quick_config(long long symbols, int allocations)
{
    TrialConfig cfg;
    cfg.symbols_per_point = symbols;
    cfg.allocations_per_point = allocations;
    cfg.master_seed = 97;
    return cfg;
}

} // namespace

TEST_CASE("qpsk gray map round-trips and has unit energy")
{
    for (int b0 = 0; b0 < 2; ++b0)
        for (int b1 = 0; b1 < 2; ++b1)
        {
            const cdouble x = qpsk_modulate(b0, b1);
            CHECK(std::norm(x) == Catch::Approx(1.0).epsilon(1e-15));
            int d0 = -1, d1 = -1;
            qpsk_demodulate(x, d0, d1);
            CHECK(d0 == b0);
            CHECK(d1 == b1);
        }
    // adjacent constellation points differ in exactly one bit
    int a0, a1, b0, b1;
    qpsk_demodulate({1.0, 1.0}, a0, a1);
    qpsk_demodulate({1.0, -1.0}, b0, b1);
    CHECK((a0 != b0) + (a1 != b1) == 1);
}

TEST_CASE("complex gaussian draws have unit mean power")
{
    RngStream rng(51, {0});
    double acc = 0.0;
    const int n = 100000;
    for (int i = 0; i < n; ++i)
        acc += std::norm(rng.gaussian_c1());
    CHECK(acc / n == Catch::Approx(1.0).margin(0.01));
}

TEST_CASE("wilson interval")
{
    const WilsonInterval a = wilson95(10, 1000);
    CHECK(a.low == Catch::Approx(0.005440754445529249).epsilon(1e-12));
    CHECK(a.high == Catch::Approx(0.018309468870314772).epsilon(1e-12));
    const WilsonInterval b = wilson95(0, 100);
    CHECK(b.low == 0.0);
    CHECK(b.high == Catch::Approx(0.036993498206985676).epsilon(1e-12));
    const WilsonInterval c = wilson95(0, 0);
    CHECK(c.low == 0.0);
    CHECK(c.high == 1.0);
    // the interval brackets the point estimate
    const WilsonInterval d = wilson95(37, 213);
    const double p = 37.0 / 213.0;
    CHECK(d.low < p);
    CHECK(d.high > p);
}

TEST_CASE("composite link energies match the metric-level powers")
{
    const Scenario scn = reference_scenario();
    const PowerSplit split = split_for_snr_db(12.0, 0.5, 1e-9, scn);
    RngStream rng(52, {0});
    const FrequencyAllocation alloc = draw_allocation(scn.geometry, rng);
    for (Scheme scheme : {Scheme::kEab, Scheme::kLeakage, Scheme::kMaxRp})
    {
        const Beamformer bf = build_beamformer(scheme, scn, alloc, split);
        const CompositeLink link = composite_link(bf, split, scn);
        const double g_d = path_loss(scn.bob.range_m, 1.0);
        const double g_e = path_loss(scn.eve.range_m, 1.0);
        CHECK(std::norm(link.bob_cm) ==
              Catch::Approx(g_d * split.beta * split.total_power_w * coherent_power(scn.bob, bf.v_cm, scn, alloc))
                  .epsilon(1e-12));
        CHECK(std::norm(link.eve_an) ==
              Catch::Approx(g_e * (1.0 - split.beta) * split.total_power_w *
                            coherent_power(scn.eve, bf.v_an, scn, alloc))
                  .epsilon(1e-12));
        // the scalar SINR assembled from the link equals the metric
        const double sinr =
            std::norm(link.bob_cm) / (std::norm(link.bob_an) + split.noise_power_w);
        CHECK(sinr == Catch::Approx(sinr_cm_at(scn.bob, bf, split, scn)).epsilon(1e-12));
    }
}

TEST_CASE("no-AN EAB link reproduces the coherent QPSK error rate")
{
    // with beta = 1 and phase alignment the Bob link is pure AWGN at the
    // configured SNR, so the BER must match Q(sqrt(SNR))
    const Scenario scn = reference_scenario();
    const double snr_db = 7.333493162962927; // Q(sqrt(snr)) = 1e-2
    const PowerSplit split = split_for_snr_db(snr_db, 1.0, 1e-9, scn);
    TrialConfig cfg = quick_config(100000, 10);
    const LinkCounts counts = simulate_ber_point(Scheme::kEab, scn, split, cfg, derive_key(7, {1}));
    REQUIRE(counts.bits == 200000);
    const double theory = oracle::q_function(std::sqrt(std::pow(10.0, snr_db / 10.0)));
    CHECK(theory == Catch::Approx(0.01).epsilon(1e-6));
    const WilsonInterval ci = wilson95(counts.errors, counts.bits);
    CHECK(ci.low <= theory);
    CHECK(ci.high >= theory);
}

TEST_CASE("counts are invariant to worker count and to eve tracking")
{
    const Scenario scn = reference_scenario();
    const PowerSplit split = split_for_snr_db(10.0, 0.5, 1e-9, scn);

    TrialConfig cfg = quick_config(20000, 8);
    cfg.n_threads = 1;
    const LinkCounts a = simulate_ber_point(Scheme::kLeakage, scn, split, cfg, derive_key(8, {1}), true);
    cfg.n_threads = 4;
    const LinkCounts b = simulate_ber_point(Scheme::kLeakage, scn, split, cfg, derive_key(8, {1}), true);
    CHECK(a.bits == b.bits);
    CHECK(a.errors == b.errors);
    CHECK(a.eve_bits == b.eve_bits);
    CHECK(a.eve_errors == b.eve_errors);

    // disabling Eve tracking must not disturb Bob's sequence
    const LinkCounts c = simulate_ber_point(Scheme::kLeakage, scn, split, cfg, derive_key(8, {1}), false);
    CHECK(c.bits == a.bits);
    CHECK(c.errors == a.errors);
    CHECK(c.eve_bits == 0);
    CHECK(c.eve_errors == 0);
}

TEST_CASE("per-symbol reallocation is deterministic across worker counts")
{
    const Scenario scn = reference_scenario();
    const PowerSplit split = split_for_snr_db(10.0, 0.5, 1e-9, scn);
    TrialConfig cfg = quick_config(3000, 1);
    cfg.reallocate_per_symbol = true;
    cfg.n_threads = 1;
    const LinkCounts a = simulate_ber_point(Scheme::kEab, scn, split, cfg, derive_key(9, {1}), true);
    cfg.n_threads = 3;
    const LinkCounts b = simulate_ber_point(Scheme::kEab, scn, split, cfg, derive_key(9, {1}), true);
    CHECK(a.bits == 6000);
    CHECK(a.bits == b.bits);
    CHECK(a.errors == b.errors);
    CHECK(a.eve_errors == b.eve_errors);
}

TEST_CASE("jamming schemes leave Eve far noisier than Bob")
{
    const Scenario scn = reference_scenario();
    const PowerSplit split = split_for_snr_db(14.0, 0.5, 1e-9, scn);
    TrialConfig cfg = quick_config(40000, 10);
    for (Scheme scheme : {Scheme::kLeakage, Scheme::kMaxRp})
    {
        const LinkCounts counts =
            simulate_ber_point(scheme, scn, split, cfg, derive_key(10, {scheme_stream_id(scheme)}), true);
        const double bob = double(counts.errors) / double(counts.bits);
        const double eve = double(counts.eve_errors) / double(counts.eve_bits);
        INFO(to_string(scheme) << ": bob " << bob << " eve " << eve);
        CHECK(bob < 0.05);
        CHECK(eve > 0.2);
    }
}

TEST_CASE("ber_curve layout and cell arithmetic")
{
    const Scenario scn = reference_scenario();
    TrialConfig cfg = quick_config(5000, 5);
    const std::vector<double> snrs{6.0, 12.0};
    const std::vector<Scheme> schemes{Scheme::kEab, Scheme::kMaxRp};
    const BerReport rep = ber_curve(schemes, scn, 0.5, 1e-9, cfg, snrs, true);
    REQUIRE(rep.cells.size() == 4);
    // scheme-major, SNR-minor
    CHECK(rep.cells[0].scheme == Scheme::kEab);
    CHECK(rep.cells[0].snr_db == 6.0);
    CHECK(rep.cells[1].scheme == Scheme::kEab);
    CHECK(rep.cells[1].snr_db == 12.0);
    CHECK(rep.cells[2].scheme == Scheme::kMaxRp);
    for (const BerCell &cell : rep.cells)
    {
        CHECK(cell.bits == 10000);
        CHECK(cell.ber == Catch::Approx(double(cell.errors) / double(cell.bits)).margin(0.0));
        CHECK(cell.ci_low <= cell.ber);
        CHECK(cell.ci_high >= cell.ber);
        CHECK(cell.eve_tracked);
        CHECK(cell.eve_bits == 10000);
    }
    CHECK_THROWS_AS(ber_curve(schemes, scn, 0.5, 1e-9, cfg, {}, false), std::invalid_argument);
}

TEST_CASE("ber decreases with SNR for every scheme")
{
    const Scenario scn = reference_scenario();
    TrialConfig cfg = quick_config(60000, 10);
    const std::vector<double> snrs{4.0, 16.0};
    const BerReport rep = ber_curve({Scheme::kEab, Scheme::kLeakage, Scheme::kMaxRp}, scn, 0.5, 1e-9, cfg, snrs);
    for (std::size_t s = 0; s < 3; ++s)
    {
        const BerCell &low = rep.cells[2 * s];
        const BerCell &high = rep.cells[2 * s + 1];
        INFO(to_string(low.scheme) << ": " << low.ber << " -> " << high.ber);
        CHECK(low.ber > high.ber);
        // the 12 dB step must separate the confidence intervals
        CHECK(low.ci_low > high.ci_high);
    }
}

TEST_CASE("sr_curve layout, nonnegativity, and dispersion")
{
    const Scenario scn = reference_scenario();
    TrialConfig cfg = quick_config(1, 40);
    const std::vector<double> snrs{-10.0, 5.0, 20.0};
    const SrReport rep = sr_curve({Scheme::kEab, Scheme::kLeakage}, scn, 0.5, 1e-9, cfg, snrs);
    REQUIRE(rep.cells.size() == 6);
    CHECK(rep.cells[0].scheme == Scheme::kEab);
    CHECK(rep.cells[3].scheme == Scheme::kLeakage);
    for (const SrCell &cell : rep.cells)
    {
        CHECK(cell.sr_mean >= 0.0);
        CHECK(std::isfinite(cell.sr_mean));
        CHECK(cell.sr_stderr >= 0.0);
    }
    // more power, more secrecy, for the averaged reference scenario
    CHECK(rep.cells[2].sr_mean > rep.cells[0].sr_mean);

    // a single allocation has no dispersion estimate
    TrialConfig one = quick_config(1, 1);
    const SrReport single = sr_curve({Scheme::kEab}, scn, 0.5, 1e-9, one, {10.0});
    REQUIRE(single.cells.size() == 1);
    CHECK(single.cells[0].sr_stderr == 0.0);
}

TEST_CASE("sr_curve is deterministic across worker counts")
{
    const Scenario scn = reference_scenario();
    TrialConfig cfg = quick_config(1, 16);
    cfg.n_threads = 1;
    const SrReport a = sr_curve({Scheme::kMaxRp}, scn, 0.5, 1e-9, cfg, {8.0});
    cfg.n_threads = 4;
    const SrReport b = sr_curve({Scheme::kMaxRp}, scn, 0.5, 1e-9, cfg, {8.0});
    CHECK(a.cells[0].sr_mean == b.cells[0].sr_mean);
    CHECK(a.cells[0].sr_stderr == b.cells[0].sr_stderr);
}

TEST_CASE("trial config validation")
{
    TrialConfig cfg;
    cfg.symbols_per_point = 0;
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
    cfg.symbols_per_point = 10;
    cfg.allocations_per_point = 0;
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
}
