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

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "spwt/array.hpp"
#include "spwt/beamform.hpp"
#include "spwt/detail/parallel.hpp"
#include "spwt/metrics.hpp"
#include "spwt/rng.hpp"

namespace spwt
{

// Top-level substream tags, one per experiment kind; never reuse values.
constexpr std::uint64_t kStreamBer = 1;
constexpr std::uint64_t kStreamSr = 2;
constexpr std::uint64_t kStreamPattern = 3;
constexpr std::uint64_t kStreamWeights = 4;

// Second-level tags inside one Monte-Carlo point.
constexpr std::uint64_t kSubAllocation = 0xA110C;
constexpr std::uint64_t kSubSymbol = 0x517B01;

// Gray map: bit b0 sets the sign of the real part, b1 of the imaginary part;
// all four points unit energy.
inline cdouble qpsk_modulate(int b0, int b1)
{
    constexpr double a = 0.70710678118654752440; // 1/sqrt(2)
    return {b0 ? -a : a, b1 ? -a : a};
}

// Coherent minimum-distance decision; per-quadrature sign test.
inline void qpsk_demodulate(cdouble equalized, int &b0, int &b1)
{
    b0 = equalized.real() < 0.0 ? 1 : 0;
    b1 = equalized.imag() < 0.0 ? 1 : 0;
}

struct TrialConfig
{
    long long symbols_per_point = 500000;
    int allocations_per_point = 20;
    bool reallocate_per_symbol = false;
    std::uint64_t master_seed = 1;
    int n_threads = 0; // 0 = hardware concurrency; results do not depend on it

    void validate() const
    {
        if (symbols_per_point < 1)
            throw std::invalid_argument("TrialConfig: symbols_per_point must be at least 1");
        if (allocations_per_point < 1)
            throw std::invalid_argument("TrialConfig: allocations_per_point must be at least 1");
    }
};

struct LinkCounts
{
    long long bits = 0;
    long long errors = 0;
    long long eve_bits = 0;
    long long eve_errors = 0;
};

// Composite scalar channels of one allocation block: y = c_cm x + c_an z + w.
struct CompositeLink
{
    cdouble bob_cm, bob_an;
    cdouble eve_cm, eve_an;
};

inline CompositeLink composite_link(const Beamformer &bf, const PowerSplit &split, const Scenario &scn)
{
    const double g_d = path_loss(scn.bob.range_m, scn.reference_range_m);
    const double g_e = path_loss(scn.eve.range_m, scn.reference_range_m);
    const double cm_amp = std::sqrt(split.beta * split.total_power_w);
    const double an_amp = std::sqrt((1.0 - split.beta) * split.total_power_w);
    const SteeringVector h_b = steering_vector(scn.geometry, bf.allocation, scn.bob);
    const SteeringVector h_e = steering_vector(scn.geometry, bf.allocation, scn.eve);
    return CompositeLink{
        std::sqrt(g_d) * cm_amp * vdot(h_b.entries, bf.v_cm),
        std::sqrt(g_d) * an_amp * vdot(h_b.entries, bf.v_an),
        std::sqrt(g_e) * cm_amp * vdot(h_e.entries, bf.v_cm),
        std::sqrt(g_e) * an_amp * vdot(h_e.entries, bf.v_an),
    };
}

namespace detail
{

// One QPSK symbol through the link. The draw order (bits, AN, Bob noise, Eve
// noise) is part of the determinism contract; Eve's draw comes last so
// enabling the flag never disturbs Bob's sequence.
inline void run_symbol(RngStream &stream, const CompositeLink &link, double sigma2, bool track_eve, LinkCounts &out)
{
    const std::uint64_t u = stream.next_u64();
    const int b0 = int(u & 1u);
    const int b1 = int((u >> 1) & 1u);
    const cdouble x = qpsk_modulate(b0, b1);
    const cdouble z = stream.gaussian_c1();
    const double noise_amp = std::sqrt(sigma2);
    const cdouble w_b = noise_amp * stream.gaussian_c1();

    const cdouble y_b = link.bob_cm * x + link.bob_an * z + w_b;
    int d0 = 0, d1 = 0;
    qpsk_demodulate(y_b / link.bob_cm, d0, d1);
    out.bits += 2;
    out.errors += (d0 != b0) + (d1 != b1);

    if (track_eve)
    {
        const cdouble w_e = noise_amp * stream.gaussian_c1();
        const cdouble y_e = link.eve_cm * x + link.eve_an * z + w_e;
        int e0 = 0, e1 = 0;
        qpsk_demodulate(y_e / link.eve_cm, e0, e1);
        out.eve_bits += 2;
        out.eve_errors += (e0 != b0) + (e1 != b1);
    }
}

} // namespace detail

// Bit-error counts for one (scheme, SNR) point. Substreams are keyed by
// (point_key, allocation index, symbol index), so the counts are identical
// for any worker count; integer accumulation keeps reduction order-free.
inline LinkCounts simulate_ber_point(Scheme scheme, const Scenario &scn, const PowerSplit &split,
                                     const TrialConfig &cfg, std::uint64_t point_key, bool track_eve = false)
{
    cfg.validate();
    const double sigma2 = split.noise_power_w;

    if (cfg.reallocate_per_symbol)
    {
        // one allocation per symbol; chunked over symbol ranges
        const long long n_sym = cfg.symbols_per_point;
        // chunking only partitions the symbol range; keys use the absolute
        // symbol index, so counts stay identical for any chunk count
        const int chunks = int(std::min<long long>(n_sym, 8LL * detail::resolve_threads(cfg.n_threads)));
        std::vector<LinkCounts> slots(static_cast<std::size_t>(chunks));
        const long long base = n_sym / chunks;
        const long long rem = n_sym % chunks;
        detail::parallel_for(chunks, cfg.n_threads, [&](std::int64_t c) {
            const long long lo = c * base + std::min<long long>(c, rem);
            const long long hi = lo + base + (c < rem ? 1 : 0);
            LinkCounts acc;
            for (long long s = lo; s < hi; ++s)
            {
                RngStream alloc_stream(point_key, {kSubAllocation, std::uint64_t(s)});
                const FrequencyAllocation alloc = draw_allocation(scn.geometry, alloc_stream);
                const Beamformer bf = build_beamformer(scheme, scn, alloc, split);
                const CompositeLink link = composite_link(bf, split, scn);
                RngStream sym_stream(point_key, {kSubSymbol, std::uint64_t(s), 0});
                detail::run_symbol(sym_stream, link, sigma2, track_eve, acc);
            }
            slots[std::size_t(c)] = acc;
        });
        LinkCounts total;
        for (const LinkCounts &s : slots)
        {
            total.bits += s.bits;
            total.errors += s.errors;
            total.eve_bits += s.eve_bits;
            total.eve_errors += s.eve_errors;
        }
        return total;
    }

    // block mode: one allocation per block, symbols split as evenly as possible
    const int n_blocks = cfg.allocations_per_point;
    const long long base = cfg.symbols_per_point / n_blocks;
    const long long rem = cfg.symbols_per_point % n_blocks;
    std::vector<LinkCounts> slots(static_cast<std::size_t>(n_blocks));
    detail::parallel_for(n_blocks, cfg.n_threads, [&](std::int64_t b) {
        RngStream alloc_stream(point_key, {kSubAllocation, std::uint64_t(b)});
        const FrequencyAllocation alloc = draw_allocation(scn.geometry, alloc_stream);
        const Beamformer bf = build_beamformer(scheme, scn, alloc, split);
        const CompositeLink link = composite_link(bf, split, scn);
        const long long count = base + (b < rem ? 1 : 0);
        LinkCounts acc;
        for (long long s = 0; s < count; ++s)
        {
            RngStream sym_stream(point_key, {kSubSymbol, std::uint64_t(b), std::uint64_t(s)});
            detail::run_symbol(sym_stream, link, sigma2, track_eve, acc);
        }
        slots[std::size_t(b)] = acc;
    });
    LinkCounts total;
    for (const LinkCounts &s : slots)
    {
        total.bits += s.bits;
        total.errors += s.errors;
        total.eve_bits += s.eve_bits;
        total.eve_errors += s.eve_errors;
    }
    return total;
}

struct WilsonInterval
{
    double low;
    double high;
};

// 95% Wilson score interval for a binomial proportion.
inline WilsonInterval wilson95(long long successes, long long trials)
{
    if (trials <= 0)
        return {0.0, 1.0};
    constexpr double z = 1.959963984540054;
    const double n = double(trials);
    const double p = double(successes) / n;
    const double z2n = z * z / n;
    const double denom = 1.0 + z2n;
    const double center = (p + z2n / 2.0) / denom;
    const double half = z * std::sqrt(p * (1.0 - p) / n + z2n / (4.0 * n)) / denom;
    // the bounds are exactly 0 (resp. 1) at the empty corners; computing them
    // through center/half would leave rounding residue there
    const double low = successes == 0 ? 0.0 : std::max(0.0, center - half);
    const double high = successes == trials ? 1.0 : std::min(1.0, center + half);
    return {low, high};
}

struct BerCell
{
    double snr_db;
    Scheme scheme;
    long long bits;
    long long errors;
    double ber;
    double ci_low;
    double ci_high;
    bool eve_tracked;
    long long eve_bits;
    long long eve_errors;
    double eve_ber;
};

struct BerReport
{
    std::vector<double> snr_db_points;
    std::vector<Scheme> schemes;
    std::vector<BerCell> cells; // scheme-major, SNR-minor
};

inline BerReport ber_curve(const std::vector<Scheme> &schemes, const Scenario &scn, double beta, double noise_power_w,
                           const TrialConfig &cfg, const std::vector<double> &snr_grid_db, bool track_eve = false)
{
    if (snr_grid_db.empty())
        throw std::invalid_argument("ber_curve: empty SNR grid");
    cfg.validate();
    BerReport report;
    report.snr_db_points = snr_grid_db;
    report.schemes = schemes;
    for (Scheme scheme : schemes)
        for (std::size_t pt = 0; pt < snr_grid_db.size(); ++pt)
        {
            const PowerSplit split = split_for_snr_db(snr_grid_db[pt], beta, noise_power_w, scn);
            const std::uint64_t point_key =
                derive_key(cfg.master_seed, {kStreamBer, scheme_stream_id(scheme), std::uint64_t(pt)});
            const LinkCounts counts = simulate_ber_point(scheme, scn, split, cfg, point_key, track_eve);
            const WilsonInterval ci = wilson95(counts.errors, counts.bits);
            report.cells.push_back(BerCell{snr_grid_db[pt], scheme, counts.bits, counts.errors,
                                           counts.bits > 0 ? double(counts.errors) / double(counts.bits) : 0.0,
                                           ci.low, ci.high, track_eve, counts.eve_bits, counts.eve_errors,
                                           counts.eve_bits > 0 ? double(counts.eve_errors) / double(counts.eve_bits)
                                                               : 0.0});
        }
    return report;
}

struct SrCell
{
    double snr_db;
    Scheme scheme;
    double sr_mean;
    double sr_stderr;
};

struct SrReport
{
    std::vector<double> snr_db_points;
    std::vector<Scheme> schemes;
    std::vector<SrCell> cells; // scheme-major, SNR-minor
};

// Secrecy rate averaged over seeded allocation draws per (scheme, SNR) point.
inline SrReport sr_curve(const std::vector<Scheme> &schemes, const Scenario &scn, double beta, double noise_power_w,
                         const TrialConfig &cfg, const std::vector<double> &snr_grid_db)
{
    if (snr_grid_db.empty())
        throw std::invalid_argument("sr_curve: empty SNR grid");
    cfg.validate();
    SrReport report;
    report.snr_db_points = snr_grid_db;
    report.schemes = schemes;
    const int n_alloc = cfg.allocations_per_point;
    for (Scheme scheme : schemes)
        for (std::size_t pt = 0; pt < snr_grid_db.size(); ++pt)
        {
            const PowerSplit split = split_for_snr_db(snr_grid_db[pt], beta, noise_power_w, scn);
            const std::uint64_t point_key =
                derive_key(cfg.master_seed, {kStreamSr, scheme_stream_id(scheme), std::uint64_t(pt)});
            std::vector<double> sr(static_cast<std::size_t>(n_alloc));
            detail::parallel_for(n_alloc, cfg.n_threads, [&](std::int64_t k) {
                RngStream alloc_stream(point_key, {kSubAllocation, std::uint64_t(k)});
                const FrequencyAllocation alloc = draw_allocation(scn.geometry, alloc_stream);
                const Beamformer bf = build_beamformer(scheme, scn, alloc, split);
                sr[std::size_t(k)] = secrecy_rate(bf, split, scn);
            });
            double mean = 0.0;
            for (double v : sr)
                mean += v;
            mean /= double(n_alloc);
            double var = 0.0;
            for (double v : sr)
                var += (v - mean) * (v - mean);
            const double stderr_ = n_alloc > 1 ? std::sqrt(var / double(n_alloc - 1) / double(n_alloc)) : 0.0;
            report.cells.push_back(SrCell{snr_grid_db[pt], scheme, mean, stderr_});
        }
    return report;
}

} // namespace spwt
