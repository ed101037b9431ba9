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

#include <cmath>
#include <cstddef>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "spwt/array.hpp"
#include "spwt/beamform.hpp"
#include "spwt/detail/parallel.hpp"
#include "spwt/linalg.hpp"
#include "spwt/rng.hpp"

namespace spwt
{

// |h(pos)^H v|^2 under the beamformer's allocation
inline double coherent_power(const PolarPosition &pos, const cvector &v, const Scenario &scn,
                             const FrequencyAllocation &alloc)
{
    const SteeringVector h = steering_vector(scn.geometry, alloc, pos);
    return std::norm(vdot(h.entries, v));
}

// SINR of the confidential message at an arbitrary probe point:
//   g(R) beta P_s |h^H v_cm|^2 / ( g(R) (1-beta) P_s |h^H v_an|^2 + sigma^2 )
inline double sinr_cm_at(const PolarPosition &pos, const Beamformer &bf, const PowerSplit &split, const Scenario &scn)
{
    const double g = path_loss(pos.range_m, scn.reference_range_m);
    const double sig = g * split.beta * split.total_power_w * coherent_power(pos, bf.v_cm, scn, bf.allocation);
    const double intf =
        g * (1.0 - split.beta) * split.total_power_w * coherent_power(pos, bf.v_an, scn, bf.allocation);
    return sig / (intf + split.noise_power_w);
}

// Mirror with the CM and AN powers swapped.
inline double sinr_an_at(const PolarPosition &pos, const Beamformer &bf, const PowerSplit &split, const Scenario &scn)
{
    const double g = path_loss(pos.range_m, scn.reference_range_m);
    const double sig = g * (1.0 - split.beta) * split.total_power_w * coherent_power(pos, bf.v_an, scn, bf.allocation);
    const double intf = g * split.beta * split.total_power_w * coherent_power(pos, bf.v_cm, scn, bf.allocation);
    return sig / (intf + split.noise_power_w);
}

inline double secrecy_rate_from_sinr(double sinr_bob, double sinr_eve)
{
    const double sr = std::log2(1.0 + sinr_bob) - std::log2(1.0 + sinr_eve);
    return sr > 0.0 ? sr : 0.0;
}

// Positive-part difference of the CM log-capacities at Bob and Eve, treating
// AN plus thermal noise as Gaussian interference at both receivers.
inline double secrecy_rate(const Beamformer &bf, const PowerSplit &split, const Scenario &scn)
{
    return secrecy_rate_from_sinr(sinr_cm_at(scn.bob, bf, split, scn), sinr_cm_at(scn.eve, bf, split, scn));
}

// Inclusive linear axis start, start+step, ..., stop (stop included when it
// falls on the lattice within rounding slack).
struct AxisSpec
{
    double start;
    double stop;
    double step;

    AxisSpec(double start_, double stop_, double step_) : start(start_), stop(stop_), step(step_)
    {
        if (!(step > 0.0))
            throw std::invalid_argument("AxisSpec: step must be positive");
        if (!(stop >= start))
            throw std::invalid_argument("AxisSpec: stop must not precede start");
    }

    int count() const { return int((stop - start) / step + 1e-9) + 1; }
    double value(int i) const { return start + double(i) * step; }
};

struct GridSpec
{
    AxisSpec theta_deg;
    AxisSpec range_m;
};

// One averaged grid cell. Angles are stored in degrees because the grid lives
// at the presentation boundary; closed endpoints (0 and 180 deg) are legal
// here even though user positions keep the open interval.
struct SinrSample
{
    double theta_deg;
    double range_m;
    double sinr_cm;
    double sinr_an;
};

struct BeampatternGrid
{
    GridSpec grid;
    std::vector<SinrSample> samples; // row-major, theta-major
    int n_allocations_averaged = 0;

    const SinrSample &at(int theta_index, int range_index) const
    {
        return samples[std::size_t(theta_index) * std::size_t(grid.range_m.count()) + std::size_t(range_index)];
    }
};

// Range-angle SINR surfaces averaged in linear scale over seeded allocation
// draws. Each surface is referenced to the operating point of its intended
// receiver: the path-loss factor of the CM field is held at Bob's range and
// that of the AN field at Eve's range, so the map shows the selectivity of the
// array rather than the 1/R^2 envelope, and the Bob (resp. Eve) grid cell
// carries exactly the link SINR of sinr_cm_at (resp. sinr_an_at) there.
inline BeampatternGrid beampattern(const Scenario &scn, const PowerSplit &split, Scheme scheme, const GridSpec &grid,
                                   int n_allocations, RngStream &rng, int n_threads = 0)
{
    if (n_allocations < 1)
        throw std::invalid_argument("beampattern: n_allocations must be at least 1");

    const int n_theta = grid.theta_deg.count();
    const int n_range = grid.range_m.count();
    const std::size_t n_cells = std::size_t(n_theta) * std::size_t(n_range);
    const int n_ant = scn.geometry.n_antennas;

    // allocations drawn serially so the draw sequence is schedule-independent
    std::vector<FrequencyAllocation> allocs;
    allocs.reserve(std::size_t(n_allocations));
    std::vector<Beamformer> formers;
    formers.reserve(std::size_t(n_allocations));
    for (int k = 0; k < n_allocations; ++k)
    {
        allocs.push_back(draw_allocation(scn.geometry, rng));
        formers.push_back(build_beamformer(scheme, scn, allocs.back(), split));
    }

    const double g_d = path_loss(scn.bob.range_m, scn.reference_range_m);
    const double g_e = path_loss(scn.eve.range_m, scn.reference_range_m);
    const double cm_tx = split.beta * split.total_power_w;
    const double an_tx = (1.0 - split.beta) * split.total_power_w;
    const double sigma2 = split.noise_power_w;

    std::vector<std::vector<double>> cm_fields(static_cast<std::size_t>(n_allocations));
    std::vector<std::vector<double>> an_fields(static_cast<std::size_t>(n_allocations));

    detail::parallel_for(n_allocations, n_threads, [&](std::int64_t k) {
        const FrequencyAllocation &alloc = allocs[std::size_t(k)];
        const Beamformer &bf = formers[std::size_t(k)];

        // h_n(theta, R) = (1/sqrt N) e^{j 2 pi [ (f_n - f_c) R - f_n n d cos theta ] / c};
        // conj(h)^T v separates into per-theta and per-range factor tables.
        std::vector<cdouble> theta_fac(std::size_t(n_theta) * std::size_t(n_ant));
        std::vector<cdouble> range_fac(std::size_t(n_range) * std::size_t(n_ant));
        const double two_pi = 2.0 * std::numbers::pi;
        for (int i = 0; i < n_theta; ++i)
        {
            const double cos_t = std::cos(grid.theta_deg.value(i) * std::numbers::pi / 180.0);
            for (int n = 0; n < n_ant; ++n)
            {
                const double fn = alloc.frequency_hz(scn.geometry, n);
                const double phase = two_pi * fn * double(n) * scn.geometry.spacing_m * cos_t / kLightSpeed;
                theta_fac[std::size_t(i) * std::size_t(n_ant) + std::size_t(n)] = std::polar(1.0, phase);
            }
        }
        for (int j = 0; j < n_range; ++j)
        {
            const double r = grid.range_m.value(j);
            for (int n = 0; n < n_ant; ++n)
            {
                const double fn = alloc.frequency_hz(scn.geometry, n);
                const double phase = -two_pi * (fn - scn.geometry.carrier_hz) * r / kLightSpeed;
                range_fac[std::size_t(j) * std::size_t(n_ant) + std::size_t(n)] = std::polar(1.0, phase);
            }
        }

        std::vector<double> &cm_field = cm_fields[std::size_t(k)];
        std::vector<double> &an_field = an_fields[std::size_t(k)];
        cm_field.assign(n_cells, 0.0);
        an_field.assign(n_cells, 0.0);

        const double inv_sqrt_n = 1.0 / std::sqrt(double(n_ant));
        for (int i = 0; i < n_theta; ++i)
        {
            const cdouble *trow = theta_fac.data() + std::size_t(i) * std::size_t(n_ant);
            for (int j = 0; j < n_range; ++j)
            {
                const cdouble *rrow = range_fac.data() + std::size_t(j) * std::size_t(n_ant);
                cdouble acc_cm(0.0, 0.0);
                cdouble acc_an(0.0, 0.0);
                for (int n = 0; n < n_ant; ++n)
                {
                    const cdouble f = trow[n] * rrow[n];
                    acc_cm += f * bf.v_cm[std::size_t(n)];
                    acc_an += f * bf.v_an[std::size_t(n)];
                }
                const double p_cm = std::norm(acc_cm) * inv_sqrt_n * inv_sqrt_n;
                const double p_an = std::norm(acc_an) * inv_sqrt_n * inv_sqrt_n;
                const std::size_t cell = std::size_t(i) * std::size_t(n_range) + std::size_t(j);
                cm_field[cell] = (g_d * cm_tx * p_cm) / (g_d * an_tx * p_an + sigma2);
                an_field[cell] = (g_e * an_tx * p_an) / (g_e * cm_tx * p_cm + sigma2);
            }
        }
    });

    BeampatternGrid out{grid, std::vector<SinrSample>(n_cells), n_allocations};
    const double inv_k = 1.0 / double(n_allocations);
    for (int i = 0; i < n_theta; ++i)
        for (int j = 0; j < n_range; ++j)
        {
            const std::size_t cell = std::size_t(i) * std::size_t(n_range) + std::size_t(j);
            double cm = 0.0, an = 0.0;
            for (int k = 0; k < n_allocations; ++k)
            {
                cm += cm_fields[std::size_t(k)][cell];
                an += an_fields[std::size_t(k)][cell];
            }
            out.samples[cell] =
                SinrSample{grid.theta_deg.value(i), grid.range_m.value(j), cm * inv_k, an * inv_k};
        }
    return out;
}

} // namespace spwt
