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
#include <cctype>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "spwt/linalg.hpp"
#include "spwt/rng.hpp"

namespace spwt
{

// Exact SI value; not configurable, no experiment varies it.
constexpr double kLightSpeed = 299792458.0;

// Uniform linear FDA transmit array over an OFDM subcarrier pool.
// Antenna n radiates on f_n = carrier_hz + m_n * subcarrier_spacing_hz where
// m_n comes from a FrequencyAllocation.
struct ArrayGeometry
{
    int n_antennas;                // N
    double spacing_m;              // d
    double carrier_hz;             // f_c
    double subcarrier_spacing_hz;  // delta f
    int n_subcarriers;             // N_S

    ArrayGeometry(int n_antennas_, double spacing_m_, double carrier_hz_, double subcarrier_spacing_hz_,
                  int n_subcarriers_)
        : n_antennas(n_antennas_), spacing_m(spacing_m_), carrier_hz(carrier_hz_),
          subcarrier_spacing_hz(subcarrier_spacing_hz_), n_subcarriers(n_subcarriers_)
    {
        if (n_antennas < 2)
            throw std::invalid_argument("ArrayGeometry: n_antennas must be at least 2");
        if (n_antennas > n_subcarriers)
            throw std::invalid_argument("ArrayGeometry: n_antennas must not exceed n_subcarriers");
        if (!(spacing_m > 0.0))
            throw std::invalid_argument("ArrayGeometry: spacing must be positive");
        if (!(carrier_hz > 0.0))
            throw std::invalid_argument("ArrayGeometry: carrier_hz must be positive");
        if (!(subcarrier_spacing_hz > 0.0))
            throw std::invalid_argument("ArrayGeometry: subcarrier_spacing_hz must be positive");
        // narrowband model: total occupied bandwidth must stay far below the carrier
        const double ratio = double(n_subcarriers) * subcarrier_spacing_hz / carrier_hz;
        if (!(ratio < 0.01))
            throw std::invalid_argument("ArrayGeometry: narrowband condition N_S*delta_f/f_c < 0.01 violated");
    }

    double wavelength_m() const { return kLightSpeed / carrier_hz; }
};

// Angle is measured from the array line; the open interval keeps endfire
// degeneracies out of user positions (grid evaluation handles the closed
// endpoints separately).
struct PolarPosition
{
    double theta_rad; // in (0, pi)
    double range_m;   // > 0

    PolarPosition(double theta_rad_, double range_m_) : theta_rad(theta_rad_), range_m(range_m_)
    {
        if (!(theta_rad > 0.0) || !(theta_rad < std::numbers::pi))
            throw std::invalid_argument("PolarPosition: theta must lie strictly inside (0, pi)");
        if (!(range_m > 0.0))
            throw std::invalid_argument("PolarPosition: range must be positive");
    }

    static PolarPosition from_degrees(double theta_deg, double range_m)
    {
        return PolarPosition(theta_deg * std::numbers::pi / 180.0, range_m);
    }

    double theta_deg() const { return theta_rad * 180.0 / std::numbers::pi; }
};

// Distinct subcarrier indices m_n, one per antenna.
struct FrequencyAllocation
{
    std::vector<int> indices;

    FrequencyAllocation(const ArrayGeometry &geom, std::vector<int> indices_) : indices(std::move(indices_))
    {
        if (int(indices.size()) != geom.n_antennas)
            throw std::invalid_argument("FrequencyAllocation: length must equal n_antennas");
        std::vector<int> sorted = indices;
        std::sort(sorted.begin(), sorted.end());
        for (std::size_t i = 0; i < sorted.size(); ++i)
        {
            if (sorted[i] < 0 || sorted[i] >= geom.n_subcarriers)
                throw std::invalid_argument("FrequencyAllocation: index out of [0, n_subcarriers)");
            if (i > 0 && sorted[i] == sorted[i - 1])
                throw std::invalid_argument("FrequencyAllocation: indices must be distinct");
        }
    }

    double frequency_hz(const ArrayGeometry &geom, int n) const
    {
        return geom.carrier_hz + double(indices[std::size_t(n)]) * geom.subcarrier_spacing_hz;
    }
};

// "m0,m1,..." for config files and logs
inline std::string allocation_to_string(const FrequencyAllocation &alloc)
{
    std::string out;
    for (std::size_t i = 0; i < alloc.indices.size(); ++i)
    {
        if (i)
            out += ',';
        out += std::to_string(alloc.indices[i]);
    }
    return out;
}

inline FrequencyAllocation allocation_from_string(const ArrayGeometry &geom, const std::string &text)
{
    std::vector<int> idx;
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ','))
    {
        std::size_t pos = 0;
        int v = 0;
        try
        {
            v = std::stoi(tok, &pos);
        }
        catch (const std::exception &)
        {
            throw std::invalid_argument("allocation_from_string: not an integer: '" + tok + "'");
        }
        while (pos < tok.size() && std::isspace(static_cast<unsigned char>(tok[pos])))
            ++pos;
        if (pos != tok.size())
            throw std::invalid_argument("allocation_from_string: trailing characters in '" + tok + "'");
        idx.push_back(v);
    }
    return FrequencyAllocation(geom, std::move(idx));
}

struct Scenario
{
    ArrayGeometry geometry;
    PolarPosition bob;
    PolarPosition eve;
    double reference_range_m; // R_0

    Scenario(ArrayGeometry geometry_, PolarPosition bob_, PolarPosition eve_, double reference_range_m_ = 1.0)
        : geometry(geometry_), bob(bob_), eve(eve_), reference_range_m(reference_range_m_)
    {
        if (!(reference_range_m > 0.0))
            throw std::invalid_argument("Scenario: reference_range must be positive");
        const double dtheta = std::abs(bob.theta_rad - eve.theta_rad);
        const double drange = std::abs(bob.range_m - eve.range_m);
        if (dtheta <= 1e-12 && drange <= 1e-9)
            throw std::invalid_argument("Scenario: bob and eve must differ in angle or range");
    }
};

// Free-space power gain g = R_0 / R^2
inline double path_loss(double range_m, double reference_range_m)
{
    if (!(range_m > 0.0) || !(reference_range_m > 0.0))
        throw std::invalid_argument("path_loss: ranges must be positive");
    return reference_range_m / (range_m * range_m);
}

// FDA steering phase, 0-based antenna index:
//   Psi_n(theta, R) = 2 pi f_n (R - n d cos theta) / c - 2 pi f_c R / c
inline double steering_phase(const ArrayGeometry &geom, const FrequencyAllocation &alloc, int n,
                             const PolarPosition &pos)
{
    if (n < 0 || n >= geom.n_antennas)
        throw std::invalid_argument("steering_phase: antenna index out of range");
    const double fn = alloc.frequency_hz(geom, n);
    const double two_pi = 2.0 * std::numbers::pi;
    return two_pi * fn * (pos.range_m - double(n) * geom.spacing_m * std::cos(pos.theta_rad)) / kLightSpeed -
           two_pi * geom.carrier_hz * pos.range_m / kLightSpeed;
}

struct SteeringVector
{
    cvector entries;
    PolarPosition position;
    FrequencyAllocation allocation;
};

// h(theta, R) with entry n = (1/sqrt N) e^{j Psi_n}
inline SteeringVector steering_vector(const ArrayGeometry &geom, const FrequencyAllocation &alloc,
                                      const PolarPosition &pos)
{
    const int n_ant = geom.n_antennas;
    cvector h(static_cast<std::size_t>(n_ant));
    const double amp = 1.0 / std::sqrt(double(n_ant));
    for (int n = 0; n < n_ant; ++n)
    {
        const double psi = steering_phase(geom, alloc, n, pos);
        h[std::size_t(n)] = std::polar(amp, psi);
    }
    return SteeringVector{std::move(h), pos, alloc};
}

// Unit phasors e^{j Psi_n(pos)}: the diagonal of the alignment matrix for pos
// (P at Bob, Q at Eve).
inline cvector alignment_phases(const ArrayGeometry &geom, const FrequencyAllocation &alloc, const PolarPosition &pos)
{
    const int n_ant = geom.n_antennas;
    cvector phases(static_cast<std::size_t>(n_ant));
    for (int n = 0; n < n_ant; ++n)
        phases[std::size_t(n)] = std::polar(1.0, steering_phase(geom, alloc, n, pos));
    return phases;
}

// N distinct subcarriers uniformly without replacement (partial Fisher-Yates
// over the index pool).
inline FrequencyAllocation draw_allocation(const ArrayGeometry &geom, RngStream &rng)
{
    const int n_pool = geom.n_subcarriers;
    const int n_take = geom.n_antennas;
    std::vector<int> pool(static_cast<std::size_t>(n_pool));
    for (int i = 0; i < n_pool; ++i)
        pool[std::size_t(i)] = i;
    std::vector<int> picked(static_cast<std::size_t>(n_take));
    for (int i = 0; i < n_take; ++i)
    {
        const std::uint64_t j = std::uint64_t(i) + rng.below(std::uint64_t(n_pool - i));
        std::swap(pool[std::size_t(i)], pool[std::size_t(j)]);
        picked[std::size_t(i)] = pool[std::size_t(i)];
    }
    return FrequencyAllocation(geom, std::move(picked));
}

} // namespace spwt
