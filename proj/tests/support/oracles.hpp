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

// Test-side oracles. Everything here is an independent transcription of the
// underlying math, deliberately arranged differently from the library code so
// shared bugs cannot hide.

#pragma once

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "spwt/spwt.hpp"

namespace oracle
{

using spwt::cdouble;
using spwt::CMatrix;
using spwt::cvector;

// Steering phase in the decomposed form
//   psi = 2 pi [ -f_c n d cos(th) + m df (R - n d cos(th)) ] / c
// (the library computes the undistributed product).
inline double steering_phase(const spwt::ArrayGeometry &g, int m, int n, double theta_rad, double range_m)
{
    const double nd_cos = double(n) * g.spacing_m * std::cos(theta_rad);
    const double two_pi = 2.0 * std::numbers::pi;
    return two_pi * (-g.carrier_hz * nd_cos + double(m) * g.subcarrier_spacing_hz * (range_m - nd_cos)) /
           spwt::kLightSpeed;
}

// Gaussian tail Q(x)
inline double q_function(double x) { return 0.5 * std::erfc(x / std::numbers::sqrt2); }

// Dense Gauss-Jordan inverse with partial pivoting; fine at N <= 32.
inline CMatrix invert(CMatrix m)
{
    if (m.n_rows != m.n_cols)
        throw std::invalid_argument("invert: square matrices only");
    const std::size_t n = m.n_rows;
    CMatrix inv = CMatrix::identity(n);
    for (std::size_t col = 0; col < n; ++col)
    {
        std::size_t pivot = col;
        double best = std::abs(m(col, col));
        for (std::size_t r = col + 1; r < n; ++r)
            if (std::abs(m(r, col)) > best)
            {
                best = std::abs(m(r, col));
                pivot = r;
            }
        if (!(best > 0.0))
            throw std::invalid_argument("invert: singular matrix");
        if (pivot != col)
            for (std::size_t c = 0; c < n; ++c)
            {
                std::swap(m(col, c), m(pivot, c));
                std::swap(inv(col, c), inv(pivot, c));
            }
        const cdouble scale = 1.0 / m(col, col);
        for (std::size_t c = 0; c < n; ++c)
        {
            m(col, c) *= scale;
            inv(col, c) *= scale;
        }
        for (std::size_t r = 0; r < n; ++r)
        {
            if (r == col)
                continue;
            const cdouble f = m(r, col);
            if (f == cdouble(0.0, 0.0))
                continue;
            for (std::size_t c = 0; c < n; ++c)
            {
                m(r, c) -= f * m(col, c);
                inv(r, c) -= f * inv(col, c);
            }
        }
    }
    return inv;
}

inline CMatrix matmul(const CMatrix &a, const CMatrix &b)
{
    if (a.n_cols != b.n_rows)
        throw std::invalid_argument("matmul: size mismatch");
    CMatrix out(a.n_rows, b.n_cols);
    for (std::size_t i = 0; i < a.n_rows; ++i)
        for (std::size_t k = 0; k < a.n_cols; ++k)
        {
            const cdouble f = a(i, k);
            for (std::size_t j = 0; j < b.n_cols; ++j)
                out(i, j) += f * b(k, j);
        }
    return out;
}

// SLNR objective: gain_sig |p_sig^H a|^2 / (gain_int |p_int^H a|^2 + ridge |a|^2)
inline double slnr(const cvector &a, const cvector &p_sig, const cvector &p_int, double gain_sig, double gain_int,
                   double ridge)
{
    const double num = gain_sig * std::norm(spwt::vdot(p_sig, a));
    const double den = gain_int * std::norm(spwt::vdot(p_int, a)) + ridge * spwt::squared_norm(a);
    return num / den;
}

// The eigenproblem matrix of the leakage schemes, built literally:
//   M = [gain_int p_int p_int^H + ridge I]^{-1} gain_sig p_sig p_sig^H
inline CMatrix leakage_matrix(const cvector &p_sig, const cvector &p_int, double gain_sig, double gain_int,
                              double ridge)
{
    const std::size_t n = p_sig.size();
    CMatrix denom(n, n);
    for (std::size_t i = 0; i < n; ++i)
        denom(i, i) = ridge;
    spwt::add_outer(denom, gain_int, p_int, p_int);
    CMatrix numer(n, n);
    spwt::add_outer(numer, gain_sig, p_sig, p_sig);
    return matmul(invert(denom), numer);
}

inline cvector random_unit_vector(std::size_t n, spwt::RngStream &rng)
{
    cvector v(n);
    for (cdouble &e : v)
        e = rng.gaussian_c1();
    spwt::normalize(v);
    return v;
}

// |<x,y>| for unit vectors; 1 means same direction up to phase
inline double cosine_similarity(const cvector &x, const cvector &y)
{
    return std::abs(spwt::vdot(x, y)) / (spwt::norm(x) * spwt::norm(y));
}

// Independent SINR-at-a-point evaluation straight from the received-signal
// power terms, using library steering but separate power algebra.
inline double sinr_cm(const spwt::PolarPosition &pos, const spwt::Beamformer &bf, const spwt::PowerSplit &split,
                      const spwt::Scenario &scn)
{
    const spwt::SteeringVector h = spwt::steering_vector(scn.geometry, bf.allocation, pos);
    const double g = scn.reference_range_m / (pos.range_m * pos.range_m);
    const cdouble cm = spwt::vdot(h.entries, bf.v_cm);
    const cdouble an = spwt::vdot(h.entries, bf.v_an);
    const double p_cm = split.beta * split.total_power_w * g * (cm.real() * cm.real() + cm.imag() * cm.imag());
    const double p_an =
        (1.0 - split.beta) * split.total_power_w * g * (an.real() * an.real() + an.imag() * an.imag());
    return p_cm / (p_an + split.noise_power_w);
}

/// Random valid scenario for property sweeps: N from the given list, random
// distinct user positions, random geometry within the narrowband limit.
inline spwt::Scenario random_scenario(spwt::RngStream &rng, int n_antennas)
{
    const int n_sub = 1024;
    const double carrier = 1.0e9 + rng.uniform01() * 4.0e9;
    const double df = (0.5e6 + rng.uniform01() * 4.5e6) / double(n_sub);
    const double spacing = 0.3 + rng.uniform01() * 0.4; // in wavelengths
    spwt::ArrayGeometry geom(n_antennas, spacing * spwt::kLightSpeed / carrier, carrier, df, n_sub);
    const double tb = (10.0 + rng.uniform01() * 160.0) * std::numbers::pi / 180.0;
    const double rb = 100.0 + rng.uniform01() * 900.0;
    double te = 0.0, re = 0.0;
    do
    {
        te = (10.0 + rng.uniform01() * 160.0) * std::numbers::pi / 180.0;
        re = 100.0 + rng.uniform01() * 900.0;
    } while (std::abs(te - tb) < 0.05 && std::abs(re - rb) < 5.0);
    return spwt::Scenario(geom, spwt::PolarPosition(tb, rb), spwt::PolarPosition(te, re), 1.0);
}

} // namespace oracle
