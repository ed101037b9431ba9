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
#include <limits>
#include <stdexcept>
#include <string>
#include <string_view>

#include "spwt/array.hpp"
#include "spwt/linalg.hpp"

namespace spwt
{

enum class Scheme
{
    kEab,
    kLeakage,
    kMaxRp,
};

inline const char *to_string(Scheme s)
{
    switch (s)
    {
    case Scheme::kEab:
        return "eab";
    case Scheme::kLeakage:
        return "leakage";
    case Scheme::kMaxRp:
        return "maxrp";
    }
    return "unknown";
}

inline Scheme scheme_from_string(std::string_view name)
{
    if (name == "eab")
        return Scheme::kEab;
    if (name == "leakage")
        return Scheme::kLeakage;
    if (name == "maxrp")
        return Scheme::kMaxRp;
    throw std::invalid_argument("unknown scheme '" + std::string(name) + "' (expected eab, leakage or maxrp)");
}

// Stable small integers for RNG substream derivation; never reorder.
inline std::uint64_t scheme_stream_id(Scheme s)
{
    switch (s)
    {
    case Scheme::kEab:
        return 0;
    case Scheme::kLeakage:
        return 1;
    case Scheme::kMaxRp:
        return 2;
    }
    return 99;
}

// Transmit power budget P_s split between CM (beta) and AN (1 - beta).
// beta = 1 is the calibration limit with the AN branch carrying zero power;
// the AN amplitude solvers remain well defined there through the infinite
// ridge in the leakage formula.
struct PowerSplit
{
    double beta;
    double total_power_w;  // P_s
    double noise_power_w;  // sigma^2

    PowerSplit(double beta_, double total_power_w_, double noise_power_w_)
        : beta(beta_), total_power_w(total_power_w_), noise_power_w(noise_power_w_)
    {
        if (!(beta > 0.0) || !(beta <= 1.0))
            throw std::invalid_argument("PowerSplit: beta out of (0,1]");
        if (!(total_power_w > 0.0))
            throw std::invalid_argument("PowerSplit: total_power must be positive");
        if (!(noise_power_w > 0.0))
            throw std::invalid_argument("PowerSplit: noise_power must be positive");
    }
};

// SNR convention used artifact-wide: SNR = g_d * P_s / sigma^2, the full power
// budget received at Bob's range over the noise power.
inline PowerSplit split_for_snr_db(double snr_db, double beta, double noise_power_w, const Scenario &scn)
{
    const double g_d = path_loss(scn.bob.range_m, scn.reference_range_m);
    const double p_s = std::pow(10.0, snr_db / 10.0) * noise_power_w / g_d;
    return PowerSplit(beta, p_s, noise_power_w);
}

// Geometrically coincident users (or an exact subspace hit) make the hard-null
// schemes unsolvable; mapped to its own exit code at the CLI boundary.
struct degenerate_scenario_error : std::runtime_error
{
    using std::runtime_error::runtime_error;
};

inline cvector eab_amplitudes(int n_antennas)
{
    if (n_antennas < 2)
        throw std::invalid_argument("eab_amplitudes: n_antennas must be at least 2");
    return cvector(std::size_t(n_antennas), cdouble(1.0 / std::sqrt(double(n_antennas)), 0.0));
}

// Channel of `channel_of` rotated into the alignment frame of `align_to`:
// entry n = conj(e^{j Psi_n(align_to)}) * h_n(channel_of). For
// channel_of == align_to this is the constant real vector (1/sqrt N) * 1.
inline cvector aligned_channel(const ArrayGeometry &geom, const FrequencyAllocation &alloc,
                               const PolarPosition &align_to, const PolarPosition &channel_of)
{
    const cvector phases = alignment_phases(geom, alloc, align_to);
    const SteeringVector h = steering_vector(geom, alloc, channel_of);
    cvector out(h.entries.size());
    for (std::size_t n = 0; n < out.size(); ++n)
        out[n] = std::conj(phases[n]) * h.entries[n];
    return out;
}

// Unit-norm maximizer of  g_sig |p_sig^H a|^2 / (g_int |p_int^H a|^2 + ridge |a|^2),
// i.e. the dominant eigenvector of [g_int p_int p_int^H + ridge I]^{-1} p_sig p_sig^H.
// The right factor is rank one, so the solution is the (phase-fixed,
// normalized) solve of the regularized interference matrix against p_sig;
// Sherman-Morrison collapses that to one inner-product correction.
// ridge = +inf is accepted and yields normalize(p_sig).
inline cvector leakage_direction(const cvector &p_sig, const cvector &p_int, double g_int, double ridge)
{
    if (p_sig.size() != p_int.size())
        throw std::invalid_argument("leakage_direction: size mismatch");
    if (!(ridge > 0.0))
        throw std::invalid_argument("leakage_direction: ridge must be positive");
    if (!(g_int >= 0.0))
        throw std::invalid_argument("leakage_direction: interference gain must be nonnegative");

    cvector a = p_sig;
    if (std::isfinite(ridge) && g_int > 0.0)
    {
        const cdouble cross = vdot(p_int, p_sig); // p_int^H p_sig
        const cdouble coef = g_int * cross / (ridge + g_int * squared_norm(p_int));
        for (std::size_t n = 0; n < a.size(); ++n)
            a[n] -= coef * p_int[n];
    }
    normalize(a);
    fix_global_phase(a);
    return a;
}

// Max-SLNR amplitude vector for the confidential message (solves the
// eigenproblem of [g_e p_E p_E^H + (sigma^2/(beta P_s)) I]^{-1} g_d p_B p_B^H).
inline cvector leakage_cm(const Scenario &scn, const FrequencyAllocation &alloc, const PowerSplit &split)
{
    const cvector p_b = aligned_channel(scn.geometry, alloc, scn.bob, scn.bob);
    const cvector p_e = aligned_channel(scn.geometry, alloc, scn.bob, scn.eve);
    const double g_e = path_loss(scn.eve.range_m, scn.reference_range_m);
    const double ridge = split.noise_power_w / (split.beta * split.total_power_w);
    return leakage_direction(p_b, p_e, g_e, ridge);
}

// Mirror problem for the artificial noise in Eve's alignment frame; the ridge
// carries the AN power share, which is zero at beta = 1 (infinite ridge).
inline cvector leakage_an(const Scenario &scn, const FrequencyAllocation &alloc, const PowerSplit &split)
{
    const cvector q_e = aligned_channel(scn.geometry, alloc, scn.eve, scn.eve);
    const cvector q_b = aligned_channel(scn.geometry, alloc, scn.eve, scn.bob);
    const double g_d = path_loss(scn.bob.range_m, scn.reference_range_m);
    const double an_power = (1.0 - split.beta) * split.total_power_w;
    const double ridge = an_power > 0.0 ? split.noise_power_w / an_power : std::numeric_limits<double>::infinity();
    return leakage_direction(q_e, q_b, g_d, ridge);
}

// Orthonormal basis of the orthogonal complement of c, as the last N-1 columns
// of the Householder reflector mapping c onto a coordinate axis. Equivalent to
// the SVD construction up to a change of basis, and every downstream quantity
// is basis-independent.
inline CMatrix null_basis_of_vector(const cvector &c)
{
    const std::size_t n = c.size();
    const double cnorm = norm(c);
    if (!(cnorm > 1e-12))
        throw degenerate_scenario_error("null_basis_of_vector: degenerate constraint");

    // alpha keeps w = c - alpha e_1 away from cancellation
    const double c0mag = std::abs(c[0]);
    const cdouble phase0 = c0mag > 0.0 ? c[0] / c0mag : cdouble(1.0, 0.0);
    const cdouble alpha = -phase0 * cnorm;

    cvector w = c;
    w[0] -= alpha;
    const double wsq = squared_norm(w);

    CMatrix basis(n, n - 1);
    if (wsq <= 1e-300)
    {
        // c is already along e_1 (up to phase); complement is coordinates 2..N
        for (std::size_t j = 0; j + 1 < n; ++j)
            basis(j + 1, j) = cdouble(1.0, 0.0);
        return basis;
    }
    // column j of H = I - 2 w w^H / |w|^2, taking columns 2..N
    for (std::size_t j = 1; j < n; ++j)
    {
        const cdouble f = 2.0 * std::conj(w[j]) / wsq;
        for (std::size_t i = 0; i < n; ++i)
            basis(i, j - 1) = (i == j ? cdouble(1.0, 0.0) : cdouble(0.0, 0.0)) - f * w[i];
    }
    return basis;
}

// Normalized projection of p_sig onto the orthogonal complement of p_null,
// computed through the explicit null basis so the hard null is structural.
inline cvector maxrp_direction(const cvector &p_sig, const cvector &p_null, const char *degenerate_message)
{
    const CMatrix basis = null_basis_of_vector(p_null);
    cvector u = adjoint_matvec(basis, p_sig);
    const double unorm = norm(u);
    if (!(unorm > 1e-10))
        throw degenerate_scenario_error(degenerate_message);
    scale(u, cdouble(1.0 / unorm, 0.0));
    cvector a = matvec(basis, u);
    normalize(a); // basis is orthonormal; this only clears rounding dust
    fix_global_phase(a);
    return a;
}

// Max receive power at Bob under a hard null toward Eve.
inline cvector maxrp_cm(const Scenario &scn, const FrequencyAllocation &alloc, const PowerSplit & /*split*/)
{
    const cvector p_b = aligned_channel(scn.geometry, alloc, scn.bob, scn.bob);
    const cvector p_e = aligned_channel(scn.geometry, alloc, scn.bob, scn.eve);
    return maxrp_direction(p_b, p_e, "maxrp_cm: Bob channel lies in Eve constraint space");
}

// Max AN power at Eve under a hard null toward Bob.
inline cvector maxrp_an(const Scenario &scn, const FrequencyAllocation &alloc, const PowerSplit & /*split*/)
{
    const cvector q_e = aligned_channel(scn.geometry, alloc, scn.eve, scn.eve);
    const cvector q_b = aligned_channel(scn.geometry, alloc, scn.eve, scn.bob);
    return maxrp_direction(q_e, q_b, "maxrp_an: Eve channel lies in Bob constraint space");
}

// entry n = |amplitudes(n)| * phases(n); the modulus preserves the 2-norm, so
// a unit-norm amplitude vector composes to a unit-norm beamformer without
// renormalization.
inline cvector compose(const cvector &amplitudes, const cvector &phases)
{
    if (amplitudes.size() != phases.size())
        throw std::invalid_argument("compose: size mismatch");
    cvector v(amplitudes.size());
    for (std::size_t n = 0; n < v.size(); ++n)
        v[n] = std::abs(amplitudes[n]) * phases[n];
    return v;
}

struct Beamformer
{
    cvector v_cm;
    cvector v_an;
    Scheme scheme;
    FrequencyAllocation allocation;
};

inline cvector scheme_cm_amplitudes(Scheme scheme, const Scenario &scn, const FrequencyAllocation &alloc,
                                    const PowerSplit &split)
{
    switch (scheme)
    {
    case Scheme::kEab:
        return eab_amplitudes(scn.geometry.n_antennas);
    case Scheme::kLeakage:
        return leakage_cm(scn, alloc, split);
    case Scheme::kMaxRp:
        return maxrp_cm(scn, alloc, split);
    }
    throw std::invalid_argument("scheme_cm_amplitudes: unknown scheme");
}

inline cvector scheme_an_amplitudes(Scheme scheme, const Scenario &scn, const FrequencyAllocation &alloc,
                                    const PowerSplit &split)
{
    switch (scheme)
    {
    case Scheme::kEab:
        return eab_amplitudes(scn.geometry.n_antennas);
    case Scheme::kLeakage:
        return leakage_an(scn, alloc, split);
    case Scheme::kMaxRp:
        return maxrp_an(scn, alloc, split);
    }
    throw std::invalid_argument("scheme_an_amplitudes: unknown scheme");
}

inline Beamformer build_beamformer(Scheme scheme, const Scenario &scn, const FrequencyAllocation &alloc,
                                   const PowerSplit &split)
{
    const cvector a = scheme_cm_amplitudes(scheme, scn, alloc, split);
    const cvector b = scheme_an_amplitudes(scheme, scn, alloc, split);
    cvector v_cm = compose(a, alignment_phases(scn.geometry, alloc, scn.bob));
    cvector v_an = compose(b, alignment_phases(scn.geometry, alloc, scn.eve));
    // cheap invariant guard; a violation here is a solver bug, not bad input
    if (std::abs(norm(v_cm) - 1.0) > 1e-10 || std::abs(norm(v_an) - 1.0) > 1e-10)
        throw std::logic_error("build_beamformer: composed weights lost unit norm");
    return Beamformer{std::move(v_cm), std::move(v_an), scheme, alloc};
}

} // namespace spwt
