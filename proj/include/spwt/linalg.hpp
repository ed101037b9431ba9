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
#include <complex>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "spwt/rng.hpp"

namespace spwt
{

using cdouble = std::complex<double>;
using cvector = std::vector<cdouble>;

// Inner product <x,y> = sum conj(x_i) * y_i
inline cdouble vdot(const cvector &x, const cvector &y)
{
    if (x.size() != y.size())
        throw std::invalid_argument("vdot: size mismatch");
    cdouble acc(0.0, 0.0);
    for (std::size_t i = 0; i < x.size(); ++i)
        acc += std::conj(x[i]) * y[i];
    return acc;
}

inline double squared_norm(const cvector &x)
{
    double acc = 0.0;
    for (const cdouble &v : x)
        acc += std::norm(v);
    return acc;
}

inline double norm(const cvector &x) { return std::sqrt(squared_norm(x)); }

inline void scale(cvector &x, cdouble s)
{
    for (cdouble &v : x)
        v *= s;
}

inline cvector scaled(cvector x, cdouble s)
{
    scale(x, s);
    return x;
}

inline cvector &normalize(cvector &x)
{
    const double n = norm(x);
    if (n <= 0.0)
        throw std::invalid_argument("normalize: zero vector");
    scale(x, cdouble(1.0 / n, 0.0));
    return x;
}

inline cvector normalized(cvector x)
{
    normalize(x);
    return x;
}

// Rotates the vector so its largest-modulus entry is real and positive.
// Resolves the global phase ambiguity of eigenvectors and beam directions;
// ties go to the lowest index.
inline void fix_global_phase(cvector &x)
{
    std::size_t imax = 0;
    double best = -1.0;
    for (std::size_t i = 0; i < x.size(); ++i)
    {
        const double m = std::norm(x[i]);
        if (m > best)
        {
            best = m;
            imax = i;
        }
    }
    if (best <= 0.0)
        return;
    const double mag = std::abs(x[imax]);
    const cdouble rot = std::conj(x[imax]) / mag;
    scale(x, rot);
    x[imax] = cdouble(std::abs(x[imax]), 0.0); // clear residual imaginary dust
}

// Dense row-major complex matrix. Sized for N x N with N in the tens; no
// attempt at blocking or expression templates.
struct CMatrix
{
    std::size_t n_rows = 0;
    std::size_t n_cols = 0;
    std::vector<cdouble> data;

    CMatrix() = default;
    CMatrix(std::size_t rows, std::size_t cols) : n_rows(rows), n_cols(cols), data(rows * cols) {}

    cdouble &operator()(std::size_t i, std::size_t j) { return data[i * n_cols + j]; }
    const cdouble &operator()(std::size_t i, std::size_t j) const { return data[i * n_cols + j]; }

    static CMatrix identity(std::size_t n)
    {
        CMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i)
            m(i, i) = cdouble(1.0, 0.0);
        return m;
    }
};

inline cvector matvec(const CMatrix &m, const cvector &x)
{
    if (m.n_cols != x.size())
        throw std::invalid_argument("matvec: size mismatch");
    cvector y(m.n_rows, cdouble(0.0, 0.0));
    for (std::size_t i = 0; i < m.n_rows; ++i)
    {
        cdouble acc(0.0, 0.0);
        const cdouble *row = m.data.data() + i * m.n_cols;
        for (std::size_t j = 0; j < m.n_cols; ++j)
            acc += row[j] * x[j];
        y[i] = acc;
    }
    return y;
}

// y = m^H x
inline cvector adjoint_matvec(const CMatrix &m, const cvector &x)
{
    if (m.n_rows != x.size())
        throw std::invalid_argument("adjoint_matvec: size mismatch");
    cvector y(m.n_cols, cdouble(0.0, 0.0));
    for (std::size_t i = 0; i < m.n_rows; ++i)
    {
        const cdouble *row = m.data.data() + i * m.n_cols;
        const cdouble xi = std::conj(x[i]);
        for (std::size_t j = 0; j < m.n_cols; ++j)
            y[j] += std::conj(row[j] * xi); // conj(row)^T x = conj(row * conj(x))
    }
    return y;
}

// a += s * x y^H
inline void add_outer(CMatrix &a, double s, const cvector &x, const cvector &y)
{
    if (a.n_rows != x.size() || a.n_cols != y.size())
        throw std::invalid_argument("add_outer: size mismatch");
    for (std::size_t i = 0; i < x.size(); ++i)
        for (std::size_t j = 0; j < y.size(); ++j)
            a(i, j) += s * x[i] * std::conj(y[j]);
}

// Unit-norm dominant eigenvector by power iteration from a fixed pseudo-random
// start, phase convention applied. Intended for Hermitian positive
// semidefinite inputs whose dominant eigenvalue is separated; iteration count
// is capped rather than trusted to converge for adversarial spectra.
inline cvector dominant_eigenvector(const CMatrix &m, double tol = 1e-13, int max_iters = 20000)
{
    if (m.n_rows != m.n_cols || m.n_rows == 0)
        throw std::invalid_argument("dominant_eigenvector: matrix must be square and nonempty");

    RngStream rng(0x5eedf00d2026ULL, {m.n_rows});
    cvector v(m.n_rows);
    for (cdouble &e : v)
        e = rng.gaussian_c1();
    normalize(v);

    cvector prev = v;
    for (int it = 0; it < max_iters; ++it)
    {
        v = matvec(m, v);
        const double n = norm(v);
        if (n <= 0.0)
            throw std::invalid_argument("dominant_eigenvector: matrix annihilated the iterate");
        scale(v, cdouble(1.0 / n, 0.0));
        fix_global_phase(v);

        double diff = 0.0;
        for (std::size_t i = 0; i < v.size(); ++i)
            diff += std::norm(v[i] - prev[i]);
        if (std::sqrt(diff) < tol)
            break;
        prev = v;
    }
    return v;
}

} // namespace spwt
