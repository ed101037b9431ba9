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
#include <cstdio>
#include <fstream>
#include <string>

#include "spwt/beamform.hpp"
#include "spwt/config.hpp"
#include "spwt/metrics.hpp"
#include "spwt/montecarlo.hpp"

namespace spwt
{

// 17 significant digits: round-trip exact for doubles, byte-stable across runs
inline std::string fmt_g17(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

// dB conversion for output; linear values below 1e-30 clamp to -300 dB so the
// CSV never carries -inf.
inline double to_db(double linear)
{
    if (linear < 1e-30)
        return -300.0;
    return 10.0 * std::log10(linear);
}

inline std::string beampattern_csv(const BeampatternGrid &grid)
{
    std::string out = "theta_deg,range_m,sinr_cm_db,sinr_an_db\n";
    for (const SinrSample &s : grid.samples)
    {
        out += fmt_g17(s.theta_deg);
        out += ',';
        out += fmt_g17(s.range_m);
        out += ',';
        out += fmt_g17(to_db(s.sinr_cm));
        out += ',';
        out += fmt_g17(to_db(s.sinr_an));
        out += '\n';
    }
    return out;
}

inline std::string weights_csv(const Beamformer &bf)
{
    std::string out = "antenna_index,subcarrier_index,re_v_cm,im_v_cm,re_v_an,im_v_an\n";
    for (std::size_t n = 0; n < bf.v_cm.size(); ++n)
    {
        out += std::to_string(n);
        out += ',';
        out += std::to_string(bf.allocation.indices[n]);
        out += ',';
        out += fmt_g17(bf.v_cm[n].real());
        out += ',';
        out += fmt_g17(bf.v_cm[n].imag());
        out += ',';
        out += fmt_g17(bf.v_an[n].real());
        out += ',';
        out += fmt_g17(bf.v_an[n].imag());
        out += '\n';
    }
    return out;
}

inline std::string ber_csv(const BerReport &report)
{
    const bool eve = !report.cells.empty() && report.cells.front().eve_tracked;
    std::string out = eve ? "snr_db,scheme,ber,bits,errors,ci_low,ci_high,eve_ber\n"
                          : "snr_db,scheme,ber,bits,errors,ci_low,ci_high\n";
    for (const BerCell &c : report.cells)
    {
        out += fmt_g17(c.snr_db);
        out += ',';
        out += to_string(c.scheme);
        out += ',';
        out += fmt_g17(c.ber);
        out += ',';
        out += std::to_string(c.bits);
        out += ',';
        out += std::to_string(c.errors);
        out += ',';
        out += fmt_g17(c.ci_low);
        out += ',';
        out += fmt_g17(c.ci_high);
        if (eve)
        {
            out += ',';
            out += fmt_g17(c.eve_ber);
        }
        out += '\n';
    }
    return out;
}

inline std::string sr_csv(const SrReport &report)
{
    std::string out = "snr_db,scheme,sr_mean,sr_stderr\n";
    for (const SrCell &c : report.cells)
    {
        out += fmt_g17(c.snr_db);
        out += ',';
        out += to_string(c.scheme);
        out += ',';
        out += fmt_g17(c.sr_mean);
        out += ',';
        out += fmt_g17(c.sr_stderr);
        out += '\n';
    }
    return out;
}

// Whole-file write through a temp name so a failed run never leaves a partial
// artifact behind.
inline void write_file_atomic(const std::string &path, const std::string &content)
{
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out)
            throw io_error("cannot open output file: " + tmp);
        out.write(content.data(), std::streamsize(content.size()));
        out.flush();
        if (!out)
            throw io_error("cannot write output file: " + tmp);
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0)
    {
        std::remove(tmp.c_str());
        throw io_error("cannot move output into place: " + path);
    }
}

} // namespace spwt
