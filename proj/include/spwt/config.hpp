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

#include <cctype>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>

#include "spwt/array.hpp"
#include "spwt/beamform.hpp"

namespace spwt
{

// Configuration problems map to exit code 2 at the CLI boundary.
struct config_error : std::runtime_error
{
    using std::runtime_error::runtime_error;
};

// File/stream problems map to exit code 4 at the CLI boundary.
struct io_error : std::runtime_error
{
    using std::runtime_error::runtime_error;
};

inline double dbm_to_watt(double dbm) { return 1e-3 * std::pow(10.0, dbm / 10.0); }
inline double watt_to_dbm(double watt) { return 10.0 * std::log10(watt / 1e-3); }

// Flat key=value scenario description. Keys carry explicit units; unit
// conversion happens here and nowhere else (the core works in watts, radians
// and meters). Defaults encode the reference setup: N = 32 half-wavelength
// elements at 3 GHz, 1024 subcarriers over 5 MHz, beta = 0.5, noise floor
// -60 dBm, Bob at (30 deg, 650 m), Eve at (100 deg, 550 m), R_0 = 1 m.
struct SimConfig
{
    int n_antennas = 32;
    int n_subcarriers = 1024;
    double carrier_hz = 3.0e9;
    double bandwidth_hz = 5.0e6;        // subcarrier_spacing_hz = bandwidth_hz / n_subcarriers
    double subcarrier_spacing_hz = 0.0; // set directly to override the bandwidth route
    double spacing_m = 0.0;             // set directly to override spacing_wavelengths
    double spacing_wavelengths = 0.5;
    double beta = 0.5;
    double sigma2_dbm = -60.0;
    double theta_bob_deg = 30.0;
    double r_bob_m = 650.0;
    double theta_eve_deg = 100.0;
    double r_eve_m = 550.0;
    double reference_range_m = 1.0;

    double resolved_subcarrier_spacing_hz() const
    {
        if (subcarrier_spacing_hz > 0.0)
            return subcarrier_spacing_hz;
        if (!(bandwidth_hz > 0.0) || n_subcarriers < 1)
            throw config_error("config: bandwidth_hz must be positive to derive subcarrier spacing");
        return bandwidth_hz / double(n_subcarriers);
    }

    double resolved_spacing_m() const
    {
        if (spacing_m > 0.0)
            return spacing_m;
        if (!(spacing_wavelengths > 0.0))
            throw config_error("config: spacing_wavelengths must be positive");
        return spacing_wavelengths * kLightSpeed / carrier_hz;
    }

    double noise_power_w() const { return dbm_to_watt(sigma2_dbm); }

    ArrayGeometry geometry() const
    {
        try
        {
            return ArrayGeometry(n_antennas, resolved_spacing_m(), carrier_hz, resolved_subcarrier_spacing_hz(),
                                 n_subcarriers);
        }
        catch (const std::invalid_argument &e)
        {
            throw config_error(std::string("config: ") + e.what());
        }
    }

    Scenario scenario() const
    {
        try
        {
            return Scenario(geometry(), PolarPosition::from_degrees(theta_bob_deg, r_bob_m),
                            PolarPosition::from_degrees(theta_eve_deg, r_eve_m), reference_range_m);
        }
        catch (const std::invalid_argument &e)
        {
            throw config_error(std::string("config: ") + e.what());
        }
    }

    void validate() const
    {
        if (!(beta > 0.0) || !(beta <= 1.0))
            throw config_error("config key beta: out of (0,1]; 1 is the no-AN limit");
        if (!(theta_bob_deg > 0.0) || !(theta_bob_deg < 180.0))
            throw config_error("config key theta_bob_deg: must lie strictly inside (0, 180)");
        if (!(theta_eve_deg > 0.0) || !(theta_eve_deg < 180.0))
            throw config_error("config key theta_eve_deg: must lie strictly inside (0, 180)");
        if (!(r_bob_m > 0.0))
            throw config_error("config key r_bob_m: must be positive");
        if (!(r_eve_m > 0.0))
            throw config_error("config key r_eve_m: must be positive");
        if (!(reference_range_m > 0.0))
            throw config_error("config key reference_range_m: must be positive");
        scenario(); // geometry and distinctness invariants, reported as config errors
    }
};

namespace detail
{

inline std::string trim(std::string_view s)
{
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b])))
        ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1])))
        --e;
    return std::string(s.substr(b, e - b));
}

inline double parse_double(const std::string &key, const std::string &value)
{
    try
    {
        std::size_t pos = 0;
        const double v = std::stod(value, &pos);
        while (pos < value.size() && std::isspace(static_cast<unsigned char>(value[pos])))
            ++pos;
        if (pos != value.size())
            throw std::invalid_argument("trailing characters");
        return v;
    }
    catch (const std::exception &)
    {
        throw config_error("config key " + key + ": not a number: '" + value + "'");
    }
}

inline int parse_int(const std::string &key, const std::string &value)
{
    const double v = parse_double(key, value);
    const int i = int(v);
    if (double(i) != v)
        throw config_error("config key " + key + ": not an integer: '" + value + "'");
    return i;
}

} // namespace detail

// Parses "key = value" lines; '#' starts a comment; blank lines ignored.
// Unknown keys are errors (silent typos are worse than strictness).
inline SimConfig parse_config_text(const std::string &text, const std::string &source_name)
{
    SimConfig cfg;
    bool saw_bandwidth = false, saw_spacing_hz = false;
    bool saw_spacing_m = false, saw_spacing_wl = false;

    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    while (std::getline(in, line))
    {
        ++line_no;
        const std::size_t hash = line.find('#');
        if (hash != std::string::npos)
            line.erase(hash);
        const std::string stripped = detail::trim(line);
        if (stripped.empty())
            continue;
        const std::size_t eq = stripped.find('=');
        if (eq == std::string::npos)
            throw config_error(source_name + ":" + std::to_string(line_no) + ": expected key = value");
        const std::string key = detail::trim(stripped.substr(0, eq));
        const std::string value = detail::trim(stripped.substr(eq + 1));
        if (key.empty() || value.empty())
            throw config_error(source_name + ":" + std::to_string(line_no) + ": empty key or value");

        if (key == "n_antennas")
            cfg.n_antennas = detail::parse_int(key, value);
        else if (key == "n_subcarriers")
            cfg.n_subcarriers = detail::parse_int(key, value);
        else if (key == "carrier_hz")
            cfg.carrier_hz = detail::parse_double(key, value);
        else if (key == "bandwidth_hz")
        {
            cfg.bandwidth_hz = detail::parse_double(key, value);
            saw_bandwidth = true;
        }
        else if (key == "subcarrier_spacing_hz")
        {
            cfg.subcarrier_spacing_hz = detail::parse_double(key, value);
            saw_spacing_hz = true;
        }
        else if (key == "spacing_m")
        {
            cfg.spacing_m = detail::parse_double(key, value);
            saw_spacing_m = true;
        }
        else if (key == "spacing_wavelengths")
        {
            cfg.spacing_wavelengths = detail::parse_double(key, value);
            saw_spacing_wl = true;
        }
        else if (key == "beta")
            cfg.beta = detail::parse_double(key, value);
        else if (key == "sigma2_dbm")
            cfg.sigma2_dbm = detail::parse_double(key, value);
        else if (key == "theta_bob_deg")
            cfg.theta_bob_deg = detail::parse_double(key, value);
        else if (key == "r_bob_m")
            cfg.r_bob_m = detail::parse_double(key, value);
        else if (key == "theta_eve_deg")
            cfg.theta_eve_deg = detail::parse_double(key, value);
        else if (key == "r_eve_m")
            cfg.r_eve_m = detail::parse_double(key, value);
        else if (key == "reference_range_m")
            cfg.reference_range_m = detail::parse_double(key, value);
        else
            throw config_error(source_name + ":" + std::to_string(line_no) + ": unknown key '" + key + "'");
    }

    if (saw_bandwidth && saw_spacing_hz)
        throw config_error(source_name + ": bandwidth_hz and subcarrier_spacing_hz are mutually exclusive");
    if (saw_spacing_m && saw_spacing_wl)
        throw config_error(source_name + ": spacing_m and spacing_wavelengths are mutually exclusive");

    cfg.validate();
    return cfg;
}

inline SimConfig load_config(const std::string &path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw io_error("cannot open config file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    if (in.bad())
        throw io_error("cannot read config file: " + path);
    return parse_config_text(buf.str(), path);
}

// Fully resolved key=value dump; parse_config_text(config_to_text(c)) == c.
inline std::string config_to_text(const SimConfig &cfg)
{
    std::ostringstream out;
    out.precision(17);
    out << "n_antennas = " << cfg.n_antennas << "\n";
    out << "n_subcarriers = " << cfg.n_subcarriers << "\n";
    out << "carrier_hz = " << cfg.carrier_hz << "\n";
    out << "subcarrier_spacing_hz = " << cfg.resolved_subcarrier_spacing_hz() << "\n";
    out << "spacing_m = " << cfg.resolved_spacing_m() << "\n";
    out << "beta = " << cfg.beta << "\n";
    out << "sigma2_dbm = " << cfg.sigma2_dbm << "\n";
    out << "theta_bob_deg = " << cfg.theta_bob_deg << "\n";
    out << "r_bob_m = " << cfg.r_bob_m << "\n";
    out << "theta_eve_deg = " << cfg.theta_eve_deg << "\n";
    out << "r_eve_m = " << cfg.r_eve_m << "\n";
    out << "reference_range_m = " << cfg.reference_range_m << "\n";
    return out.str();
}

} // namespace spwt
