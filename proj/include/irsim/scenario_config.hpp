// SPDX-License-Identifier: Apache-2.0
//
// irsim - link-level simulator for IRS-aided downlinks under channel aging and phase noise
// Copyright (C) 2026 The irsim authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#ifndef IRSIM_SCENARIO_CONFIG_HPP
#define IRSIM_SCENARIO_CONFIG_HPP

#include "channel_model.hpp"
#include "impairments.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace irsim
{
    /// Invalid configuration value. `field()` names the offending key.
    class ConfigError : public std::invalid_argument
    {
    public:
        ConfigError(std::string field, const std::string &what)
            : std::invalid_argument(field + ": " + what), field_(std::move(field)) {}

        const std::string &field() const noexcept { return field_; }

    private:
        std::string field_;
    };

    /// Which rate a trial reports: the mean per-slot R_t, or the frame average sum R_t / (T+1).
    enum class SeMetric
    {
        slot,
        frame
    };

    struct ScenarioConfig
    {
        std::size_t n_reflectors = 200;
        std::size_t n_bs_antennas = 16;
        double p_d_dbm = 5.0;
        double noise_dbm = -80.0;
        double l0_db = -30.0;
        double d_bs_irs = 51.0;
        double d_vertical = 2.0;
        std::vector<double> d_sweep{0, 5, 10, 15, 20, 25, 30, 35, 40, 45, 50, 51};

        // l0_db of each link is overwritten by the top-level l0_db.
        LinkStatistics direct{0.0, 3.0, 10.0, -30.0};
        LinkStatistics bs_irs{std::numeric_limits<double>::infinity(), 2.0, 0.0, -30.0};
        LinkStatistics irs_ue{0.0, 3.0, 10.0, -30.0};
        double bs_irs_aod_rad = 0.5;
        double bs_irs_aoa_rad = -0.3;
        double bs_ue_aod_rad = 0.0;
        double irs_ue_aod_rad = 0.0;

        std::vector<double> rho_list{1.0, 0.9, 0.6, 0.3, 0.0};
        std::vector<Concentration> kappa_list{Concentration::noiseless(), Concentration::of(4.0),
                                              Concentration::of(1.0), Concentration::of(0.0)};

        double carrier_hz = 3.0e9;
        double slot_s = 1.0e-3;
        double c_phi = 1.0e-18;
        double c_psi = 1.0e-18;
        std::optional<double> sigma_phi_sq; // overrides the value derived from c_phi
        std::optional<double> sigma_psi_sq;

        std::size_t slots = 1; // data slots T per frame
        std::size_t trials = 1000;
        std::uint64_t seed = 20240601;
        bool direct_link = true;
        bool oscillator = false; // used by the custom scenario
        std::size_t iterations = 3;
        SeMetric se_metric = SeMetric::slot;

        double p_d_watt() const { return std::pow(10.0, (p_d_dbm - 30.0) / 10.0); }
        double noise_watt() const { return std::pow(10.0, (noise_dbm - 30.0) / 10.0); }
        double snr_scale() const { return p_d_watt() / noise_watt(); }

        double phi_variance() const
        {
            return sigma_phi_sq ? *sigma_phi_sq : oscillator_variance(carrier_hz, c_phi, slot_s);
        }
        double psi_variance() const
        {
            return sigma_psi_sq ? *sigma_psi_sq : oscillator_variance(carrier_hz, c_psi, slot_s);
        }

        ChannelParams channel_params(bool with_direct_link) const
        {
            ChannelParams p;
            p.n_reflectors = n_reflectors;
            p.n_bs_antennas = n_bs_antennas;
            p.direct = direct;
            p.bs_irs = bs_irs;
            p.irs_ue = irs_ue;
            p.direct.l0_db = p.bs_irs.l0_db = p.irs_ue.l0_db = l0_db;
            p.bs_irs_departure_rad = bs_irs_aod_rad;
            p.bs_irs_arrival_rad = bs_irs_aoa_rad;
            p.bs_ue_departure_rad = bs_ue_aod_rad;
            p.irs_ue_departure_rad = irs_ue_aod_rad;
            p.direct_link = with_direct_link;
            return p;
        }

        Geometry geometry(double d) const { return {d_bs_irs, d_vertical, d}; }
    };

    namespace config_detail
    {
        inline std::string_view trim(std::string_view s)
        {
            const auto first = s.find_first_not_of(" \t\r");
            if (first == std::string_view::npos)
                return {};
            const auto last = s.find_last_not_of(" \t\r");
            return s.substr(first, last - first + 1);
        }

        inline std::string format_double(double v)
        {
            if (std::isinf(v))
                return v > 0 ? "inf" : "-inf";
            char buf[64];
            auto res = std::to_chars(buf, buf + sizeof(buf), v);
            return std::string(buf, res.ptr);
        }

        inline double parse_double(const std::string &field, std::string_view text)
        {
            text = trim(text);
            if (text == "inf" || text == "+inf")
                return std::numeric_limits<double>::infinity();
            double v = 0.0;
            const auto *end = text.data() + text.size();
            auto res = std::from_chars(text.data(), end, v);
            if (res.ec != std::errc{} || res.ptr != end || text.empty())
                throw ConfigError(field, "expected a number, got '" + std::string(text) + "'");
            return v;
        }

        inline std::uint64_t parse_unsigned(const std::string &field, std::string_view text)
        {
            text = trim(text);
            std::uint64_t v = 0;
            const auto *end = text.data() + text.size();
            auto res = std::from_chars(text.data(), end, v);
            if (res.ec != std::errc{} || res.ptr != end || text.empty())
                throw ConfigError(field, "expected a non-negative integer, got '" + std::string(text) + "'");
            return v;
        }

        inline bool parse_bool(const std::string &field, std::string_view text)
        {
            text = trim(text);
            if (text == "true" || text == "1" || text == "on" || text == "yes")
                return true;
            if (text == "false" || text == "0" || text == "off" || text == "no")
                return false;
            throw ConfigError(field, "expected true/false, got '" + std::string(text) + "'");
        }

        inline std::vector<double> parse_list(const std::string &field, std::string_view text)
        {
            std::vector<double> out;
            text = trim(text);
            if (text.empty())
                return out;
            std::size_t start = 0;
            while (start <= text.size())
            {
                const auto comma = text.find(',', start);
                const auto item = text.substr(start, comma == std::string_view::npos ? text.npos : comma - start);
                out.push_back(parse_double(field, item));
                if (comma == std::string_view::npos)
                    break;
                start = comma + 1;
            }
            return out;
        }

        inline std::string join(const std::vector<double> &v)
        {
            std::string out;
            for (std::size_t i = 0; i < v.size(); ++i)
                out += (i ? ", " : "") + format_double(v[i]);
            return out;
        }

        struct Key
        {
            std::string name;
            std::string help;
            std::function<void(ScenarioConfig &, const std::string &, std::string_view)> set;
            std::function<std::string(const ScenarioConfig &)> get;
        };

        inline Key number(std::string name, std::string help, double ScenarioConfig::*member)
        {
            return {std::move(name), std::move(help),
                    [member](ScenarioConfig &c, const std::string &f, std::string_view v) { c.*member = parse_double(f, v); },
                    [member](const ScenarioConfig &c) { return format_double(c.*member); }};
        }

        inline Key count(std::string name, std::string help, std::size_t ScenarioConfig::*member)
        {
            return {std::move(name), std::move(help),
                    [member](ScenarioConfig &c, const std::string &f, std::string_view v)
                    { c.*member = static_cast<std::size_t>(parse_unsigned(f, v)); },
                    [member](const ScenarioConfig &c) { return std::to_string(c.*member); }};
        }

        inline Key flag(std::string name, std::string help, bool ScenarioConfig::*member)
        {
            return {std::move(name), std::move(help),
                    [member](ScenarioConfig &c, const std::string &f, std::string_view v) { c.*member = parse_bool(f, v); },
                    [member](const ScenarioConfig &c) { return std::string(c.*member ? "true" : "false"); }};
        }

        inline Key link_number(std::string name, std::string help, LinkStatistics ScenarioConfig::*link,
                               double LinkStatistics::*member)
        {
            return {std::move(name), std::move(help),
                    [link, member](ScenarioConfig &c, const std::string &f, std::string_view v)
                    { (c.*link).*member = parse_double(f, v); },
                    [link, member](const ScenarioConfig &c) { return format_double((c.*link).*member); }};
        }

        inline Key variance_override(std::string name, std::string help, std::optional<double> ScenarioConfig::*member)
        {
            return {std::move(name), std::move(help),
                    [member](ScenarioConfig &c, const std::string &f, std::string_view v)
                    {
                        if (trim(v) == "auto")
                            c.*member = std::nullopt;
                        else
                            c.*member = parse_double(f, v);
                    },
                    [member](const ScenarioConfig &c) { return (c.*member) ? format_double(*(c.*member)) : "auto"; }};
        }

        inline const std::vector<Key> &keys()
        {
            using C = ScenarioConfig;
            static const std::vector<Key> table = {
                count("N", "IRS reflecting elements", &C::n_reflectors),
                count("N_b", "BS antennas", &C::n_bs_antennas),
                number("P_d_dBm", "BS transmit power", &C::p_d_dbm),
                number("sigma_n_sq_dBm", "noise power", &C::noise_dbm),
                number("L0_dB", "path loss at the 1 m reference, all links", &C::l0_db),
                number("d_BI_m", "BS-IRS distance", &C::d_bs_irs),
                number("d_v_m", "vertical offset of the UE line (>= 1 m)", &C::d_vertical),
                {"d_sweep_m", "horizontal BS-UE distances, each in [0, 2 d_BI]",
                 [](C &c, const std::string &f, std::string_view v) { c.d_sweep = parse_list(f, v); },
                 [](const C &c) { return join(c.d_sweep); }},
                link_number("direct_K", "Rician factor of the BS-UE link (inf = LOS)", &C::direct, &LinkStatistics::rician_k),
                link_number("direct_alpha", "path-loss exponent of the BS-UE link", &C::direct, &LinkStatistics::pathloss_exponent),
                link_number("direct_shadowing_dB", "extra loss on the BS-UE link", &C::direct, &LinkStatistics::shadowing_db),
                link_number("bs_irs_K", "Rician factor of the BS-IRS link", &C::bs_irs, &LinkStatistics::rician_k),
                link_number("bs_irs_alpha", "path-loss exponent of the BS-IRS link", &C::bs_irs, &LinkStatistics::pathloss_exponent),
                link_number("bs_irs_shadowing_dB", "extra loss on the BS-IRS link", &C::bs_irs, &LinkStatistics::shadowing_db),
                link_number("irs_ue_K", "Rician factor of the IRS-UE link", &C::irs_ue, &LinkStatistics::rician_k),
                link_number("irs_ue_alpha", "path-loss exponent of the IRS-UE link", &C::irs_ue, &LinkStatistics::pathloss_exponent),
                link_number("irs_ue_shadowing_dB", "extra loss on the IRS-UE link", &C::irs_ue, &LinkStatistics::shadowing_db),
                number("bs_irs_aod_rad", "LOS departure angle at the BS (ULA, lambda/2)", &C::bs_irs_aod_rad),
                number("bs_irs_aoa_rad", "LOS arrival angle at the IRS (ULA, lambda/2)", &C::bs_irs_aoa_rad),
                number("bs_ue_aod_rad", "LOS departure angle of the BS-UE link, used when direct_K > 0", &C::bs_ue_aod_rad),
                number("irs_ue_aod_rad", "LOS departure angle of the IRS-UE link, used when irs_ue_K > 0", &C::irs_ue_aod_rad),
                {"rho_list", "correlation coefficients, each in [0, 1]",
                 [](C &c, const std::string &f, std::string_view v) { c.rho_list = parse_list(f, v); },
                 [](const C &c) { return join(c.rho_list); }},
                {"kappa_list", "Von Mises concentrations, each >= 0 or inf",
                 [](C &c, const std::string &f, std::string_view v)
                 {
                     c.kappa_list.clear();
                     for (double k : parse_list(f, v))
                     {
                         try
                         {
                             c.kappa_list.push_back(Concentration::of(k));
                         }
                         catch (const std::domain_error &)
                         {
                             throw ConfigError(f, "every kappa must be >= 0 or inf");
                         }
                     }
                 },
                 [](const C &c)
                 {
                     std::vector<double> v;
                     for (const auto &k : c.kappa_list)
                         v.push_back(k.value());
                     return join(v);
                 }},
                number("carrier_hz", "carrier frequency f_c", &C::carrier_hz),
                number("slot_s", "slot duration T_s", &C::slot_s),
                number("c_phi", "BS oscillator constant", &C::c_phi),
                number("c_psi", "UE oscillator constant", &C::c_psi),
                variance_override("sigma_phi_sq", "BS phase increment variance per slot (auto = 4 pi^2 f_c c_phi T_s)", &C::sigma_phi_sq),
                variance_override("sigma_psi_sq", "UE phase increment variance per slot (auto = 4 pi^2 f_c c_psi T_s)", &C::sigma_psi_sq),
                count("T", "data slots per frame", &C::slots),
                count("trials", "Monte Carlo trials per point", &C::trials),
                {"seed", "root RNG seed",
                 [](C &c, const std::string &f, std::string_view v) { c.seed = parse_unsigned(f, v); },
                 [](const C &c) { return std::to_string(c.seed); }},
                flag("direct_link", "include the BS-UE link", &C::direct_link),
                flag("oscillator", "oscillator phase noise in the custom scenario", &C::oscillator),
                count("iterations", "alternating optimisation iterations", &C::iterations),
                {"se_metric", "slot = mean R_t over data slots, frame = sum R_t / (T+1)",
                 [](C &c, const std::string &f, std::string_view v)
                 {
                     v = trim(v);
                     if (v == "slot")
                         c.se_metric = SeMetric::slot;
                     else if (v == "frame")
                         c.se_metric = SeMetric::frame;
                     else
                         throw ConfigError(f, "expected slot or frame");
                 },
                 [](const C &c) { return std::string(c.se_metric == SeMetric::slot ? "slot" : "frame"); }},
            };
            return table;
        }
    }

    /// Throws ConfigError naming the first field that violates its constraint.
    inline void validate(const ScenarioConfig &c)
    {
        auto require = [](bool ok, const char *field, const char *what)
        {
            if (!ok)
                throw ConfigError(field, what);
        };
        require(c.n_reflectors >= 1, "N", "must be >= 1");
        require(c.n_bs_antennas >= 1, "N_b", "must be >= 1");
        require(std::isfinite(c.p_d_dbm), "P_d_dBm", "must be finite");
        require(std::isfinite(c.noise_dbm), "sigma_n_sq_dBm", "must be finite");
        require(std::isfinite(c.l0_db), "L0_dB", "must be finite");
        require(std::isfinite(c.d_bs_irs) && c.d_bs_irs >= reference_distance_m, "d_BI_m", "must be >= 1 m");
        require(std::isfinite(c.d_vertical) && c.d_vertical >= reference_distance_m, "d_v_m", "must be >= 1 m");
        require(!c.d_sweep.empty(), "d_sweep_m", "must list at least one distance");
        for (double d : c.d_sweep)
            require(d >= 0.0 && d <= 2.0 * c.d_bs_irs, "d_sweep_m", "every distance must lie in [0, 2 d_BI]");

        auto check_link = [&](const LinkStatistics &s, const char *k, const char *alpha, const char *shadow)
        {
            require(s.rician_k >= 0.0, k, "must be >= 0 or inf");
            require(std::isfinite(s.pathloss_exponent) && s.pathloss_exponent >= 0.0, alpha, "must be finite and >= 0");
            require(std::isfinite(s.shadowing_db), shadow, "must be finite");
        };
        check_link(c.direct, "direct_K", "direct_alpha", "direct_shadowing_dB");
        check_link(c.bs_irs, "bs_irs_K", "bs_irs_alpha", "bs_irs_shadowing_dB");
        check_link(c.irs_ue, "irs_ue_K", "irs_ue_alpha", "irs_ue_shadowing_dB");

        require(!c.rho_list.empty(), "rho_list", "must list at least one value");
        for (double r : c.rho_list)
            require(r >= 0.0 && r <= 1.0, "rho_list", "every rho must lie in [0, 1]");
        require(!c.kappa_list.empty(), "kappa_list", "must list at least one value");

        require(c.carrier_hz > 0.0 && std::isfinite(c.carrier_hz), "carrier_hz", "must be > 0");
        require(c.slot_s > 0.0 && std::isfinite(c.slot_s), "slot_s", "must be > 0");
        require(c.c_phi >= 0.0 && std::isfinite(c.c_phi), "c_phi", "must be >= 0");
        require(c.c_psi >= 0.0 && std::isfinite(c.c_psi), "c_psi", "must be >= 0");
        require(!c.sigma_phi_sq || (*c.sigma_phi_sq >= 0.0 && std::isfinite(*c.sigma_phi_sq)), "sigma_phi_sq", "must be >= 0");
        require(!c.sigma_psi_sq || (*c.sigma_psi_sq >= 0.0 && std::isfinite(*c.sigma_psi_sq)), "sigma_psi_sq", "must be >= 0");
        require(c.slots >= 1, "T", "must be >= 1");
        require(c.trials >= 1, "trials", "must be >= 1");
        require(c.iterations >= 1, "iterations", "must be >= 1");
    }

    /**
     * Parses the flat `key = value` format. `#` starts a comment; lists are
     * comma-separated; `inf` is accepted wherever a concentration or Rician factor
     * is expected. Missing keys keep their defaults. The result is validated.
     */
    inline ScenarioConfig parse_config(std::string_view text, ScenarioConfig cfg = {})
    {
        const auto &table = config_detail::keys();
        std::size_t line_no = 0;
        while (!text.empty())
        {
            const auto nl = text.find('\n');
            std::string_view line = text.substr(0, nl);
            text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
            ++line_no;

            if (const auto hash = line.find('#'); hash != std::string_view::npos)
                line = line.substr(0, hash);
            line = config_detail::trim(line);
            if (line.empty())
                continue;
            const auto eq = line.find('=');
            if (eq == std::string_view::npos)
                throw ConfigError("line " + std::to_string(line_no), "expected key = value");
            const std::string key(config_detail::trim(line.substr(0, eq)));
            const auto value = config_detail::trim(line.substr(eq + 1));

            auto it = std::find_if(table.begin(), table.end(), [&](const auto &k) { return k.name == key; });
            if (it == table.end())
                throw ConfigError(key, "unknown key");
            it->set(cfg, key, value);
        }
        validate(cfg);
        return cfg;
    }

    inline ScenarioConfig load_config(const std::string &path)
    {
        std::ifstream in(path, std::ios::binary);
        if (!in)
            throw std::runtime_error("load_config: cannot open '" + path + "'");
        std::ostringstream ss;
        ss << in.rdbuf();
        return parse_config(ss.str());
    }

    /// Renders a config in the format parse_config reads, one documented key per line.
    inline std::string format_config(const ScenarioConfig &cfg)
    {
        std::string out;
        for (const auto &k : config_detail::keys())
            out += "# " + k.help + "\n" + k.name + " = " + k.get(cfg) + "\n";
        return out;
    }
}

#endif
