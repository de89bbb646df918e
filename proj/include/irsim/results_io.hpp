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

#ifndef IRSIM_RESULTS_IO_HPP
#define IRSIM_RESULTS_IO_HPP

#include "impairments.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace irsim
{
    /// One point of a spectral-efficiency curve. std_se is the standard error of the mean.
    struct ResultRecord
    {
        std::string scenario;
        double d_m = 0.0;
        double rho = 1.0;
        Concentration kappa = Concentration::noiseless();
        bool oscillator = false;
        std::size_t trials = 0;
        double mean_se = 0.0;
        double std_se = 0.0;
    };

    inline constexpr const char *results_header = "scenario,d_m,rho,kappa,oscillator,trials,mean_se_bpshz,std_se_bpshz";

    namespace csv_detail
    {
        inline std::string g6(double v)
        {
            char buf[32];
            std::snprintf(buf, sizeof(buf), "%.6g", v);
            return buf;
        }

        inline std::vector<std::string> split(const std::string &line)
        {
            std::vector<std::string> out;
            std::stringstream ss(line);
            std::string cell;
            while (std::getline(ss, cell, ','))
                out.push_back(cell);
            if (!line.empty() && line.back() == ',')
                out.emplace_back();
            return out;
        }
    }

    inline std::string format_record(const ResultRecord &r)
    {
        using csv_detail::g6;
        return r.scenario + "," + g6(r.d_m) + "," + g6(r.rho) + "," +
               (r.kappa.is_noiseless() ? std::string("inf") : g6(r.kappa.value())) + "," +
               (r.oscillator ? "on" : "off") + "," + std::to_string(r.trials) + "," + g6(r.mean_se) + "," +
               g6(r.std_se);
    }

    /// CSV text: header plus one newline-terminated row per record, 6 significant digits.
    inline std::string format_results(const std::vector<ResultRecord> &records)
    {
        std::string out = std::string(results_header) + "\n";
        for (const auto &r : records)
            out += format_record(r) + "\n";
        return out;
    }

    inline void write_results(const std::vector<ResultRecord> &records, const std::string &path)
    {
        std::ofstream out(path, std::ios::binary | std::ios::trunc);
        if (!out)
            throw std::runtime_error("write_results: cannot open '" + path + "' for writing");
        out << format_results(records);
        out.flush();
        if (!out)
            throw std::runtime_error("write_results: write to '" + path + "' failed");
    }

    inline std::vector<ResultRecord> parse_results(const std::string &text)
    {
        std::istringstream in(text);
        std::string line;
        if (!std::getline(in, line) || line != results_header)
            throw std::runtime_error("parse_results: missing or unexpected header");
        std::vector<ResultRecord> out;
        std::size_t row = 1;
        while (std::getline(in, line))
        {
            ++row;
            if (line.empty())
                continue;
            const auto cells = csv_detail::split(line);
            if (cells.size() != 8)
                throw std::runtime_error("parse_results: row " + std::to_string(row) + " has " +
                                         std::to_string(cells.size()) + " columns, expected 8");
            try
            {
                ResultRecord r;
                r.scenario = cells[0];
                r.d_m = std::stod(cells[1]);
                r.rho = std::stod(cells[2]);
                r.kappa = cells[3] == "inf" ? Concentration::noiseless() : Concentration::of(std::stod(cells[3]));
                if (cells[4] != "on" && cells[4] != "off")
                    throw std::invalid_argument("oscillator must be on/off");
                r.oscillator = cells[4] == "on";
                r.trials = static_cast<std::size_t>(std::stoull(cells[5]));
                r.mean_se = std::stod(cells[6]);
                r.std_se = std::stod(cells[7]);
                out.push_back(std::move(r));
            }
            catch (const std::exception &e)
            {
                throw std::runtime_error("parse_results: row " + std::to_string(row) + ": " + e.what());
            }
        }
        return out;
    }

    inline std::vector<ResultRecord> read_results(const std::string &path)
    {
        std::ifstream in(path, std::ios::binary);
        if (!in)
            throw std::runtime_error("read_results: cannot open '" + path + "'");
        std::ostringstream ss;
        ss << in.rdbuf();
        return parse_results(ss.str());
    }
}

#endif
