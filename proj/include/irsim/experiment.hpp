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

#ifndef IRSIM_EXPERIMENT_HPP
#define IRSIM_EXPERIMENT_HPP

#include "beamforming.hpp"
#include "channel_model.hpp"
#include "impairments.hpp"
#include "numerics.hpp"
#include "results_io.hpp"
#include "scenario_config.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <exception>
#include <mutex>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace irsim
{
    /// One curve point: where the UE sits and which impairments are active.
    struct PointSpec
    {
        std::string scenario = "custom";
        double d = 25.5;
        double rho = 1.0;
        Concentration kappa = Concentration::noiseless();
        bool oscillator = false;
        bool direct_link = true;
    };

    // Stream keys for Rng::split. Each physical source of randomness owns one stream, so
    // switching a source on or off never shifts the draws of the others.
    namespace streams
    {
        inline constexpr std::uint64_t channel = 1;
        inline constexpr std::uint64_t oscillator = 2;
        inline constexpr std::uint64_t innovation = 3;
        inline constexpr std::uint64_t reflector = 4;
    }

    /// Root of trial `trial` at distance d. Depends only on (seed, d, trial), so every
    /// curve at the same d sees the same channel realisations.
    inline Rng trial_rng(std::uint64_t seed, double d, std::size_t trial)
    {
        return Rng(derive_seed(derive_seed(seed, std::bit_cast<std::uint64_t>(d)), trial));
    }

    /// Spectral efficiency of a single Monte Carlo trial.
    inline double run_trial(const ScenarioConfig &cfg, const ChannelParams &params, const PointSpec &point,
                            std::size_t trial)
    {
        const Rng root = trial_rng(cfg.seed, point.d, trial);
        Rng channel_rng = root.split(streams::channel);
        Rng oscillator_rng = root.split(streams::oscillator);
        Rng innovation_rng = root.split(streams::innovation);
        Rng reflector_rng = root.split(streams::reflector);

        OscillatorTrace trace = point.oscillator
                                    ? OscillatorTrace::start(oscillator_rng, cfg.phi_variance(), cfg.psi_variance())
                                    : OscillatorTrace::ideal();

        const ChannelSet cs = generate_channel_set(params, cfg.geometry(point.d), trace.phi_0, trace.psi_0, channel_rng);
        const BeamformSolution sol = optimize(cs, cfg.iterations, cfg.snr_scale());

        std::vector<double> rates;
        rates.reserve(cfg.slots);
        for (std::size_t t = 1; t <= cfg.slots; ++t)
        {
            if (point.oscillator)
                trace = accumulate_phase_noise(trace, t, oscillator_rng);
            const auto innov = Innovations::draw(innovation_rng, cs.n_bs_antennas(), cs.n_reflectors());
            SnrInputs inp{sol, cs, point.rho, trace,
                          sample_reflector_noise(point.kappa, cs.n_reflectors(), reflector_rng), cfg.p_d_watt(),
                          cfg.noise_watt()};
            rates.push_back(spectral_efficiency(received_snr_full(inp, innov)));
        }
        if (cfg.se_metric == SeMetric::frame)
            return frame_average_rate(rates, cfg.slots);
        double sum = 0.0;
        for (double r : rates)
            sum += r;
        return sum / static_cast<double>(rates.size());
    }

    /**
     * Monte Carlo estimate at one point. Trials are spread over `workers` threads; each
     * trial writes its own slot and the reduction runs in trial order, so the result is
     * bit-identical for any worker count.
     */
    inline ResultRecord run_point(const ScenarioConfig &cfg, const PointSpec &point, std::size_t workers = 1)
    {
        validate(cfg);
        if (!(point.rho >= 0.0 && point.rho <= 1.0))
            throw ConfigError("rho", "must lie in [0, 1]");
        if (!(point.d >= 0.0 && point.d <= 2.0 * cfg.d_bs_irs))
            throw ConfigError("d", "must lie in [0, 2 d_BI]");

        const ChannelParams params = cfg.channel_params(point.direct_link);
        std::vector<double> se(cfg.trials, 0.0);
        workers = std::clamp<std::size_t>(workers, 1, cfg.trials);

        if (workers == 1)
        {
            for (std::size_t i = 0; i < cfg.trials; ++i)
                se[i] = run_trial(cfg, params, point, i);
        }
        else
        {
            std::exception_ptr failure;
            std::mutex failure_lock;
            {
                std::vector<std::jthread> pool;
                pool.reserve(workers);
                for (std::size_t w = 0; w < workers; ++w)
                    pool.emplace_back(
                        [&, w]
                        {
                            try
                            {
                                for (std::size_t i = w; i < cfg.trials; i += workers)
                                    se[i] = run_trial(cfg, params, point, i);
                            }
                            catch (...)
                            {
                                std::lock_guard lock(failure_lock);
                                if (!failure)
                                    failure = std::current_exception();
                            }
                        });
            }
            if (failure)
                std::rethrow_exception(failure);
        }

        double sum = 0.0;
        for (double v : se)
            sum += v;
        const double mean = sum / static_cast<double>(se.size());
        double ss = 0.0;
        for (double v : se)
            ss += (v - mean) * (v - mean);
        const double n = static_cast<double>(se.size());
        const double std_error = se.size() > 1 ? std::sqrt(ss / (n - 1.0) / n) : 0.0;

        return {point.scenario, point.d, point.rho, point.kappa, point.oscillator, cfg.trials, mean, std_error};
    }

    enum class Scenario
    {
        fig2a,
        fig2b,
        fig2c,
        fig2d,
        custom
    };

    inline Scenario parse_scenario(const std::string &name)
    {
        if (name == "fig2a")
            return Scenario::fig2a;
        if (name == "fig2b")
            return Scenario::fig2b;
        if (name == "fig2c")
            return Scenario::fig2c;
        if (name == "fig2d")
            return Scenario::fig2d;
        if (name == "custom")
            return Scenario::custom;
        throw std::invalid_argument("unknown scenario '" + name + "' (expected fig2a|fig2b|fig2c|fig2d|custom)");
    }

    inline std::string scenario_name(Scenario s)
    {
        switch (s)
        {
        case Scenario::fig2a: return "fig2a";
        case Scenario::fig2b: return "fig2b";
        case Scenario::fig2c: return "fig2c";
        case Scenario::fig2d: return "fig2d";
        case Scenario::custom: return "custom";
        }
        return "custom";
    }

    /**
     * Curves of a scenario, without the d axis.
     *
     *   fig2a  rho_list, kappa = inf, oscillator off
     *   fig2b  kappa_list, rho = 1, oscillator off
     *   fig2c  rho_list x kappa_list, oscillator off and on
     *   fig2d  no direct link: (1, inf), (0.6, inf), (1, 1), (0.6, 1), (0, 0), oscillator off and on
     *   custom rho_list x kappa_list with the config's oscillator and direct_link flags
     */
    inline std::vector<PointSpec> scenario_curves(const ScenarioConfig &cfg, Scenario s)
    {
        const std::string label = scenario_name(s);
        std::vector<PointSpec> curves;
        auto add = [&](double rho, Concentration kappa, bool osc, bool direct)
        { curves.push_back({label, 0.0, rho, kappa, osc, direct}); };

        switch (s)
        {
        case Scenario::fig2a:
            for (double rho : cfg.rho_list)
                add(rho, Concentration::noiseless(), false, cfg.direct_link);
            break;
        case Scenario::fig2b:
            for (const auto &kappa : cfg.kappa_list)
                add(1.0, kappa, false, cfg.direct_link);
            break;
        case Scenario::fig2c:
            for (bool osc : {false, true})
                for (double rho : cfg.rho_list)
                    for (const auto &kappa : cfg.kappa_list)
                        add(rho, kappa, osc, cfg.direct_link);
            break;
        case Scenario::fig2d:
            for (bool osc : {false, true})
            {
                add(1.0, Concentration::noiseless(), osc, false);
                add(0.6, Concentration::noiseless(), osc, false);
                add(1.0, Concentration::of(1.0), osc, false);
                add(0.6, Concentration::of(1.0), osc, false);
                add(0.0, Concentration::of(0.0), osc, false);
            }
            break;
        case Scenario::custom:
            for (double rho : cfg.rho_list)
                for (const auto &kappa : cfg.kappa_list)
                    add(rho, kappa, cfg.oscillator, cfg.direct_link);
            break;
        }
        return curves;
    }

    /// All records of a scenario, curve-major, d in sweep order within a curve.
    inline std::vector<ResultRecord> run_sweep(const ScenarioConfig &cfg, Scenario s, std::size_t workers = 1)
    {
        validate(cfg);
        std::vector<ResultRecord> out;
        for (auto curve : scenario_curves(cfg, s))
            for (double d : cfg.d_sweep)
            {
                curve.d = d;
                out.push_back(run_point(cfg, curve, workers));
            }
        return out;
    }

    inline std::vector<ResultRecord> run_sweep(const ScenarioConfig &cfg, const std::string &scenario,
                                               std::size_t workers = 1)
    {
        return run_sweep(cfg, parse_scenario(scenario), workers);
    }
}

#endif
