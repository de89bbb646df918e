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

#ifndef IRSIM_VERIFICATION_HPP
#define IRSIM_VERIFICATION_HPP

#include "beamforming.hpp"
#include "channel_model.hpp"
#include "impairments.hpp"
#include "numerics.hpp"
#include "scenario_config.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>
#include <vector>

namespace irsim::verify
{
    struct CheckResult
    {
        std::string name;
        bool passed = false;
        double worst = 0.0;     // worst observed value of the checked quantity
        double threshold = 0.0; // pass limit for `worst`
        std::size_t instances = 0;
    };

    inline double relative_difference(double a, double b)
    {
        const double scale = std::max(std::fabs(a), std::fabs(b));
        return scale > 0.0 ? std::fabs(a - b) / scale : 0.0;
    }

    inline constexpr std::array<double, 5> rho_grid{0.0, 0.3, 0.6, 0.9, 1.0};
    inline constexpr std::array<double, 4> kappa_grid{0.0, 1.0, 10.0, -1.0}; // -1 = noiseless

    /// A randomised impairment scenario for the algebraic checks.
    struct Instance
    {
        ChannelParams params;
        Geometry geometry;
        double rho = 1.0;
        Concentration kappa = Concentration::noiseless();
        OscillatorTrace trace; // slot-0 phases and accumulated increments at slot t
        std::uint64_t channel_seed = 0;
        std::uint64_t draw_seed = 0;
    };

    /// Instance i cycles through rho x kappa x direct-link and randomises everything else.
    inline Instance make_instance(std::uint64_t seed, std::size_t i)
    {
        Rng rng(derive_seed(seed, i));
        const ScenarioConfig defaults;
        static constexpr std::array<std::size_t, 3> reflectors{8, 32, 200};
        static constexpr std::array<std::size_t, 3> antennas{1, 4, 16};

        Instance inst;
        inst.rho = rho_grid[i % rho_grid.size()];
        const double k = kappa_grid[(i / rho_grid.size()) % kappa_grid.size()];
        inst.kappa = k < 0.0 ? Concentration::noiseless() : Concentration::of(k);
        const bool direct = (i / (rho_grid.size() * kappa_grid.size())) % 2 == 0;

        inst.params = defaults.channel_params(direct);
        inst.params.n_reflectors = reflectors[rng.next_u64() % reflectors.size()];
        inst.params.n_bs_antennas = antennas[rng.next_u64() % antennas.size()];
        inst.params.bs_irs_departure_rad = -1.2 + 2.4 * rng.uniform();
        inst.params.bs_irs_arrival_rad = -1.2 + 2.4 * rng.uniform();
        inst.geometry = defaults.geometry(defaults.d_bs_irs * rng.uniform());

        // Deliberately large phase noise: the invariance must hold for any trace.
        const double sigma_sq = 0.5 * rng.uniform();
        inst.trace = OscillatorTrace::start(rng, sigma_sq, sigma_sq);
        inst.trace = accumulate_phase_noise(inst.trace, 1 + rng.next_u64() % 8, rng);

        inst.channel_seed = rng.next_u64();
        inst.draw_seed = rng.next_u64();
        return inst;
    }

    struct InstanceEvaluation
    {
        double full_noisy = 0.0;      // oscillator phases present everywhere
        double full_zero_phase = 0.0; // same gains and draws, all oscillator phases 0
        double simplified = 0.0;      // phase-free closed form on the noisy instance
    };

    inline InstanceEvaluation evaluate(const Instance &inst, double snr_scale)
    {
        Rng channel_a(inst.channel_seed);
        Rng channel_b(inst.channel_seed);
        const ChannelSet noisy =
            generate_channel_set(inst.params, inst.geometry, inst.trace.phi_0, inst.trace.psi_0, channel_a);
        const ChannelSet clean = generate_channel_set(inst.params, inst.geometry, 0.0, 0.0, channel_b);

        const auto sol_noisy = optimize(noisy, 3, snr_scale);
        const auto sol_clean = optimize(clean, 3, snr_scale);

        Rng draws(inst.draw_seed);
        const auto innov = Innovations::draw(draws, noisy.n_bs_antennas(), noisy.n_reflectors());
        const auto reflector = sample_reflector_noise(inst.kappa, noisy.n_reflectors(), draws);

        const SnrInputs with_noise{sol_noisy, noisy, inst.rho, inst.trace, reflector, snr_scale, 1.0};
        const SnrInputs without{sol_clean, clean, inst.rho, OscillatorTrace::ideal(), reflector, snr_scale, 1.0};
        return {received_snr_full(with_noise, innov), received_snr_full(without, innov),
                received_snr_simplified(with_noise, innov)};
    }

    /// Oscillator phase noise leaves the received SNR unchanged (shared innovation draws).
    inline CheckResult oscillator_invariance(std::size_t instances = 1000, std::uint64_t seed = 1)
    {
        const double snr = ScenarioConfig{}.snr_scale();
        CheckResult r{"oscillator-phase invariance of the received SNR", true, 0.0, 1e-10, instances};
        for (std::size_t i = 0; i < instances; ++i)
        {
            const auto e = evaluate(make_instance(seed, i), snr);
            r.worst = std::max(r.worst, relative_difference(e.full_noisy, e.full_zero_phase));
        }
        r.passed = r.worst <= r.threshold;
        return r;
    }

    /// Literal SNR on the aged, noisy CSI equals the phase-free closed form.
    inline CheckResult closed_form_equivalence(std::size_t instances = 1000, std::uint64_t seed = 2)
    {
        const double snr = ScenarioConfig{}.snr_scale();
        CheckResult r{"full vs simplified SNR evaluators", true, 0.0, 1e-10, instances};
        for (std::size_t i = 0; i < instances; ++i)
        {
            const auto e = evaluate(make_instance(seed, i), snr);
            r.worst = std::max(r.worst, relative_difference(e.full_noisy, e.simplified));
        }
        r.passed = r.worst <= r.threshold;
        return r;
    }

    /// Random small instance with unit-variance i.i.d. links for the exhaustive oracle.
    inline ChannelSet small_instance(Rng &rng, std::size_t n_reflectors, std::size_t n_antennas)
    {
        ComplexMatrix h(n_reflectors, n_antennas);
        for (auto &v : h.values())
            v = rng.complex_normal();
        auto g = sample_complex_normal(rng, n_reflectors);
        auto d = sample_complex_normal(rng, n_antennas);
        const double phi = -pi + two_pi * rng.uniform();
        const double psi = -pi + two_pi * rng.uniform();
        return ChannelSet::from_true_gains(std::move(d), std::move(h), std::move(g), phi, psi);
    }

    /// Alternating optimisation against exhaustive search; `worst` is the smallest ratio.
    inline CheckResult ao_vs_exhaustive(std::size_t instances = 100, std::uint64_t seed = 3)
    {
        CheckResult r{"alternating optimisation vs exhaustive grid (N=4, N_b=2, 16 levels)", true, 1.0, 0.95,
                      instances};
        bool monotone = true;
        for (std::size_t i = 0; i < instances; ++i)
        {
            Rng rng(derive_seed(seed, i));
            const auto cs = small_instance(rng, 4, 2);
            const auto ao = optimize(cs, 3);
            const auto bf = brute_force_optimize(cs, 16);
            r.worst = std::min(r.worst, beamforming_objective(cs, ao.theta, ao.w) / bf.objective);
            monotone = monotone && std::is_sorted(ao.objective_trace.begin(), ao.objective_trace.end());
        }
        r.passed = r.worst >= r.threshold && monotone;
        return r;
    }

    inline std::vector<CheckResult> run_all()
    {
        return {oscillator_invariance(), closed_form_equivalence(), ao_vs_exhaustive()};
    }
}

#endif
