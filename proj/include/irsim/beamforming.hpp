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

#ifndef IRSIM_BEAMFORMING_HPP
#define IRSIM_BEAMFORMING_HPP

#include "channel_model.hpp"
#include "impairments.hpp"
#include "numerics.hpp"

#include <cmath>
#include <cstddef>
#include <numeric>
#include <span>
#include <stdexcept>
#include <vector>

namespace irsim
{
    /// Thrown when the effective channel vanishes and MRT is undefined.
    class DegenerateChannelError : public std::domain_error
    {
    public:
        using std::domain_error::domain_error;
    };

    struct BeamformSolution
    {
        ComplexVector w;                     // unit-norm transmit vector
        std::vector<double> theta;           // reflector phases in [0, 2 pi)
        double achieved_rate_0 = 0.0;        // bit/s/Hz on the slot-0 estimates
        std::size_t iterations_used = 0;
        std::vector<double> objective_trace; // |(g^T Theta H + h_d^T) w|^2 after each iteration
    };

    inline ComplexVector theta_phasors(std::span<const double> theta)
    {
        ComplexVector out(theta.size());
        for (std::size_t n = 0; n < theta.size(); ++n)
            out[n] = phasor(theta[n]);
        return out;
    }

    /// g0^T Theta H0 + h_d0^T on the slot-0 estimates, as a length-N_b vector.
    inline ComplexVector effective_channel(const ChannelSet &cs, std::span<const double> theta)
    {
        detail::require_same_size(theta.size(), cs.n_reflectors(), "effective_channel");
        return diag_weighted_row_sum(cs.est_irs_ue, theta_phasors(theta), cs.est_bs_irs) + cs.est_direct;
    }

    /// |(g0^T Theta H0 + h_d0^T) w|^2
    inline double beamforming_objective(const ChannelSet &cs, std::span<const double> theta, const ComplexVector &w)
    {
        return std::norm(dot_transpose(effective_channel(cs, theta), w));
    }

    /**
     * Phase update for fixed w: rotates every reflected path onto the phase of the direct
     * path h_d0^T w. Without a direct path the first reflected path is the reference.
     */
    inline std::vector<double> passive_phase_update(const ComplexVector &w, const ChannelSet &cs)
    {
        if (std::fabs(norm(w) - 1.0) > 1e-9)
            throw std::domain_error("passive_phase_update: w must have unit norm");
        const ComplexVector hw = multiply(cs.est_bs_irs, w);
        const cplx direct = dot_transpose(cs.est_direct, w);

        std::vector<cplx> reflected(cs.n_reflectors());
        for (std::size_t n = 0; n < reflected.size(); ++n)
            reflected[n] = cs.est_irs_ue[n] * hw[n];

        const double reference = direct != cplx{} ? std::arg(direct) : std::arg(reflected.front());
        std::vector<double> theta(reflected.size());
        for (std::size_t n = 0; n < reflected.size(); ++n)
            theta[n] = wrap_two_pi(reference - std::arg(reflected[n]));
        return theta;
    }

    /// Maximum ratio transmission for fixed phases: conj(c) / ||c||.
    inline ComplexVector mrt_weights(const ChannelSet &cs, std::span<const double> theta)
    {
        const ComplexVector c = effective_channel(cs, theta);
        const double len = norm(c);
        if (!(len > 0.0))
            throw DegenerateChannelError("mrt_weights: effective channel is zero");
        return scaled(conjugate(c), 1.0 / len);
    }

    namespace detail
    {
        /// Principal eigenvector of sum_k conj(a_k) a_k^T over all paths a_k (rows of
        /// diag(g0) H0 and h_d0^T): the w that maximises total path power. Power iteration
        /// from `seed_vector`.
        inline ComplexVector principal_path_direction(const ChannelSet &cs, const ComplexVector &seed_vector)
        {
            const std::size_t nb = cs.n_bs_antennas();
            std::vector<cplx> gram(nb * nb, cplx{});
            auto accumulate = [&](cplx scale, std::span<const cplx> row)
            {
                for (std::size_t i = 0; i < nb; ++i)
                {
                    const cplx ci = std::conj(scale * row[i]);
                    for (std::size_t j = 0; j < nb; ++j)
                        gram[i * nb + j] += ci * scale * row[j];
                }
            };
            for (std::size_t n = 0; n < cs.n_reflectors(); ++n)
                accumulate(cs.est_irs_ue[n], cs.est_bs_irs.row(n));
            accumulate(1.0, cs.est_direct.values());

            ComplexVector v = seed_vector;
            for (int it = 0; it < 100; ++it)
            {
                ComplexVector next(nb);
                for (std::size_t i = 0; i < nb; ++i)
                    for (std::size_t j = 0; j < nb; ++j)
                        next[i] += gram[i * nb + j] * v[j];
                const double len = norm(next);
                if (!(len > 0.0))
                    return seed_vector;
                v = scaled(next, 1.0 / len);
            }
            return v;
        }

        struct AoRun
        {
            ComplexVector w;
            std::vector<double> theta;
            std::vector<double> trace;
        };

        inline AoRun alternate(const ChannelSet &cs, ComplexVector w, std::size_t iterations)
        {
            AoRun run;
            for (std::size_t it = 0; it < iterations; ++it)
            {
                run.theta = passive_phase_update(w, cs);
                w = mrt_weights(cs, run.theta);
                run.trace.push_back(beamforming_objective(cs, run.theta, w));
            }
            run.w = std::move(w);
            return run;
        }

        // A later start replaces an earlier one only if it is better by more than this
        // relative margin; starts that reach the same optimum differ by rounding only.
        inline constexpr double start_switch_margin = 1e-9;
    }

    /**
     * Alternating optimisation of (w, Theta) on the slot-0 estimates.
     *
     * Each run alternates passive_phase_update (fixed w) and mrt_weights (fixed Theta).
     * Three runs start from different transmit vectors and the best one is kept:
     *   1. MRT for Theta = I,
     *   2. the principal direction of all paths,
     *   3. MRT on the direct link alone (skipped without a direct link).
     * Each is O(N N_b^2) per iteration. objective_trace[k] is the best objective over
     * all runs after k+1 iterations, so it is non-decreasing; a single step can only
     * lose rounding-level amounts. `snr_scale` (P_d / sigma_n^2, linear) only affects
     * achieved_rate_0.
     */
    inline BeamformSolution optimize(const ChannelSet &cs, std::size_t iterations, double snr_scale = 1.0)
    {
        if (iterations < 1)
            throw std::domain_error("optimize: iterations must be >= 1");

        std::vector<ComplexVector> starts;
        starts.push_back(mrt_weights(cs, std::vector<double>(cs.n_reflectors(), 0.0)));
        starts.push_back(detail::principal_path_direction(cs, starts.front()));
        if (const double len = norm(cs.est_direct); len > 0.0)
            starts.push_back(scaled(conjugate(cs.est_direct), 1.0 / len));

        BeamformSolution sol;
        sol.objective_trace.assign(iterations, 0.0);
        double best = -1.0;
        for (auto &start : starts)
        {
            auto run = detail::alternate(cs, std::move(start), iterations);
            for (std::size_t k = 0; k < iterations; ++k)
                sol.objective_trace[k] = std::max(sol.objective_trace[k], run.trace[k]);
            if (run.trace.back() > best * (1.0 + detail::start_switch_margin))
            {
                best = run.trace.back();
                sol.w = std::move(run.w);
                sol.theta = std::move(run.theta);
            }
        }
        for (std::size_t k = 1; k < iterations; ++k)
            sol.objective_trace[k] = std::max(sol.objective_trace[k], sol.objective_trace[k - 1]);
        sol.iterations_used = iterations;
        sol.achieved_rate_0 = std::log2(1.0 + snr_scale * best);
        return sol;
    }

    // ----- SNR at a data slot ------------------------------------------------

    struct SnrInputs
    {
        const BeamformSolution &solution;
        const ChannelSet &channels;
        double rho = 1.0;
        OscillatorTrace trace;
        ReflectorNoise reflector;
        double p_d_watt = 1.0;
        double noise_watt = 1.0;
    };

    namespace detail
    {
        inline void validate(const SnrInputs &inp)
        {
            if (!(inp.p_d_watt > 0.0) || !(inp.noise_watt > 0.0))
                throw std::domain_error("SnrInputs: P_d and sigma_n^2 must be > 0");
            require_correlation(inp.rho, "SnrInputs");
            require_same_size(inp.solution.theta.size(), inp.channels.n_reflectors(), "SnrInputs theta");
            require_same_size(inp.solution.w.size(), inp.channels.n_bs_antennas(), "SnrInputs w");
            require_same_size(inp.reflector.theta_tilde.size(), inp.channels.n_reflectors(), "SnrInputs reflector");
            if (inp.trace.phi_0 != inp.channels.phi_0 || inp.trace.psi_0 != inp.channels.psi_0)
                throw std::invalid_argument("SnrInputs: trace slot-0 phases differ from those in the channel estimates");
        }
    }

    /**
     * Received SNR at slot t evaluated on the actual CSI as the UE sees it, oscillator
     * phases included:
     *   gamma_t = P_d / sigma_n^2 |(g_t^T Theta* Theta~ H_t + h_d,t^T) w*|^2
     */
    inline double received_snr_full(const SnrInputs &inp, const Innovations &innov)
    {
        detail::validate(inp);
        const ActualCsi actual = evolve_channels(inp.channels, inp.rho, inp.trace, innov);
        ComplexVector reflection(inp.channels.n_reflectors());
        for (std::size_t n = 0; n < reflection.size(); ++n)
            reflection[n] = phasor(inp.solution.theta[n] + inp.reflector.theta_tilde[n]);
        const ComplexVector c = diag_weighted_row_sum(actual.irs_ue, reflection, actual.bs_irs) + actual.direct;
        return inp.p_d_watt / inp.noise_watt * std::norm(dot_transpose(c, inp.solution.w));
    }

    /// Draws fresh innovations from `rng` and evaluates received_snr_full.
    inline double received_snr_full(const SnrInputs &inp, Rng &rng)
    {
        return received_snr_full(
            inp, Innovations::draw(rng, inp.channels.n_bs_antennas(), inp.channels.n_reflectors()));
    }

    /**
     * Phase-noise-free form of the same SNR, on the true gains only:
     *   gamma_t = P_d / sigma_n^2 |([rho v_g + sqrt(1-rho^2) eps_g]^T Theta* Theta~ V_H
     *                              + [rho v_d + sqrt(1-rho^2) eps_d]^T) w_v|^2
     * with w_v the MRT vector of v_g^T Theta* V_H + v_d^T. No oscillator phase enters.
     */
    inline double received_snr_simplified(const SnrInputs &inp, const Innovations &innov)
    {
        detail::validate(inp);
        const ChannelSet &cs = inp.channels;
        const std::size_t n_refl = cs.n_reflectors();
        const std::size_t n_ant = cs.n_bs_antennas();
        detail::require_same_size(innov.direct.size(), n_ant, "received_snr_simplified");
        detail::require_same_size(innov.irs_ue.size(), n_refl, "received_snr_simplified");

        const double rho = inp.rho;
        const double spread = std::sqrt(1.0 - rho * rho);
        const double amp_g = spread * std::sqrt(cs.beta_irs_ue);
        const double amp_d = spread * std::sqrt(cs.beta_direct);

        std::vector<cplx> planned(n_ant, cplx{}); // v_g^T Theta* V_H + v_d^T
        std::vector<cplx> realised(n_ant, cplx{});
        for (std::size_t n = 0; n < n_refl; ++n)
        {
            const cplx commanded = std::polar(1.0, inp.solution.theta[n]);
            const cplx applied = commanded * std::polar(1.0, inp.reflector.theta_tilde[n]);
            const cplx g_planned = cs.true_irs_ue[n] * commanded;
            const cplx g_realised = (rho * cs.true_irs_ue[n] + amp_g * innov.irs_ue[n]) * applied;
            for (std::size_t b = 0; b < n_ant; ++b)
            {
                planned[b] += g_planned * cs.true_bs_irs(n, b);
                realised[b] += g_realised * cs.true_bs_irs(n, b);
            }
        }
        double planned_sq = 0.0;
        for (std::size_t b = 0; b < n_ant; ++b)
        {
            planned[b] += cs.true_direct[b];
            realised[b] += rho * cs.true_direct[b] + amp_d * innov.direct[b];
            planned_sq += std::norm(planned[b]);
        }

        cplx y{};
        if (planned_sq > 0.0)
        {
            const double inv = 1.0 / std::sqrt(planned_sq);
            for (std::size_t b = 0; b < n_ant; ++b)
                y += realised[b] * std::conj(planned[b]) * inv;
        }
        else
        {
            for (std::size_t b = 0; b < n_ant; ++b)
                y += realised[b] * inp.solution.w[b];
        }
        return inp.p_d_watt / inp.noise_watt * std::norm(y);
    }

    // ----- Rates -------------------------------------------------------------

    inline double spectral_efficiency(double gamma)
    {
        if (!(gamma >= 0.0))
            throw std::domain_error("spectral_efficiency: SNR must be >= 0");
        return std::log2(1.0 + gamma);
    }

    /// Frame average (1/(T+1)) sum_{t=1..T} R_t; the training slot carries no data.
    inline double frame_average_rate(std::span<const double> rates, std::size_t n_data_slots)
    {
        if (rates.empty())
            throw std::domain_error("frame_average_rate: no data slots");
        if (rates.size() != n_data_slots)
            throw std::domain_error("frame_average_rate: expected one rate per data slot");
        return std::accumulate(rates.begin(), rates.end(), 0.0) / static_cast<double>(n_data_slots + 1);
    }

    // ----- Exhaustive oracle -------------------------------------------------

    struct BruteForceResult
    {
        std::vector<double> theta;
        ComplexVector w;
        double objective = 0.0;
    };

    inline constexpr std::size_t brute_force_max_reflectors = 6;
    inline constexpr std::size_t brute_force_max_grid = std::size_t{1} << 24;

    /**
     * Exact maximum of |(g0^T Theta H0 + h_d0^T) w|^2 over theta_n in {2 pi k / levels},
     * with the MRT vector at every grid point (objective = ||c||^2). Ties resolve to the
     * first point in lexicographic order, theta_1 most significant.
     */
    inline BruteForceResult brute_force_optimize(const ChannelSet &cs, std::size_t levels)
    {
        const std::size_t n = cs.n_reflectors();
        if (levels < 1)
            throw std::length_error("brute_force_optimize: levels must be >= 1");
        if (n > brute_force_max_reflectors)
            throw std::length_error("brute_force_optimize: at most 6 reflectors");
        std::size_t grid = 1;
        for (std::size_t i = 0; i < n; ++i)
        {
            grid *= levels;
            if (grid > brute_force_max_grid)
                throw std::length_error("brute_force_optimize: grid exceeds 2^24 points");
        }

        const std::size_t n_ant = cs.n_bs_antennas();
        // contribution[(i * levels + k) * n_ant + b] = g_i e^{j 2 pi k / L} H_{i,b}
        std::vector<cplx> contribution(n * levels * n_ant);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t k = 0; k < levels; ++k)
            {
                const cplx gk = cs.est_irs_ue[i] * phasor(two_pi * static_cast<double>(k) / static_cast<double>(levels));
                for (std::size_t b = 0; b < n_ant; ++b)
                    contribution[(i * levels + k) * n_ant + b] = gk * cs.est_bs_irs(i, b);
            }

        std::vector<std::size_t> index(n, 0), best_index(n, 0);
        double best = -1.0;
        std::vector<cplx> c(n_ant);
        for (std::size_t point = 0; point < grid; ++point)
        {
            for (std::size_t b = 0; b < n_ant; ++b)
                c[b] = cs.est_direct[b];
            for (std::size_t i = 0; i < n; ++i)
            {
                const cplx *row = &contribution[(i * levels + index[i]) * n_ant];
                for (std::size_t b = 0; b < n_ant; ++b)
                    c[b] += row[b];
            }
            const double value = squared_norm(std::span<const cplx>(c));
            if (value > best)
            {
                best = value;
                best_index = index;
            }
            for (std::size_t i = n; i-- > 0;) // odometer, last reflector fastest
            {
                if (++index[i] < levels)
                    break;
                index[i] = 0;
            }
        }

        BruteForceResult out;
        out.theta.resize(n);
        for (std::size_t i = 0; i < n; ++i)
            out.theta[i] = two_pi * static_cast<double>(best_index[i]) / static_cast<double>(levels);
        out.objective = best;
        if (best > 0.0)
            out.w = mrt_weights(cs, out.theta);
        else
            out.w = ComplexVector(n_ant);
        return out;
    }
}

#endif
