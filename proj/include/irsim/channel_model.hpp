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

#ifndef IRSIM_CHANNEL_MODEL_HPP
#define IRSIM_CHANNEL_MODEL_HPP

#include "impairments.hpp"
#include "numerics.hpp"

#include <cmath>
#include <cstddef>
#include <limits>
#include <stdexcept>

namespace irsim
{
    // ----- Geometry and large-scale fading -----------------------------------

    /// BS at the origin, IRS at distance d_BI along the x axis, UE on a line parallel
    /// to BS-IRS at vertical offset d_v, horizontal distance d from the BS.
    struct Geometry
    {
        double d_bs_irs = 51.0; // m
        double d_vertical = 2.0; // m
        double d = 25.5;         // m
    };

    struct LinkDistances
    {
        double bs_ue;  // m
        double irs_ue; // m
    };

    inline LinkDistances geometry_distances(const Geometry &g)
    {
        if (!(g.d_bs_irs > 0.0) || !(g.d_vertical > 0.0) || !(g.d >= 0.0))
            throw std::domain_error("geometry_distances: distances must be positive");
        return {std::hypot(g.d, g.d_vertical), std::hypot(g.d_bs_irs - g.d, g.d_vertical)};
    }

    inline constexpr double reference_distance_m = 1.0;

    struct LinkStatistics
    {
        double rician_k = 0.0;         // linear, +inf for pure LOS
        double pathloss_exponent = 3.0;
        double shadowing_db = 0.0;     // extra deterministic loss
        double l0_db = -30.0;          // path loss at 1 m
    };

    /// Linear power gain L0 d^-alpha with the shadowing penalty.
    inline double path_loss_linear(double distance_m, const LinkStatistics &stats)
    {
        if (!(distance_m >= reference_distance_m))
            throw std::domain_error("path_loss_linear: distance below the 1 m reference");
        const double db = stats.l0_db - 10.0 * stats.pathloss_exponent * std::log10(distance_m) - stats.shadowing_db;
        return std::pow(10.0, db / 10.0);
    }

    inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

    // ----- Small-scale fading ------------------------------------------------

    /// Half-wavelength ULA steering vector e^{j pi n sin(angle)}.
    inline ComplexVector steering_vector(std::size_t n, double angle_rad)
    {
        ComplexVector out(n);
        const double step = pi * std::sin(angle_rad);
        for (std::size_t i = 0; i < n; ++i)
            out[i] = phasor(step * static_cast<double>(i));
        return out;
    }

    namespace detail
    {
        inline void require_unit_modulus(std::span<const cplx> los)
        {
            for (const auto &v : los)
                if (std::fabs(std::abs(v) - 1.0) > 1e-9)
                    throw std::domain_error("sample_rician: LOS component must be unit modulus");
        }

        inline void require_rician_k(double k)
        {
            if (!(k >= 0.0))
                throw std::domain_error("sample_rician: K must be >= 0 or +inf");
        }

        inline cplx rician_entry(double k, cplx los, Rng &rng)
        {
            if (k == 0.0)
                return rng.complex_normal();
            const double a_los = std::sqrt(k / (k + 1.0));
            const double a_nlos = std::sqrt(1.0 / (k + 1.0));
            return a_los * los + a_nlos * rng.complex_normal();
        }
    }

    /// sqrt(K/(K+1)) los + sqrt(1/(K+1)) CN(0, I). K = +inf returns `los` without drawing.
    inline ComplexVector sample_rician(double k, const ComplexVector &los, Rng &rng)
    {
        detail::require_rician_k(k);
        detail::require_unit_modulus(los.values());
        if (std::isinf(k))
            return los;
        ComplexVector out(los.size());
        for (std::size_t i = 0; i < los.size(); ++i)
            out[i] = detail::rician_entry(k, los[i], rng);
        return out;
    }

    inline ComplexMatrix sample_rician(double k, const ComplexMatrix &los, Rng &rng)
    {
        detail::require_rician_k(k);
        detail::require_unit_modulus(los.values());
        if (std::isinf(k))
            return los;
        ComplexMatrix out(los.rows(), los.cols());
        auto src = los.values();
        auto dst = out.values();
        for (std::size_t i = 0; i < src.size(); ++i)
            dst[i] = detail::rician_entry(k, src[i], rng);
        return out;
    }

    // ----- Channel sets ------------------------------------------------------

    /// Array sizes, link statistics and LOS angles needed to draw one channel realisation.
    struct ChannelParams
    {
        std::size_t n_reflectors = 200;
        std::size_t n_bs_antennas = 16;
        LinkStatistics direct{0.0, 3.0, 10.0, -30.0};
        LinkStatistics bs_irs{std::numeric_limits<double>::infinity(), 2.0, 0.0, -30.0};
        LinkStatistics irs_ue{0.0, 3.0, 10.0, -30.0};
        double bs_irs_departure_rad = 0.0; // at the BS array
        double bs_irs_arrival_rad = 0.0;   // at the IRS array
        double bs_ue_departure_rad = 0.0;  // LOS of the direct link (used only when K > 0)
        double irs_ue_departure_rad = 0.0; // LOS of the IRS-UE link (used only when K > 0)
        bool direct_link = true;
    };

    /**
     * True slot-0 gains of the three links and the estimates seen through the
     * oscillators during training:
     *   est_direct = e^{j(phi0+psi0)} true_direct
     *   est_bs_irs = e^{j phi0} true_bs_irs
     *   est_irs_ue = e^{j psi0} true_irs_ue
     *
     * beta_* are the linear large-scale gains; aging innovations are drawn at that power.
     */
    struct ChannelSet
    {
        ComplexVector true_direct; // N_b
        ComplexMatrix true_bs_irs; // N x N_b
        ComplexVector true_irs_ue; // N
        ComplexVector est_direct;
        ComplexMatrix est_bs_irs;
        ComplexVector est_irs_ue;
        double beta_direct = 0.0;
        double beta_bs_irs = 0.0;
        double beta_irs_ue = 0.0;
        double phi_0 = 0.0;
        double psi_0 = 0.0;

        std::size_t n_reflectors() const noexcept { return true_irs_ue.size(); }
        std::size_t n_bs_antennas() const noexcept { return true_direct.size(); }

        /// Builds estimates from true gains. Exact: no estimation error at slot 0.
        static ChannelSet from_true_gains(ComplexVector direct, ComplexMatrix bs_irs, ComplexVector irs_ue,
                                          double phi_0, double psi_0, double beta_direct = 1.0,
                                          double beta_bs_irs = 1.0, double beta_irs_ue = 1.0)
        {
            if (bs_irs.rows() != irs_ue.size() || bs_irs.cols() != direct.size())
                throw std::invalid_argument("ChannelSet: inconsistent link dimensions");
            ChannelSet cs;
            cs.phi_0 = phi_0;
            cs.psi_0 = psi_0;
            cs.beta_direct = beta_direct;
            cs.beta_bs_irs = beta_bs_irs;
            cs.beta_irs_ue = beta_irs_ue;
            cs.est_direct = scaled(direct, phasor(phi_0 + psi_0));
            cs.est_bs_irs = scaled(bs_irs, phasor(phi_0));
            cs.est_irs_ue = scaled(irs_ue, phasor(psi_0));
            cs.true_direct = std::move(direct);
            cs.true_bs_irs = std::move(bs_irs);
            cs.true_irs_ue = std::move(irs_ue);
            return cs;
        }
    };

    /**
     * Draws one realisation of all three links at horizontal distance `geometry.d`.
     *
     * Random draws happen in a fixed order (direct, BS-IRS, IRS-UE) and do not depend on
     * phi0/psi0 or on `direct_link`, so the same rng state yields the same true gains
     * whatever the oscillator phases.
     */
    inline ChannelSet generate_channel_set(const ChannelParams &p, const Geometry &geometry, double phi_0,
                                           double psi_0, Rng &rng)
    {
        if (p.n_reflectors == 0 || p.n_bs_antennas == 0)
            throw std::domain_error("generate_channel_set: array sizes must be >= 1");
        const auto dist = geometry_distances(geometry);
        const double beta_d = path_loss_linear(dist.bs_ue, p.direct);
        const double beta_h = path_loss_linear(geometry.d_bs_irs, p.bs_irs);
        const double beta_g = path_loss_linear(dist.irs_ue, p.irs_ue);

        const auto los_direct = steering_vector(p.n_bs_antennas, p.bs_ue_departure_rad);
        const auto los_bs_irs = outer(steering_vector(p.n_reflectors, p.bs_irs_arrival_rad),
                                      steering_vector(p.n_bs_antennas, p.bs_irs_departure_rad));
        const auto los_irs_ue = steering_vector(p.n_reflectors, p.irs_ue_departure_rad);

        auto direct = scaled(sample_rician(p.direct.rician_k, los_direct, rng), std::sqrt(beta_d));
        auto bs_irs = scaled(sample_rician(p.bs_irs.rician_k, los_bs_irs, rng), std::sqrt(beta_h));
        auto irs_ue = scaled(sample_rician(p.irs_ue.rician_k, los_irs_ue, rng), std::sqrt(beta_g));

        double beta_direct = beta_d;
        if (!p.direct_link)
        {
            direct = ComplexVector(p.n_bs_antennas);
            beta_direct = 0.0;
        }
        return ChannelSet::from_true_gains(std::move(direct), std::move(bs_irs), std::move(irs_ue), phi_0, psi_0,
                                           beta_direct, beta_h, beta_g);
    }

    // ----- Evolution to slot t -----------------------------------------------

    /// Standard CN(0, 1) aging innovations for the aged links.
    struct Innovations
    {
        ComplexVector direct; // N_b
        ComplexVector irs_ue; // N

        static Innovations draw(Rng &rng, std::size_t n_bs_antennas, std::size_t n_reflectors)
        {
            Innovations out;
            out.direct = sample_complex_normal(rng, n_bs_antennas);
            out.irs_ue = sample_complex_normal(rng, n_reflectors);
            return out;
        }
    };

    /// Actual CSI (as seen through the oscillators) at a data slot.
    struct ActualCsi
    {
        ComplexVector direct; // h_d,t
        ComplexMatrix bs_irs; // H_t
        ComplexVector irs_ue; // g_t
    };

    /**
     * Projects the slot-0 estimates to slot t.
     *
     *   h_d,t = rho est_d e^{j(dPhi+dPsi)} + sqrt(1-rho^2) eps_d e^{j(phi0+psi0+dPhi+dPsi)}
     *   g_t   = rho est_g e^{j dPsi}        + sqrt(1-rho^2) eps_g e^{j(psi0+dPsi)}
     *   H_t   = est_H e^{j dPhi}             (LOS link, no aging)
     *
     * eps_* are the standard innovations scaled to the link's large-scale power.
     */
    inline ActualCsi evolve_channels(const ChannelSet &cs, double rho, const OscillatorTrace &trace,
                                     const Innovations &innov)
    {
        detail::require_correlation(rho, "evolve_channels");
        detail::require_same_size(innov.direct.size(), cs.n_bs_antennas(), "evolve_channels");
        detail::require_same_size(innov.irs_ue.size(), cs.n_reflectors(), "evolve_channels");

        const cplx rot_d = phasor(trace.delta_phi + trace.delta_psi);
        const cplx rot_d_innov = phasor(trace.phi_0 + trace.psi_0 + trace.delta_phi + trace.delta_psi);
        const cplx rot_g = phasor(trace.delta_psi);
        const cplx rot_g_innov = phasor(trace.psi_0 + trace.delta_psi);
        const double amp_d = std::sqrt(cs.beta_direct);
        const double amp_g = std::sqrt(cs.beta_irs_ue);

        ActualCsi out{ComplexVector(cs.n_bs_antennas()), scaled(cs.est_bs_irs, phasor(trace.delta_phi)),
                      ComplexVector(cs.n_reflectors())};
        for (std::size_t i = 0; i < cs.n_bs_antennas(); ++i)
            out.direct[i] = age_gain(cs.est_direct[i] * rot_d, rho, amp_d * innov.direct[i] * rot_d_innov);
        for (std::size_t n = 0; n < cs.n_reflectors(); ++n)
            out.irs_ue[n] = age_gain(cs.est_irs_ue[n] * rot_g, rho, amp_g * innov.irs_ue[n] * rot_g_innov);
        return out;
    }

    inline ActualCsi evolve_channels(const ChannelSet &cs, double rho, const OscillatorTrace &trace, Rng &rng)
    {
        return evolve_channels(cs, rho, trace, Innovations::draw(rng, cs.n_bs_antennas(), cs.n_reflectors()));
    }
}

#endif
