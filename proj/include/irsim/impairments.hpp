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

#ifndef IRSIM_IMPAIRMENTS_HPP
#define IRSIM_IMPAIRMENTS_HPP

#include "numerics.hpp"

#include <cmath>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <string>

namespace irsim
{
    inline constexpr double speed_of_light = 299792458.0; // m/s

    // ----- Channel aging (Jakes) ---------------------------------------------

    /// Maximum Doppler shift f_d = f_c v / c in Hz.
    inline double max_doppler(double speed_mps, double carrier_hz)
    {
        if (!(speed_mps >= 0.0))
            throw std::domain_error("max_doppler: speed must be >= 0");
        if (!(carrier_hz > 0.0))
            throw std::domain_error("max_doppler: carrier frequency must be > 0");
        return carrier_hz * speed_mps / speed_of_light;
    }

    /// Jakes correlation J0(2 pi f_d t T_s) between slot 0 and slot t.
    inline double correlation_coefficient(double doppler_hz, double slot, double slot_duration_s)
    {
        if (!(doppler_hz >= 0.0) || !(slot >= 0.0) || !(slot_duration_s > 0.0))
            throw std::domain_error("correlation_coefficient: need f_d >= 0, t >= 0, T_s > 0");
        return bessel_j0(two_pi * doppler_hz * slot * slot_duration_s);
    }

    /// Correlation coefficient of an aged channel, in [-1, 1].
    struct AgingParams
    {
        double rho = 1.0;

        static AgingParams from_mobility(double speed_mps, double carrier_hz, double slot_duration_s, double slot)
        {
            return {correlation_coefficient(max_doppler(speed_mps, carrier_hz), slot, slot_duration_s)};
        }
    };

    namespace detail
    {
        inline void require_correlation(double rho, const char *op)
        {
            if (!(rho >= -1.0 && rho <= 1.0))
                throw std::domain_error(std::string(op) + ": correlation coefficient must lie in [-1, 1]");
        }
    }

    /// rho h0 + sqrt(1 - rho^2) eps for a given innovation eps.
    inline cplx age_gain(cplx h0, double rho, cplx innovation)
    {
        detail::require_correlation(rho, "age_gain");
        if (rho == 1.0)
            return h0;
        return rho * h0 + std::sqrt(1.0 - rho * rho) * innovation;
    }

    /// Ages a gain with a fresh CN(0, 1) innovation.
    inline cplx age_gain(cplx h0, double rho, Rng &rng)
    {
        detail::require_correlation(rho, "age_gain");
        const cplx eps = rng.complex_normal();
        return age_gain(h0, rho, eps);
    }

    inline ComplexVector age_gain(const ComplexVector &h0, double rho, Rng &rng)
    {
        detail::require_correlation(rho, "age_gain");
        ComplexVector out(h0.size());
        for (std::size_t i = 0; i < h0.size(); ++i)
            out[i] = age_gain(h0[i], rho, rng.complex_normal());
        return out;
    }

    // ----- Oscillator phase noise (Wiener) -----------------------------------

    /// Per-slot Wiener increment variance 4 pi^2 f_c c T_s in rad^2.
    inline double oscillator_variance(double carrier_hz, double oscillator_constant, double slot_duration_s)
    {
        if (!(carrier_hz >= 0.0) || !(oscillator_constant >= 0.0) || !(slot_duration_s >= 0.0))
            throw std::domain_error("oscillator_variance: arguments must be non-negative");
        return 4.0 * pi * pi * carrier_hz * oscillator_constant * slot_duration_s;
    }

    /**
     * Oscillator phase state of the BS (phi) and UE (psi) oscillators.
     *
     * `phi_0`, `psi_0` are the slot-0 phases seen during training; `delta_phi`,
     * `delta_psi` are the accumulated Wiener increments since slot 0.
     */
    struct OscillatorTrace
    {
        double phi_0 = 0.0;
        double psi_0 = 0.0;
        double delta_phi = 0.0;
        double delta_psi = 0.0;
        double sigma_phi_sq = 0.0;
        double sigma_psi_sq = 0.0;
        std::size_t slot = 0;

        double phi() const noexcept { return phi_0 + delta_phi; }
        double psi() const noexcept { return psi_0 + delta_psi; }

        /// Trace with no phase noise at all.
        static OscillatorTrace ideal() { return {}; }

        /// Slot-0 trace with uniformly random initial phases.
        static OscillatorTrace start(Rng &rng, double sigma_phi_sq, double sigma_psi_sq)
        {
            if (!(sigma_phi_sq >= 0.0) || !(sigma_psi_sq >= 0.0))
                throw std::domain_error("OscillatorTrace: variances must be >= 0");
            OscillatorTrace trace;
            trace.phi_0 = -pi + two_pi * rng.uniform();
            trace.psi_0 = -pi + two_pi * rng.uniform();
            trace.sigma_phi_sq = sigma_phi_sq;
            trace.sigma_psi_sq = sigma_psi_sq;
            return trace;
        }
    };

    /// Advances the trace to slot `slot` by adding one increment per elapsed slot.
    inline OscillatorTrace accumulate_phase_noise(OscillatorTrace trace, std::size_t slot, Rng &rng)
    {
        if (slot < 1)
            throw std::domain_error("accumulate_phase_noise: slot must be >= 1");
        if (slot < trace.slot)
            throw std::domain_error("accumulate_phase_noise: cannot move back in time");
        const double sd_phi = std::sqrt(trace.sigma_phi_sq);
        const double sd_psi = std::sqrt(trace.sigma_psi_sq);
        for (std::size_t t = trace.slot + 1; t <= slot; ++t)
        {
            trace.delta_phi += sample_gaussian(rng, sd_phi);
            trace.delta_psi += sample_gaussian(rng, sd_psi);
        }
        trace.slot = slot;
        return trace;
    }

    // ----- Reflector phase noise (Von Mises) ---------------------------------

    /// Von Mises concentration, with an explicit sentinel for noiseless reflectors.
    class Concentration
    {
    public:
        static Concentration noiseless() { return Concentration(); }

        static Concentration of(double kappa)
        {
            if (std::isinf(kappa) && kappa > 0.0)
                return noiseless();
            if (!(kappa >= 0.0) || !std::isfinite(kappa))
                throw std::domain_error("Concentration: kappa must be >= 0 or +inf");
            Concentration c;
            c.kappa_ = kappa;
            return c;
        }

        bool is_noiseless() const noexcept { return kappa_ < 0.0; }

        /// kappa, or +inf for the noiseless sentinel.
        double value() const noexcept
        {
            return is_noiseless() ? std::numeric_limits<double>::infinity() : kappa_;
        }

        bool operator==(const Concentration &) const = default;

    private:
        Concentration() = default;
        double kappa_ = -1.0; // negative encodes "noiseless"
    };

    struct ReflectorNoise
    {
        Concentration kappa = Concentration::noiseless();
        std::vector<double> theta_tilde; // radians in [-pi, pi)

        /// diag(Theta~) as a vector of phasors.
        ComplexVector phasors() const
        {
            ComplexVector out(theta_tilde.size());
            for (std::size_t n = 0; n < theta_tilde.size(); ++n)
                out[n] = phasor(theta_tilde[n]);
            return out;
        }
    };

    inline ReflectorNoise sample_reflector_noise(Concentration kappa, std::size_t n_reflectors, Rng &rng)
    {
        if (n_reflectors == 0)
            throw std::domain_error("sample_reflector_noise: need at least one reflector");
        ReflectorNoise noise{kappa, std::vector<double>(n_reflectors, 0.0)};
        if (kappa.is_noiseless())
            return noise;
        for (auto &theta : noise.theta_tilde)
            theta = sample_von_mises(rng, kappa.value());
        return noise;
    }

    inline ReflectorNoise sample_reflector_noise(double kappa, std::size_t n_reflectors, Rng &rng)
    {
        return sample_reflector_noise(Concentration::of(kappa), n_reflectors, rng);
    }
}

#endif
