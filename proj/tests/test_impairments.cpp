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

#include "catch_amalgamated.hpp"
#include "irsim/impairments.hpp"

#include <boost/math/special_functions/bessel.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

// Covered tests:
// - Doppler and Jakes correlation
// - age_gain: exact limits, correlation and power preservation
// - Oscillator variance formula, Wiener accumulation statistics
// - Reflector noise: sentinel, uniformity at kappa = 0, mean resultant length

using namespace irsim;
using Catch::Approx;

TEST_CASE("max_doppler")
{
    CHECK(max_doppler(0.0, 3e9) == 0.0);
    CHECK(max_doppler(30.0, 3e9) == Approx(300.208).margin(0.001));
    CHECK(max_doppler(1.0, 299792458.0) == Approx(1.0).epsilon(1e-15));
    CHECK_THROWS_AS(max_doppler(-1.0, 3e9), std::domain_error);
    CHECK_THROWS_AS(max_doppler(1.0, 0.0), std::domain_error);
}

TEST_CASE("correlation_coefficient follows J0")
{
    CHECK(correlation_coefficient(300.0, 0.0, 1e-3) == 1.0);
    // 2 pi f_d t T_s at the first zero of J0
    const double fd = 2.404825557695773 / (two_pi * 1e-3);
    CHECK(std::fabs(correlation_coefficient(fd, 1.0, 1e-3)) <= 1e-9);
    for (double fd2 : {1.0, 37.5, 300.0, 1234.0})
        for (double t : {0.5, 1.0, 3.0})
        {
            const double rho = correlation_coefficient(fd2, t, 1e-3);
            CHECK(rho == bessel_j0(two_pi * fd2 * t * 1e-3));
            CHECK(std::fabs(rho) <= 1.0);
        }
    CHECK_THROWS_AS(correlation_coefficient(-1.0, 1.0, 1e-3), std::domain_error);
    CHECK_THROWS_AS(correlation_coefficient(1.0, 1.0, 0.0), std::domain_error);

    const auto p = AgingParams::from_mobility(30.0, 3e9, 1e-3, 1.0);
    CHECK(p.rho == Approx(boost::math::cyl_bessel_j(0, two_pi * max_doppler(30.0, 3e9) * 1e-3)).margin(1e-12));
}

TEST_CASE("age_gain limits")
{
    Rng rng(1);
    const cplx h0(0.3, -1.7);
    CHECK(age_gain(h0, 1.0, rng) == h0);
    CHECK(age_gain(h0, 1.0, cplx(5.0, 5.0)) == h0);
    CHECK(age_gain(h0, 0.0, cplx(0.25, 0.5)) == cplx(0.25, 0.5));
    CHECK_THROWS_AS(age_gain(h0, 1.01, rng), std::domain_error);
    CHECK_THROWS_AS(age_gain(h0, -1.5, cplx{}), std::domain_error);

    ComplexVector v(3);
    v[0] = {1, 0};
    v[1] = {0, 1};
    v[2] = {-1, 1};
    CHECK(age_gain(v, 1.0, rng) == v);
}

TEST_CASE("age_gain correlation and power over 1e5 pairs")
{
    Rng rng(2);
    const int n = 100000;
    for (double rho : {0.0, 0.3, 0.6, 0.9, 1.0})
    {
        cplx corr{};
        double p0 = 0.0, pt = 0.0;
        for (int i = 0; i < n; ++i)
        {
            const cplx h0 = rng.complex_normal();
            const cplx ht = age_gain(h0, rho, rng);
            corr += ht * std::conj(h0);
            p0 += std::norm(h0);
            pt += std::norm(ht);
        }
        CAPTURE(rho);
        CHECK(std::abs(corr / static_cast<double>(n) - rho) <= 0.02);
        CHECK(pt / n == Approx(1.0).epsilon(0.02));
        CHECK(p0 / n == Approx(1.0).epsilon(0.02));
    }
}

TEST_CASE("oscillator_variance")
{
    CHECK(oscillator_variance(3e9, 1e-18, 1e-3) == Approx(1.18435e-10).margin(1e-15));
    CHECK(oscillator_variance(3e9, 0.0, 1e-3) == 0.0);
    CHECK(oscillator_variance(3e9, 1e-18, 2e-3) == Approx(2.0 * oscillator_variance(3e9, 1e-18, 1e-3)));
    CHECK_THROWS_AS(oscillator_variance(-1.0, 1e-18, 1e-3), std::domain_error);
}

TEST_CASE("accumulate_phase_noise without noise stays at zero")
{
    Rng rng(3);
    auto trace = OscillatorTrace::start(rng, 0.0, 0.0);
    const double phi0 = trace.phi_0, psi0 = trace.psi_0;
    CHECK(trace.delta_phi == 0.0);
    CHECK(trace.delta_psi == 0.0);
    for (std::size_t t = 1; t <= 5; ++t)
    {
        trace = accumulate_phase_noise(trace, t, rng);
        CHECK(trace.delta_phi == 0.0);
        CHECK(trace.delta_psi == 0.0);
        CHECK(trace.phi_0 == phi0);
        CHECK(trace.psi_0 == psi0);
    }
    CHECK_THROWS_AS(accumulate_phase_noise(trace, 0, rng), std::domain_error);
    CHECK_THROWS_AS(OscillatorTrace::start(rng, -1.0, 0.0), std::domain_error);
}

TEST_CASE("Wiener increments: variance t sigma^2 and independence")
{
    Rng rng(4);
    const double s2 = 0.01;
    const int n = 100000;
    double v1 = 0.0, v4 = 0.0, m1 = 0.0, psi4 = 0.0, cross = 0.0, d2sq = 0.0;
    for (int i = 0; i < n; ++i)
    {
        auto tr = OscillatorTrace::start(rng, s2, 2.0 * s2);
        tr = accumulate_phase_noise(tr, 1, rng);
        const double d1 = tr.delta_phi;
        tr = accumulate_phase_noise(tr, 2, rng);
        const double d2 = tr.delta_phi - d1;
        tr = accumulate_phase_noise(tr, 4, rng);
        m1 += d1;
        v1 += d1 * d1;
        v4 += tr.delta_phi * tr.delta_phi;
        psi4 += tr.delta_psi * tr.delta_psi;
        cross += d1 * d2;
        d2sq += d2 * d2;
    }
    CHECK(std::fabs(m1 / n) <= 4.0 * std::sqrt(s2 / n));
    CHECK(v1 / n == Approx(s2).epsilon(0.05));
    CHECK(v4 / n == Approx(4.0 * s2).epsilon(0.05));
    CHECK(psi4 / n == Approx(8.0 * s2).epsilon(0.05));
    CHECK(std::fabs(cross / std::sqrt(v1 * d2sq)) <= 0.02);
}

TEST_CASE("Concentration sentinel")
{
    CHECK(Concentration::of(std::numeric_limits<double>::infinity()).is_noiseless());
    CHECK(Concentration::noiseless().value() == std::numeric_limits<double>::infinity());
    CHECK(Concentration::of(2.5).value() == 2.5);
    CHECK_FALSE(Concentration::of(0.0).is_noiseless());
    CHECK_THROWS_AS(Concentration::of(-1.0), std::domain_error);
    CHECK_THROWS_AS(Concentration::of(std::numeric_limits<double>::quiet_NaN()), std::domain_error);
}

TEST_CASE("sample_reflector_noise")
{
    Rng rng(5);
    const auto perfect = sample_reflector_noise(Concentration::noiseless(), 200, rng);
    REQUIRE(perfect.theta_tilde.size() == 200);
    for (double t : perfect.theta_tilde)
        CHECK(t == 0.0);
    for (const auto &p : perfect.phasors().values())
        CHECK(p == cplx(1.0, 0.0));

    CHECK_THROWS_AS(sample_reflector_noise(-0.5, 4, rng), std::domain_error);
    CHECK_THROWS_AS(sample_reflector_noise(1.0, 0, rng), std::domain_error);

    // kappa = 0: KS at alpha = 0.01
    auto uniform = sample_reflector_noise(0.0, 100000, rng).theta_tilde;
    std::sort(uniform.begin(), uniform.end());
    const double n = static_cast<double>(uniform.size());
    double dmax = 0.0;
    for (std::size_t i = 0; i < uniform.size(); ++i)
    {
        REQUIRE((uniform[i] >= -pi && uniform[i] < pi));
        const double cdf = (uniform[i] + pi) / two_pi;
        dmax = std::max({dmax, std::fabs(cdf - i / n), std::fabs((i + 1) / n - cdf)});
    }
    CHECK(dmax < 1.628 / std::sqrt(n));

    // kappa = 1: mean resultant length I1(1)/I0(1)
    const auto noisy = sample_reflector_noise(1.0, 100000, rng);
    double c = 0.0, s = 0.0;
    for (double t : noisy.theta_tilde)
    {
        c += std::cos(t);
        s += std::sin(t);
    }
    CHECK(std::hypot(c, s) / 100000.0 == Approx(0.4464).margin(0.01));
    CHECK(boost::math::cyl_bessel_i(1, 1.0) / boost::math::cyl_bessel_i(0, 1.0) == Approx(0.4464).margin(1e-4));
}
