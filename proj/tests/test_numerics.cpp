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
#include "irsim/numerics.hpp"

#include <boost/math/special_functions/bessel.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

// Covered tests:
// - Bessel J0 / I0: spot values, 50-digit power-series oracle, Boost.Math over the full range
// - Error handling of the special functions
// - Vector / matrix helpers and dimension checks
// - Rng determinism and stream splitting
// - Complex normal, Gaussian and Von Mises samplers (moments, KS, density normalisation)

using namespace irsim;
using Catch::Approx;

namespace
{
    using big = boost::multiprecision::cpp_bin_float_50;

    // sum_k (-q)^k / (k!)^2 and sum_k q^k / (k!)^2 with q = x^2/4, in 50-digit arithmetic
    double j0_oracle(double x)
    {
        const big q = big(x) * big(x) / 4;
        big term = 1, sum = 1;
        for (int k = 1; k < 400; ++k)
        {
            term *= -q / (big(k) * big(k));
            sum += term;
        }
        return static_cast<double>(sum);
    }

    double i0_oracle(double x)
    {
        const big q = big(x) * big(x) / 4;
        big term = 1, sum = 1;
        for (int k = 1; k < 400; ++k)
        {
            term *= q / (big(k) * big(k));
            sum += term;
        }
        return static_cast<double>(sum);
    }

    double mean_resultant_length(const std::vector<double> &angles)
    {
        double c = 0.0, s = 0.0;
        for (double a : angles)
        {
            c += std::cos(a);
            s += std::sin(a);
        }
        return std::hypot(c, s) / static_cast<double>(angles.size());
    }
}

TEST_CASE("bessel_j0 spot values")
{
    CHECK(bessel_j0(0.0) == 1.0);
    CHECK(std::fabs(bessel_j0(2.404825557695773)) <= 1e-9);
    CHECK(bessel_j0(1.0) == Approx(0.7651976866).margin(1e-9));
    CHECK(bessel_j0(-1.0) == bessel_j0(1.0));
}

TEST_CASE("bessel_j0 matches the extended-precision series on a 1000-point grid")
{
    double worst = 0.0;
    for (int i = 0; i < 1000; ++i)
    {
        const double x = -40.0 + 80.0 * i / 999.0;
        worst = std::max(worst, std::fabs(bessel_j0(x) - j0_oracle(x)));
    }
    CHECK(worst <= 1e-9);
}

TEST_CASE("bessel_j0 matches Boost.Math up to |x| = 1e4")
{
    double worst = 0.0;
    for (int i = 0; i < 1000; ++i)
    {
        const double x = 1e4 * std::pow(static_cast<double>(i) / 999.0, 2.0);
        worst = std::max(worst, std::fabs(bessel_j0(x) - boost::math::cyl_bessel_j(0, x)));
        worst = std::max(worst, std::fabs(bessel_j0(-x) - boost::math::cyl_bessel_j(0, x)));
    }
    CHECK(worst <= 1e-9);
    // around the series / asymptotic switch
    for (double x = 11.0; x < 13.0; x += 0.01)
        CHECK(std::fabs(bessel_j0(x) - boost::math::cyl_bessel_j(0, x)) <= 1e-9);
}

TEST_CASE("bessel_j0 rejects non-finite input")
{
    CHECK_THROWS_AS(bessel_j0(std::numeric_limits<double>::quiet_NaN()), std::domain_error);
    CHECK_THROWS_AS(bessel_j0(std::numeric_limits<double>::infinity()), std::domain_error);
}

TEST_CASE("bessel_i0 spot values")
{
    CHECK(bessel_i0(0.0) == 1.0);
    CHECK(bessel_i0(1.0) == Approx(1.2660658778).margin(1e-9));
    CHECK(bessel_i0(5.0) == Approx(27.2398718236).epsilon(1e-9));
}

TEST_CASE("bessel_i0 relative error on a 1000-point grid")
{
    double worst_series = 0.0, worst_boost = 0.0;
    for (int i = 0; i < 1000; ++i)
    {
        const double x = -700.0 + 1400.0 * i / 999.0;
        const double got = bessel_i0(x);
        const double ref = boost::math::cyl_bessel_i(0, std::fabs(x));
        worst_boost = std::max(worst_boost, std::fabs(got - ref) / ref);
        if (std::fabs(x) <= 100.0)
        {
            const double oracle = i0_oracle(x);
            worst_series = std::max(worst_series, std::fabs(got - oracle) / oracle);
        }
    }
    for (int i = 0; i < 1000; ++i)
    {
        const double x = 100.0 * i / 999.0;
        const double oracle = i0_oracle(x);
        worst_series = std::max(worst_series, std::fabs(bessel_i0(x) - oracle) / oracle);
    }
    CHECK(worst_series <= 1e-9);
    CHECK(worst_boost <= 1e-9);
}

TEST_CASE("bessel_i0 range and domain errors")
{
    CHECK_THROWS_AS(bessel_i0(700.5), std::range_error);
    CHECK_THROWS_AS(bessel_i0(-800.0), std::range_error);
    CHECK_THROWS_AS(bessel_i0(std::numeric_limits<double>::quiet_NaN()), std::domain_error);
    CHECK(std::isfinite(bessel_i0(700.0)));
}

TEST_CASE("ComplexVector and ComplexMatrix helpers")
{
    ComplexVector a(3), b(3);
    a[0] = {1, 2};
    a[1] = {0, -1};
    a[2] = {3, 0};
    b[0] = {2, 0};
    b[1] = {1, 1};
    b[2] = {0, 1};
    // transpose product, no conjugation
    CHECK(dot_transpose(a, b) == cplx(1, 2) * cplx(2, 0) + cplx(0, -1) * cplx(1, 1) + cplx(3, 0) * cplx(0, 1));
    CHECK(squared_norm(a) == Approx(15.0));
    CHECK(norm(a) == Approx(std::sqrt(15.0)));
    CHECK(conjugate(a)[0] == cplx(1, -2));
    CHECK((a + b)[1] == cplx(1, 0));
    CHECK(scaled(a, cplx(0, 1))[2] == cplx(0, 3));

    ComplexMatrix m(2, 3);
    for (std::size_t r = 0; r < 2; ++r)
        for (std::size_t c = 0; c < 3; ++c)
            m(r, c) = cplx(static_cast<double>(r + 1), static_cast<double>(c));
    const auto mx = multiply(m, b);
    REQUIRE(mx.size() == 2);
    CHECK(mx[0] == dot_transpose(m.row(0), b.values()));

    ComplexVector x(2), d(2);
    x[0] = {1, 1};
    x[1] = {2, 0};
    d[0] = {0, 1};
    d[1] = {1, 0};
    const auto y = diag_weighted_row_sum(x, d, m);
    REQUIRE(y.size() == 3);
    for (std::size_t c = 0; c < 3; ++c)
        CHECK(std::abs(y[c] - (x[0] * d[0] * m(0, c) + x[1] * d[1] * m(1, c))) < 1e-14);

    const auto o = outer(x, b);
    CHECK(o.rows() == 2);
    CHECK(o.cols() == 3);
    CHECK(o(1, 2) == x[1] * b[2]);
}

TEST_CASE("dimension mismatches are rejected")
{
    ComplexVector a(3), b(2);
    ComplexMatrix m(2, 2);
    CHECK_THROWS_AS(dot_transpose(a, b), std::invalid_argument);
    CHECK_THROWS_AS(a + b, std::invalid_argument);
    CHECK_THROWS_AS(multiply(m, a), std::invalid_argument);
}

TEST_CASE("phase wrapping")
{
    CHECK(wrap_two_pi(-0.5) == Approx(two_pi - 0.5));
    CHECK(wrap_two_pi(two_pi) == Approx(0.0).margin(1e-15));
    CHECK(wrap_pi(pi) == Approx(-pi));
    CHECK(wrap_pi(3 * pi + 0.25) == Approx(-pi + 0.25));
    for (double a = -50.0; a < 50.0; a += 0.37)
    {
        const double w = wrap_two_pi(a);
        CHECK((w >= 0.0 && w < two_pi));
        const double v = wrap_pi(a);
        CHECK((v >= -pi && v < pi));
    }
}

TEST_CASE("Rng streams are reproducible and splits differ")
{
    Rng a(42), b(42), c(43);
    bool differs = false;
    for (int i = 0; i < 1000; ++i)
    {
        const auto x = a.next_u64();
        CHECK(x == b.next_u64());
        differs = differs || x != c.next_u64();
    }
    CHECK(differs);

    const Rng root(7);
    Rng s1 = root.split(1), s1b = root.split(1), s2 = root.split(2);
    CHECK(s1.next_u64() == s1b.next_u64());
    CHECK(s1.next_u64() != s2.next_u64());
    CHECK(derive_seed(1, 2) != derive_seed(2, 1));

    for (int i = 0; i < 10000; ++i)
    {
        const double u = a.uniform();
        CHECK((u >= 0.0 && u < 1.0));
    }
}

TEST_CASE("sample_complex_normal determinism and moments")
{
    Rng r1(11), r2(11);
    const auto v1 = sample_complex_normal(r1, 4);
    const auto v2 = sample_complex_normal(r2, 4);
    CHECK(v1 == v2);

    Rng rng(12);
    const std::size_t n = 100000;
    const auto v = sample_complex_normal(rng, n);
    double re = 0.0, im = 0.0, pow = 0.0, re2 = 0.0;
    for (const auto &z : v.values())
    {
        re += z.real();
        im += z.imag();
        pow += std::norm(z);
        re2 += z.real() * z.real();
    }
    CHECK(std::fabs(re / n) <= 0.02);
    CHECK(std::fabs(im / n) <= 0.02);
    CHECK(pow / n == Approx(1.0).margin(0.02));
    CHECK(re2 / n == Approx(0.5).margin(0.01));
    CHECK_THROWS_AS(sample_complex_normal(rng, 0), std::domain_error);
}

TEST_CASE("sample_gaussian moments")
{
    Rng rng(13);
    CHECK(sample_gaussian(rng, 0.0) == 0.0);
    CHECK_THROWS_AS(sample_gaussian(rng, -1.0), std::domain_error);

    const int n = 100000;
    double s = 0.0, s2 = 0.0;
    for (int i = 0; i < n; ++i)
    {
        const double x = sample_gaussian(rng, 1.0);
        s += x;
        s2 += x * x;
    }
    const double mean = s / n;
    CHECK(s2 / n - mean * mean == Approx(1.0).margin(0.02));

    double t = 0.0;
    for (int i = 0; i < n; ++i)
        t += sample_gaussian(rng, 0.1);
    CHECK(std::fabs(t / n) <= 0.002);
}

TEST_CASE("sample_von_mises with kappa = 0 passes a KS uniformity test")
{
    Rng rng(14);
    const std::size_t n = 100000;
    std::vector<double> x(n);
    for (auto &v : x)
    {
        v = sample_von_mises(rng, 0.0);
        REQUIRE((v >= -pi && v < pi));
    }
    std::sort(x.begin(), x.end());
    double dmax = 0.0;
    for (std::size_t i = 0; i < n; ++i)
    {
        const double cdf = (x[i] + pi) / two_pi;
        dmax = std::max({dmax, std::fabs(cdf - static_cast<double>(i) / n),
                         std::fabs(static_cast<double>(i + 1) / n - cdf)});
    }
    CHECK(dmax < 1.628 / std::sqrt(static_cast<double>(n))); // alpha = 0.01
}

TEST_CASE("sample_von_mises mean resultant length and circular mean")
{
    Rng rng(15);
    for (double kappa : {0.5, 1.0, 2.0, 5.0})
    {
        std::vector<double> x(100000);
        for (auto &v : x)
            v = sample_von_mises(rng, kappa);
        const double expected = boost::math::cyl_bessel_i(1, kappa) / boost::math::cyl_bessel_i(0, kappa);
        CAPTURE(kappa);
        CHECK(mean_resultant_length(x) == Approx(expected).margin(0.01));
    }

    std::vector<double> x(100000);
    double c = 0.0, s = 0.0;
    for (auto &v : x)
    {
        v = sample_von_mises(rng, 100.0);
        c += std::cos(v);
        s += std::sin(v);
    }
    CHECK(std::fabs(std::atan2(s, c)) <= 0.01);
    CHECK_THROWS_AS(sample_von_mises(rng, -0.1), std::domain_error);
}

TEST_CASE("von_mises_pdf integrates to one")
{
    for (double kappa : {0.0, 0.5, 1.0, 5.0, 50.0})
    {
        // periodic integrand: the rectangle rule converges geometrically
        const int m = 20000;
        double sum = 0.0;
        for (int i = 0; i < m; ++i)
            sum += von_mises_pdf(-pi + two_pi * i / m, kappa);
        CAPTURE(kappa);
        CHECK(std::fabs(sum * two_pi / m - 1.0) <= 1e-6);
    }
}

TEST_CASE("samplers produce identical streams under a fixed seed")
{
    auto draw = [](std::uint64_t seed)
    {
        Rng rng(seed);
        std::vector<double> out;
        for (int i = 0; i < 200; ++i)
        {
            out.push_back(sample_gaussian(rng, 0.3));
            out.push_back(sample_von_mises(rng, 2.0));
            out.push_back(rng.standard_normal());
            out.push_back(rng.uniform());
        }
        return out;
    };
    CHECK(draw(99) == draw(99));
    CHECK(draw(99) != draw(100));
}
