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

#ifndef IRSIM_NUMERICS_HPP
#define IRSIM_NUMERICS_HPP

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <numbers>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace irsim
{
    using cplx = std::complex<double>;

    inline constexpr double pi = std::numbers::pi;
    inline constexpr double two_pi = 2.0 * std::numbers::pi;

    // ----- Dense complex containers -----------------------------------------

    /// Fixed-length complex column vector. The length is set at construction.
    class ComplexVector
    {
    public:
        ComplexVector() = default;
        explicit ComplexVector(std::size_t n, cplx value = {}) : data_(n, value) {}
        ComplexVector(std::initializer_list<cplx> values) : data_(values) {}
        explicit ComplexVector(std::vector<cplx> values) : data_(std::move(values)) {}

        std::size_t size() const noexcept { return data_.size(); }
        bool empty() const noexcept { return data_.empty(); }

        cplx &operator[](std::size_t i) { return data_[i]; }
        const cplx &operator[](std::size_t i) const { return data_[i]; }

        std::span<cplx> values() noexcept { return data_; }
        std::span<const cplx> values() const noexcept { return data_; }

        auto begin() noexcept { return data_.begin(); }
        auto end() noexcept { return data_.end(); }
        auto begin() const noexcept { return data_.begin(); }
        auto end() const noexcept { return data_.end(); }

        bool operator==(const ComplexVector &) const = default;

    private:
        std::vector<cplx> data_;
    };

    /// Row-major complex matrix with fixed dimensions.
    class ComplexMatrix
    {
    public:
        ComplexMatrix() = default;
        ComplexMatrix(std::size_t rows, std::size_t cols, cplx value = {})
            : rows_(rows), cols_(cols), data_(rows * cols, value) {}

        std::size_t rows() const noexcept { return rows_; }
        std::size_t cols() const noexcept { return cols_; }

        cplx &operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
        const cplx &operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

        std::span<cplx> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
        std::span<const cplx> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }

        std::span<const cplx> values() const noexcept { return data_; }
        std::span<cplx> values() noexcept { return data_; }

        bool operator==(const ComplexMatrix &) const = default;

    private:
        std::size_t rows_ = 0;
        std::size_t cols_ = 0;
        std::vector<cplx> data_;
    };

    namespace detail
    {
        inline void require_same_size(std::size_t a, std::size_t b, const char *op)
        {
            if (a != b)
                throw std::invalid_argument(std::string(op) + ": dimension mismatch (" +
                                            std::to_string(a) + " vs " + std::to_string(b) + ")");
        }
    }

    /// Bilinear product a^T b (no conjugation).
    inline cplx dot_transpose(std::span<const cplx> a, std::span<const cplx> b)
    {
        detail::require_same_size(a.size(), b.size(), "dot_transpose");
        cplx acc{};
        for (std::size_t i = 0; i < a.size(); ++i)
            acc += a[i] * b[i];
        return acc;
    }

    inline cplx dot_transpose(const ComplexVector &a, const ComplexVector &b)
    {
        return dot_transpose(a.values(), b.values());
    }

    inline double squared_norm(std::span<const cplx> a)
    {
        double acc = 0.0;
        for (const auto &v : a)
            acc += std::norm(v);
        return acc;
    }

    inline double squared_norm(const ComplexVector &a) { return squared_norm(a.values()); }
    inline double norm(const ComplexVector &a) { return std::sqrt(squared_norm(a)); }

    /// Conjugate transpose of a vector, i.e. element-wise conjugate.
    inline ComplexVector conjugate(const ComplexVector &a)
    {
        ComplexVector out(a.size());
        for (std::size_t i = 0; i < a.size(); ++i)
            out[i] = std::conj(a[i]);
        return out;
    }

    inline ComplexVector scaled(const ComplexVector &a, cplx s)
    {
        ComplexVector out(a.size());
        for (std::size_t i = 0; i < a.size(); ++i)
            out[i] = a[i] * s;
        return out;
    }

    inline ComplexMatrix scaled(const ComplexMatrix &m, cplx s)
    {
        ComplexMatrix out(m.rows(), m.cols());
        auto src = m.values();
        auto dst = out.values();
        for (std::size_t i = 0; i < src.size(); ++i)
            dst[i] = src[i] * s;
        return out;
    }

    inline ComplexVector operator+(const ComplexVector &a, const ComplexVector &b)
    {
        detail::require_same_size(a.size(), b.size(), "vector add");
        ComplexVector out(a.size());
        for (std::size_t i = 0; i < a.size(); ++i)
            out[i] = a[i] + b[i];
        return out;
    }

    /// m * x
    inline ComplexVector multiply(const ComplexMatrix &m, const ComplexVector &x)
    {
        detail::require_same_size(m.cols(), x.size(), "matrix-vector product");
        ComplexVector out(m.rows());
        for (std::size_t r = 0; r < m.rows(); ++r)
            out[r] = dot_transpose(m.row(r), x.values());
        return out;
    }

    /// x^T diag(d) m, returned as a column vector of length m.cols().
    inline ComplexVector diag_weighted_row_sum(const ComplexVector &x, const ComplexVector &d,
                                               const ComplexMatrix &m)
    {
        detail::require_same_size(x.size(), m.rows(), "diag_weighted_row_sum");
        detail::require_same_size(d.size(), m.rows(), "diag_weighted_row_sum");
        ComplexVector out(m.cols());
        for (std::size_t r = 0; r < m.rows(); ++r)
        {
            const cplx coef = x[r] * d[r];
            auto row = m.row(r);
            for (std::size_t c = 0; c < m.cols(); ++c)
                out[c] += coef * row[c];
        }
        return out;
    }

    /// a b^T
    inline ComplexMatrix outer(const ComplexVector &a, const ComplexVector &b)
    {
        ComplexMatrix out(a.size(), b.size());
        for (std::size_t r = 0; r < a.size(); ++r)
            for (std::size_t c = 0; c < b.size(); ++c)
                out(r, c) = a[r] * b[c];
        return out;
    }

    /// Unit phasor e^{j angle}.
    inline cplx phasor(double angle) { return std::polar(1.0, angle); }

    /// Maps an angle into [0, 2 pi).
    inline double wrap_two_pi(double angle)
    {
        double a = std::fmod(angle, two_pi);
        if (a < 0.0)
            a += two_pi;
        if (a >= two_pi)
            a = 0.0;
        return a;
    }

    /// Maps an angle into [-pi, pi).
    inline double wrap_pi(double angle)
    {
        double a = wrap_two_pi(angle + pi) - pi;
        return a >= pi ? -pi : a;
    }

    // ----- Special functions -------------------------------------------------

    namespace detail
    {
        // Power series for J0 is accurate to ~1e-13 up to |x| = 12 when summed in
        // extended precision; beyond that the Hankel expansion converges fast enough.
        inline constexpr double j0_series_limit = 12.0;
        inline constexpr double i0_series_limit = 40.0;

        inline double j0_series(double x)
        {
            const long double q = -(static_cast<long double>(x) * x) / 4.0L;
            long double term = 1.0L, sum = 1.0L;
            for (int k = 1; k < 200; ++k)
            {
                term *= q / (static_cast<long double>(k) * k);
                sum += term;
                if (std::fabs(term) < 1e-22L * std::fabs(sum) + 1e-30L)
                    break;
            }
            return static_cast<double>(sum);
        }

        // Hankel asymptotic expansion: J0(x) ~ sqrt(2/(pi x)) (P cos w - Q sin w), w = x - pi/4.
        inline double j0_asymptotic(double x)
        {
            double p = 0.0, q = 0.0;
            double a = 1.0; // a_k(0) / x^k
            double last = 1.0;
            for (int k = 0; k < 120; ++k)
            {
                if (k > 0)
                {
                    const double m = 2.0 * k - 1.0;
                    const double next = a * (-(m * m)) / (8.0 * k * x);
                    if (std::fabs(next) > std::fabs(last))
                        break; // series started diverging
                    a = next;
                    last = next;
                }
                const double signed_term = ((k / 2) % 2 == 0) ? a : -a;
                if (k % 2 == 0)
                    p += signed_term;
                else
                    q += signed_term;
                if (std::fabs(a) < 1e-17)
                    break;
            }
            const double w = x - 0.25 * pi;
            return std::sqrt(2.0 / (pi * x)) * (p * std::cos(w) - q * std::sin(w));
        }

        inline double i0_series(double x)
        {
            const long double q = (static_cast<long double>(x) * x) / 4.0L;
            long double term = 1.0L, sum = 1.0L;
            for (int k = 1; k < 2000; ++k)
            {
                term *= q / (static_cast<long double>(k) * k);
                sum += term;
                if (term < 1e-21L * sum)
                    break;
            }
            return static_cast<double>(sum);
        }

        // e^{-x} I0(x) ~ 1 / sqrt(2 pi x) * sum_k [(2k-1)!!]^2 / (k! 8^k x^k)
        inline double i0_scaled_asymptotic(double x)
        {
            double term = 1.0, sum = 1.0;
            for (int k = 1; k < 200; ++k)
            {
                const double m = 2.0 * k - 1.0;
                const double next = term * (m * m) / (8.0 * k * x);
                if (next > term)
                    break;
                term = next;
                sum += term;
                if (term < 1e-17 * sum)
                    break;
            }
            return sum / std::sqrt(two_pi * x);
        }

        inline double i0_asymptotic(double x)
        {
            // Split exp to stay finite near the overflow guard.
            const double half = std::exp(0.5 * x);
            return half * (half * i0_scaled_asymptotic(x));
        }
    }

    /// Bessel function of the first kind, order zero.
    inline double bessel_j0(double x)
    {
        if (!std::isfinite(x))
            throw std::domain_error("bessel_j0: argument must be finite");
        const double ax = std::fabs(x);
        return ax <= detail::j0_series_limit ? detail::j0_series(ax) : detail::j0_asymptotic(ax);
    }

    inline constexpr double bessel_i0_max_argument = 700.0;

    /// Modified Bessel function of the first kind, order zero. |x| <= 700.
    inline double bessel_i0(double x)
    {
        if (!std::isfinite(x))
            throw std::domain_error("bessel_i0: argument must be finite");
        const double ax = std::fabs(x);
        if (ax > bessel_i0_max_argument)
            throw std::range_error("bessel_i0: |x| > 700 overflows double precision");
        return ax <= detail::i0_series_limit ? detail::i0_series(ax) : detail::i0_asymptotic(ax);
    }

    // ----- Random numbers ----------------------------------------------------

    /// SplitMix64 finaliser. Used to derive independent sub-seeds from a root seed.
    inline constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept
    {
        x += 0x9E3779B97F4A7C15ULL;
        x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
        x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
        return x ^ (x >> 31);
    }

    /// Derives a child seed for stream `key` of `parent`. Order-independent.
    inline constexpr std::uint64_t derive_seed(std::uint64_t parent, std::uint64_t key) noexcept
    {
        return splitmix64(splitmix64(parent) ^ (key * 0xD1B54A32D192ED03ULL + 0x8CB92BA72F3D8DD7ULL));
    }

    /**
     * Deterministic random source.
     *
     * Wraps std::mt19937_64, whose output sequence is fixed by the C++ standard, and
     * builds every variate from raw 64-bit draws (no std::*_distribution, whose output
     * differs between standard libraries). Same seed, same byte stream, on any platform.
     */
    class Rng
    {
    public:
        explicit Rng(std::uint64_t seed) : seed_(seed), engine_(splitmix64(seed)) {}

        std::uint64_t seed() const noexcept { return seed_; }

        std::uint64_t next_u64() { return engine_(); }

        /// Uniform on [0, 1) with 53 random bits.
        double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

        /// Standard normal via Box-Muller (one output per call).
        double standard_normal()
        {
            const double u1 = 1.0 - uniform(); // (0, 1]
            const double u2 = uniform();
            return std::sqrt(-2.0 * std::log(u1)) * std::cos(two_pi * u2);
        }

        /// CN(0, 1): real and imaginary parts each N(0, 1/2).
        cplx complex_normal()
        {
            const double u1 = 1.0 - uniform();
            const double u2 = uniform();
            const double r = std::sqrt(-std::log(u1)); // sqrt(-2 ln u) / sqrt(2)
            return {r * std::cos(two_pi * u2), r * std::sin(two_pi * u2)};
        }

        /// Child generator for stream `key`, independent of how much of this one was consumed.
        Rng split(std::uint64_t key) const { return Rng(derive_seed(seed_, key)); }

    private:
        std::uint64_t seed_;
        std::mt19937_64 engine_;
    };

    /// n i.i.d. CN(0, 1) entries.
    inline ComplexVector sample_complex_normal(Rng &rng, std::size_t n)
    {
        if (n == 0)
            throw std::domain_error("sample_complex_normal: n must be >= 1");
        ComplexVector out(n);
        for (auto &v : out)
            v = rng.complex_normal();
        return out;
    }

    /// Zero-mean normal with standard deviation sigma. sigma == 0 returns exactly 0.
    inline double sample_gaussian(Rng &rng, double sigma)
    {
        if (!(sigma >= 0.0) || !std::isfinite(sigma))
            throw std::domain_error("sample_gaussian: sigma must be finite and >= 0");
        if (sigma == 0.0)
            return 0.0;
        return sigma * rng.standard_normal();
    }

    /**
     * Zero-mean Von Mises variate on [-pi, pi) with concentration kappa.
     *
     * Best & Fisher (1979) rejection sampler with the wrapped-Cauchy envelope. kappa = 0
     * is the uniform distribution and is drawn directly.
     */
    inline double sample_von_mises(Rng &rng, double kappa)
    {
        if (!(kappa >= 0.0) || !std::isfinite(kappa))
            throw std::domain_error("sample_von_mises: kappa must be finite and >= 0");
        if (kappa == 0.0)
            return -pi + two_pi * rng.uniform();

        const double tau = 1.0 + std::sqrt(1.0 + 4.0 * kappa * kappa);
        const double rho = (tau - std::sqrt(2.0 * tau)) / (2.0 * kappa);
        const double r = (1.0 + rho * rho) / (2.0 * rho);

        double f = 0.0;
        for (;;)
        {
            const double u1 = rng.uniform();
            const double u2 = 1.0 - rng.uniform(); // (0, 1], keeps log finite
            const double z = std::cos(pi * u1);
            f = (1.0 + r * z) / (r + z);
            const double c = kappa * (r - f);
            if (c * (2.0 - c) - u2 > 0.0)
                break;
            if (std::log(c / u2) + 1.0 - c >= 0.0)
                break;
        }
        f = std::clamp(f, -1.0, 1.0);
        const double angle = std::acos(f);
        const double signed_angle = rng.uniform() < 0.5 ? -angle : angle;
        return signed_angle >= pi ? -pi : signed_angle;
    }

    /// Von Mises density e^{kappa cos x} / (2 pi I0(kappa)).
    inline double von_mises_pdf(double x, double kappa)
    {
        if (!(kappa >= 0.0))
            throw std::domain_error("von_mises_pdf: kappa must be >= 0");
        // Normalise by e^{kappa} to keep large kappa finite.
        const double scaled_i0 = kappa > detail::i0_series_limit ? detail::i0_scaled_asymptotic(kappa)
                                                                 : detail::i0_series(kappa) * std::exp(-kappa);
        return std::exp(kappa * (std::cos(x) - 1.0)) / (two_pi * scaled_i0);
    }
}

#endif
