// Copyright 2026 The Spectral Lab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "spectral_lab/error.hpp"
#include "spectral_lab/fourier.hpp"
#include "spectral_lab/spectrum.hpp"
#include "test_support.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

namespace slab {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

template <class F> double integrate(F f)
{
    return boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, 0.0, kTwoPi, 12, 1e-14);
}

/// (1/2pi) int f(x) e^{-i omega x} dx by adaptive quadrature.
template <class F> Complex quad_coefficient(F f, double omega)
{
    const double re = integrate([&](double x) { return f(x) * std::cos(omega * x); });
    const double im = integrate([&](double x) { return -f(x) * std::sin(omega * x); });
    return Complex{re, im} / kTwoPi;
}

std::vector<double> sampled(std::size_t M, const std::function<double(double)> &f)
{
    std::vector<double> out;
    for (double x : sample_grid(M))
        out.push_back(f(x));
    return out;
}

ReuploaderCircuit circuit(int n, int L, EncodingKind kind, EntanglementSpec ent = {EntanglerKind::Ladder, 0, 0})
{
    return build_circuit(n, L, EncodingScheme::make(kind, n), ent, Observable{0});
}

TEST(Fourier, SampleGrid)
{
    const auto g = sample_grid(4);
    ASSERT_EQ(g.size(), 4u);
    EXPECT_DOUBLE_EQ(g[0], 0.0);
    EXPECT_DOUBLE_EQ(g[1], std::numbers::pi / 2);
    EXPECT_DOUBLE_EQ(g[2], std::numbers::pi);
    EXPECT_DOUBLE_EQ(g[3], 3 * std::numbers::pi / 2);
    const auto big = sample_grid(2048);
    EXPECT_DOUBLE_EQ(big.back(), kTwoPi * 2047.0 / 2048.0);
    for (std::size_t m = 1; m < big.size(); ++m)
        EXPECT_NEAR(big[m] - big[m - 1], kTwoPi / 2048.0, 1e-13);
    EXPECT_THROW(sample_grid(1), Error);
}

TEST(Fourier, SineCoefficients)
{
    const auto snap = dft_coefficients(sampled(2048, [](double x) { return std::sin(5 * x); }), 64);
    EXPECT_NEAR(std::abs(snap.at(5) - Complex(0.0, -0.5)), 0.0, 1e-12);
    EXPECT_NEAR(std::abs(snap.at(-5) - Complex(0.0, 0.5)), 0.0, 1e-12);
    for (int w = -64; w <= 64; ++w)
        if (std::abs(w) != 5)
            EXPECT_NEAR(std::abs(snap.at(w)), 0.0, 1e-12);
}

TEST(Fourier, ConstantSignal)
{
    const auto snap = dft_coefficients(std::vector<double>(16, 1.0), 7);
    EXPECT_NEAR(std::abs(snap.at(0) - 1.0), 0.0, 1e-15);
    for (int w = 1; w <= 7; ++w)
        EXPECT_NEAR(std::abs(snap.at(w)), 0.0, 1e-15);
}

TEST(Fourier, RefusesAliasedTracking)
{
    try {
        dft_coefficients(std::vector<double>(16, 0.0), 8);
        FAIL() << "expected a configuration error";
    } catch (const Error &e) {
        EXPECT_EQ(e.kind(), ErrorKind::Config);
        EXPECT_NE(std::string(e.what()).find("Nyquist"), std::string::npos);
    }
}

TEST(Fourier, CircuitCoefficientsMatchQuadrature)
{
    Rng rng(41);
    const auto c = circuit(2, 2, EncodingKind::Constant);
    for (int trial = 0; trial < 3; ++trial) {
        const auto theta = testing::random_params(rng, c.parameter_count(), 1.0);
        const auto snap = dft_coefficients(evaluate_on_grid(c, theta, sample_grid(64)), 6);
        for (int w = -6; w <= 6; ++w) {
            const Complex ref = quad_coefficient(
                [&](double x) { return testing::dense_circuit_value(c, theta, x); }, w);
            EXPECT_NEAR(std::abs(snap.at(w) - ref), 0.0, 1e-8) << "omega " << w;
        }
    }
}

TEST(Fourier, SnapshotInvariants)
{
    Rng rng(42);
    for (int trial = 0; trial < 30; ++trial) {
        const auto c = testing::random_circuit(rng, 3, 3);
        const auto theta = testing::random_params(rng, c.parameter_count(), 1.0);
        const std::size_t M = exact_grid_size(c);
        const int track = static_cast<int>(M / 2 - 1);
        const auto samples = evaluate_on_grid(c, theta, sample_grid(M));
        const auto snap = dft_coefficients(samples, track);
        double mean_sq = 0.0;
        for (double v : samples)
            mean_sq += v * v;
        mean_sq /= static_cast<double>(M);
        EXPECT_NEAR(snap.power(), mean_sq, 1e-9);
        for (int w = 0; w <= track; ++w) {
            EXPECT_NEAR(std::abs(snap.at(-w) - std::conj(snap.at(w))), 0.0, 1e-10);
            EXPECT_LE(std::abs(snap.at(w)), 1.0 + 1e-12);
            if (w > c.max_frequency())
                EXPECT_NEAR(std::abs(snap.at(w)), 0.0, 1e-12);
        }
    }
}

TEST(Fourier, CoefficientGradientsMatchFiniteDifferences)
{
    Rng rng(43);
    for (int trial = 0; trial < 8; ++trial) {
        const auto c = testing::random_circuit(rng, 3, 2);
        const auto theta = testing::random_params(rng, c.parameter_count(), 1.0);
        const std::size_t M = exact_grid_size(c);
        const int wmax = static_cast<int>(c.max_frequency());
        std::vector<int> omegas;
        for (int w = -wmax; w <= wmax; ++w)
            omegas.push_back(w);
        const auto grads = coefficient_gradients(c, theta, omegas, M);
        const auto adj = coefficient_gradients(c, theta, omegas, M, GradientMethod::Adjoint);
        const auto grid = sample_grid(M);
        const double h = 1e-5;
        for (std::size_t k = 0; k < theta.size(); ++k) {
            auto plus = theta, minus = theta;
            plus[k] += h;
            minus[k] -= h;
            const auto sp = dft_coefficients(evaluate_on_grid(c, plus, grid), wmax);
            const auto sm = dft_coefficients(evaluate_on_grid(c, minus, grid), wmax);
            for (std::size_t i = 0; i < omegas.size(); ++i) {
                const Complex fd = (sp.at(omegas[i]) - sm.at(omegas[i])) / (2 * h);
                EXPECT_NEAR(std::abs(grads.by_omega[i][k] - fd), 0.0, 1e-6);
                EXPECT_NEAR(std::abs(adj.by_omega[i][k] - grads.by_omega[i][k]), 0.0, 1e-12);
            }
        }
    }
}

TEST(Fourier, OutOfLightconeParameterHasZeroGradient)
{
    // Z on qubit 0 commutes with the trailing ladder CNOTs, so the last
    // block's rotations on qubit 2 cannot reach the observable.
    Rng rng(44);
    const auto c = circuit(3, 2, EncodingKind::Constant);
    const auto theta = testing::random_params(rng, c.parameter_count(), 1.0);
    const std::vector<int> omegas{0, 1, 2, 3, 4, 5, 6};
    const auto grads = coefficient_gradients(c, theta, omegas, 16);
    for (int slot = 0; slot < 2; ++slot) {
        const std::size_t k = c.parameter_index(2, 2, slot);
        for (const auto &row : grads.by_omega)
            EXPECT_NEAR(std::abs(row[k]), 0.0, 1e-10);
    }
}

TEST(Fourier, LossDecompositionByHand)
{
    const auto target = dft_coefficients(sampled(64, [](double x) { return std::sin(5 * x); }), 10);
    const auto zero = dft_coefficients(std::vector<double>(64, 0.0), 10);
    const auto same = loss_decomposition(target, target);
    for (double l : same.per_omega)
        EXPECT_EQ(l, 0.0);
    const auto ls = loss_decomposition(zero, target);
    EXPECT_NEAR(ls.per_omega[10 + 5], 0.25, 1e-14);
    EXPECT_NEAR(ls.per_omega[10 - 5], 0.25, 1e-14);
    EXPECT_NEAR(ls.total, 0.5, 1e-14);
    const auto other = dft_coefficients(std::vector<double>(64, 0.0), 9);
    EXPECT_THROW(loss_decomposition(other, target), Error);
}

TEST(Fourier, LossTotalEqualsGridMse)
{
    Rng rng(45);
    for (int trial = 0; trial < 20; ++trial) {
        const auto c = testing::random_circuit(rng, 3, 3);
        const auto theta = testing::random_params(rng, c.parameter_count(), 1.0);
        const std::size_t M = exact_grid_size(c) * 2;
        const auto grid = sample_grid(M);
        const double a = rng.uniform(-0.5, 0.5), b = rng.uniform(-0.5, 0.5);
        std::vector<double> target;
        for (double x : grid)
            target.push_back(a * std::sin(x + b) + b * std::cos(3 * x));
        const auto model = evaluate_on_grid(c, theta, grid);
        double mse = 0.0;
        for (std::size_t m = 0; m < M; ++m)
            mse += (model[m] - target[m]) * (model[m] - target[m]);
        mse /= static_cast<double>(M);
        const int track = static_cast<int>(M / 2 - 1);
        const auto ls = loss_decomposition(dft_coefficients(model, track), dft_coefficients(target, track));
        EXPECT_NEAR(ls.total, mse, 1e-9);
        for (double l : ls.per_omega)
            EXPECT_GE(l, 0.0);
    }
}

TEST(Fourier, SincConventions)
{
    EXPECT_EQ(sinc(0.0), 1.0);
    EXPECT_NEAR(sinc(std::numbers::pi), 0.0, 1e-16);
    EXPECT_LT(std::abs(sinc(100.5 * std::numbers::pi)), 0.0032);
}

TEST(Fourier, NonIntegerReducesToIntegerCase)
{
    Rng rng(46);
    const auto c = circuit(2, 1, EncodingKind::Constant);
    const auto theta = testing::random_params(rng, c.parameter_count(), 1.0);
    const auto grid = sample_grid(32);
    const auto model_s = evaluate_on_grid(c, theta, grid);
    std::vector<double> target_s;
    for (double x : grid)
        target_s.push_back(0.3 * std::cos(2 * x + 0.2) - 0.1);
    const std::vector<double> omegas{-2, -1, 0, 1, 2};
    const auto lm = least_squares_coefficients(model_s, grid, omegas);
    const auto lt = least_squares_coefficients(target_s, grid, omegas);
    const auto general = nonint_loss_assignment(lm, lt);
    const auto integer = loss_decomposition(dft_coefficients(model_s, 2), dft_coefficients(target_s, 2));
    for (std::size_t i = 0; i < omegas.size(); ++i)
        EXPECT_NEAR(general.per_omega[i], integer.per_omega[i], 1e-10);
    EXPECT_NEAR(general.total, integer.total, 1e-10);
}

TEST(Fourier, HalfIntegerLossMatchesQuadrature)
{
    const auto grid = sample_grid(64);
    const auto D = sampled(64, [](double x) { return std::cos(0.5 * x); });
    const std::vector<double> omegas{-0.5, 0.5};
    const auto coeffs = least_squares_coefficients(D, grid, omegas);
    EXPECT_NEAR(std::abs(coeffs.values[0] - 0.5), 0.0, 1e-12);
    EXPECT_NEAR(std::abs(coeffs.values[1] - 0.5), 0.0, 1e-12);
    const SpectralCoefficients zero{omegas, {0.0, 0.0}};
    const auto ls = nonint_loss_assignment(coeffs, zero);
    const double ref = integrate([](double x) { return std::pow(std::cos(0.5 * x), 2); }) / kTwoPi;
    EXPECT_NEAR(ls.total, ref, 1e-6);
}

TEST(Fourier, MixedSpectrumLossMatchesQuadrature)
{
    Rng rng(47);
    const std::vector<double> omegas{-2.5, -1.0, -0.5, 0.0, 0.5, 1.0, 2.5};
    const std::vector<double> amp{0.3, -0.2, 0.15, 0.1};
    const std::vector<double> phase{0.4, 1.1, -0.7, 0.0};
    auto D = [&](double x) {
        return amp[0] * std::cos(2.5 * x + phase[0]) + amp[1] * std::cos(1.0 * x + phase[1]) +
               amp[2] * std::cos(0.5 * x + phase[2]) + amp[3];
    };
    const auto grid = sample_grid(128);
    const auto coeffs = least_squares_coefficients(sampled(128, D), grid, omegas);
    const SpectralCoefficients zero{omegas, std::vector<Complex>(omegas.size())};
    const auto ls = nonint_loss_assignment(coeffs, zero);
    const double ref = integrate([&](double x) { return D(x) * D(x); }) / kTwoPi;
    EXPECT_NEAR(ls.total, ref, 1e-6);
}

TEST(Decomposition, SingleQubitCosine)
{
    const auto c = circuit(1, 1, EncodingKind::Constant, {EntanglerKind::None, 0, 0});
    const std::vector<double> zero(c.parameter_count(), 0.0);
    const auto d = coefficients_by_decomposition(c, zero);
    EXPECT_NEAR(std::abs(d.snapshot.at(1) - 0.5), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(d.snapshot.at(-1) - 0.5), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(d.snapshot.at(0)), 0.0, 1e-15);
}

TEST(Decomposition, MatchesDftOnRandomInstances)
{
    Rng rng(48);
    for (int trial = 0; trial < 20; ++trial) {
        const auto c = testing::random_circuit(rng, 2, 2);
        const auto theta = testing::random_params(rng, c.parameter_count(), 1.0);
        const auto d = coefficients_by_decomposition(c, theta);
        const std::size_t M = exact_grid_size(c);
        const auto snap = dft_coefficients(evaluate_on_grid(c, theta, sample_grid(M)), d.snapshot.omega_max);
        for (int w = -d.snapshot.omega_max; w <= d.snapshot.omega_max; ++w)
            EXPECT_NEAR(std::abs(snap.at(w) - d.snapshot.at(w)), 0.0, 1e-8);
        const auto R = redundancy_profile(c.encoding, c.L);
        for (const auto &[w, count] : d.term_counts)
            EXPECT_EQ(BigCount(count), R.at(w));
        EXPECT_EQ(d.term_counts.size(), R.redundancy.size());
    }
}

TEST(Decomposition, RefusesLargeCircuits)
{
    const auto c = circuit(3, 1, EncodingKind::Constant);
    try {
        coefficients_by_decomposition(c, std::vector<double>(c.parameter_count(), 0.0));
        FAIL() << "expected a size error";
    } catch (const Error &e) {
        EXPECT_EQ(e.kind(), ErrorKind::Size);
    }
}

} // namespace
} // namespace slab
