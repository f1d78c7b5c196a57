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
#include "spectral_lab/stats.hpp"
#include "spectral_lab/theory.hpp"
#include "test_support.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

namespace slab {
namespace {

ReuploaderCircuit circuit(int n, int L, EncodingKind kind, EntanglementSpec ent = {EntanglerKind::Ladder, 0, 0})
{
    return build_circuit(n, L, EncodingScheme::make(kind, n), ent, Observable{0});
}

/// Band-limited random target sampled on M points, tracked to M/2 - 1.
FourierSnapshot random_target(Rng &rng, std::size_t M, int max_freq)
{
    std::vector<double> amp, phase;
    for (int w = 1; w <= max_freq; ++w) {
        amp.push_back(rng.uniform(0.0, 1.0) / max_freq);
        phase.push_back(rng.uniform(0.0, 2 * std::numbers::pi));
    }
    std::vector<double> s;
    for (double x : sample_grid(M)) {
        double v = 0.0;
        for (int w = 1; w <= max_freq; ++w)
            v += amp[w - 1] * std::sin(w * x + phase[w - 1]);
        s.push_back(v);
    }
    return dft_coefficients(s, static_cast<int>(M / 2 - 1));
}

TEST(Theory, TraceNorm)
{
    EXPECT_EQ(trace_norm({0}, 1), 2.0);
    EXPECT_EQ(trace_norm({1}, 5), 32.0);
    EXPECT_EQ(trace_norm({0}, 3), 8.0);
    EXPECT_THROW(trace_norm({3}, 3), Error);
}

TEST(Theory, Thm1ModelEqualsTargetGivesZeroRows)
{
    Rng rng(51);
    const auto c = circuit(2, 2, EncodingKind::Constant);
    const auto theta = testing::random_params(rng, c.parameter_count(), 0.5);
    const std::size_t M = 16;
    const auto target = dft_coefficients(evaluate_on_grid(c, theta, sample_grid(M)), 7);
    const auto report = thm1_report(c, theta, target);
    EXPECT_EQ(report.violations, 0u);
    EXPECT_EQ(report.rows.size(), c.parameter_count() * 5);
    for (const auto &row : report.rows) {
        EXPECT_NEAR(row.lhs, 0.0, 1e-10);
        EXPECT_NEAR(row.rhs, 0.0, 1e-10);
        EXPECT_NEAR(row.slack, 0.0, 1e-10);
    }
}

TEST(Theory, Thm1HoldsOnRandomInstances)
{
    Rng rng(52);
    for (int trial = 0; trial < 100; ++trial) {
        const auto c = circuit(2, 2, EncodingKind::Constant,
                               testing::entangler_from_index(trial, rng.next_u64()));
        const auto theta = testing::random_params(rng, c.parameter_count(), 0.5);
        const auto report = thm1_report(c, theta, random_target(rng, 16, 4));
        EXPECT_EQ(report.violations, 0u) << "trial " << trial << " min slack " << report.min_slack;
        EXPECT_GE(report.min_slack, -1e-9);
    }
}

TEST(Theory, Thm1LhsIsLossDerivative)
{
    Rng rng(53);
    const auto c = circuit(2, 1, EncodingKind::Ternary);
    const auto theta = testing::random_params(rng, c.parameter_count(), 0.7);
    const auto target = random_target(rng, 16, 4);
    const auto report = thm1_report(c, theta, target);
    const auto grid = sample_grid(16);
    const double h = 1e-5;
    for (const auto &row : report.rows) {
        auto plus = theta, minus = theta;
        plus[row.parameter] += h;
        minus[row.parameter] -= h;
        const int w = static_cast<int>(row.omega);
        const auto lp = std::norm(dft_coefficients(evaluate_on_grid(c, plus, grid), 7).at(w) - target.at(w));
        const auto lm = std::norm(dft_coefficients(evaluate_on_grid(c, minus, grid), 7).at(w) - target.at(w));
        EXPECT_NEAR(row.lhs, std::abs((lp - lm) / (2 * h)), 1e-7);
    }
}

TEST(Theory, Thm1RejectsNonIntegerBetas)
{
    const std::vector<double> betas{1.0, 1.5};
    const auto c = build_circuit(2, 1, EncodingScheme::make(EncodingKind::Custom, 2, betas),
                                 EntanglementSpec{EntanglerKind::Ladder, 0, 0}, Observable{0});
    try {
        thm1_report(c, std::vector<double>(c.parameter_count(), 0.0), dft_coefficients(std::vector<double>(16), 7));
        FAIL() << "expected an unsupported lattice error";
    } catch (const Error &e) {
        EXPECT_EQ(e.kind(), ErrorKind::UnsupportedLattice);
        EXPECT_NE(std::string(e.what()).find("thm2_report"), std::string::npos);
    }
}

SpectralBoundInputs integer_inputs(Rng &rng, int wmax, std::size_t P)
{
    SpectralBoundInputs in;
    for (int w = -wmax; w <= wmax; ++w) {
        in.omegas.push_back(w);
        in.model.push_back({rng.normal(), rng.normal()});
        in.target.push_back({rng.normal(), rng.normal()});
        in.redundancy.push_back(1.0 + static_cast<double>(rng.index(20)));
        std::vector<Complex> g(P);
        for (auto &v : g)
            v = {rng.normal(), rng.normal()};
        in.gradients.push_back(g);
    }
    in.trace_norm = 4.0;
    return in;
}

TEST(Theory, Thm2RhsCollapsesToThm1OnIntegerSpectra)
{
    Rng rng(54);
    for (int trial = 0; trial < 20; ++trial) {
        const auto in = integer_inputs(rng, 6, 3);
        for (std::size_t i = 0; i < in.omegas.size(); ++i) {
            const double thm1 = 4.0 * in.redundancy[i] * in.trace_norm * std::abs(in.model[i] - in.target[i]);
            EXPECT_NEAR(thm2_rhs(in, i), thm1, 1e-9 * std::max(1.0, thm1));
        }
    }
}

TEST(Theory, Thm2LhsCollapsesToThm1OnIntegerSpectra)
{
    Rng rng(55);
    const auto in = integer_inputs(rng, 4, 5);
    const auto report = thm2_from_coefficients(in);
    for (const auto &row : report.rows) {
        const std::size_t i = static_cast<std::size_t>(row.omega + 4);
        const Complex cd = in.model[i] - in.target[i];
        EXPECT_NEAR(row.lhs, std::abs(2.0 * (std::conj(cd) * in.gradients[i][row.parameter]).real()), 1e-12);
    }
}

TEST(Theory, Thm2FarSeparatedRhsApproachesOrthogonalCase)
{
    SpectralBoundInputs in;
    in.omegas = {0.0, 100.5};
    in.model = {0.3, 0.2};
    in.target = {0.0, 0.0};
    in.redundancy = {5.0, 3.0};
    in.gradients = {{0.0}, {0.0}};
    in.trace_norm = 2.0;
    for (std::size_t i = 0; i < 2; ++i) {
        const double orth = 4.0 * in.redundancy[i] * in.trace_norm * std::abs(in.model[i]);
        EXPECT_LT(std::abs(thm2_rhs(in, i) - orth), 0.01 * orth);
    }
}

TEST(Theory, Thm2HoldsOnHalfIntegerCircuit)
{
    Rng rng(56);
    const std::vector<double> betas{1.0, 1.5};
    const auto enc = EncodingScheme::make(EncodingKind::Custom, 2, betas);
    for (int trial = 0; trial < 5; ++trial) {
        const auto c = build_circuit(2, 2, enc, EntanglementSpec{EntanglerKind::Ladder, 0, 0}, Observable{0});
        const auto theta = testing::random_params(rng, c.parameter_count(), 0.5);
        const auto spectrum = redundancy_profile(enc, 2);
        SpectralCoefficients target{spectrum.frequencies(), {}};
        for (double w : target.omegas)
            target.values.push_back(w == 0.0 ? Complex{0.1, 0.0} : Complex{rng.normal(0.0, 0.05), 0.0});
        const auto report = thm2_report(c, theta, target, spectrum, 64);
        EXPECT_EQ(report.violations, 0u) << report.min_slack;
        EXPECT_FALSE(report.rows.empty());
    }
}

TEST(Moments, ClosedFormValues)
{
    EXPECT_NEAR(gaussian_abs_moment(1, 1.0), std::sqrt(2.0 / std::numbers::pi), 1e-15);
    EXPECT_NEAR(gaussian_abs_moment(2, 0.3), 0.09, 1e-15);
    EXPECT_EQ(gaussian_abs_moment(0, 0.7), 1.0);
    EXPECT_EQ(gaussian_abs_moment(3, 0.0), 0.0);
    EXPECT_THROW(gaussian_abs_moment(-1, 1.0), Error);
    EXPECT_THROW(gaussian_abs_moment(1, -1.0), Error);
    // Even moments are sigma^r (r - 1)!!.
    EXPECT_NEAR(gaussian_abs_moment(6, 1.0), 15.0, 1e-12);
}

TEST(Moments, Recurrence)
{
    for (double sigma : {0.1, 1.0, 2.5})
        for (int r = 0; r <= 20; ++r) {
            const double ratio = gaussian_abs_moment(r + 2, sigma) / gaussian_abs_moment(r, sigma);
            EXPECT_NEAR(ratio / (sigma * sigma * (r + 1)), 1.0, 1e-12) << "r " << r;
        }
    const auto table = moment_table(4, 1.0);
    EXPECT_EQ(table.entries.size(), 5u);
    EXPECT_EQ(table.entries.at(0), 1.0);
}

TEST(Moments, MonteCarloAgreement)
{
    for (double sigma : {0.1, 1.0})
        for (int r = 0; r <= 6; ++r) {
            const double exact = gaussian_abs_moment(r, sigma);
            const double mc = monte_carlo_abs_moment(r, sigma, 200000, 7 + r, Sampling::Stratified);
            EXPECT_NEAR(mc / exact, 1.0, 0.01) << "r " << r;
        }
    const double plain = monte_carlo_abs_moment(2, 1.0, 200000, 3);
    EXPECT_NEAR(plain, 1.0, 0.02);
}

TEST(Robustness, BoundValues)
{
    EXPECT_NEAR(robustness_bound(0.1, 1.0, 1.0, 0.0, 4.0), 0.05, 1e-12);
    EXPECT_NEAR(robustness_bound(0.1, 1.0, 1.0, 1.0, 1.0), 0.1, 1e-12);
    EXPECT_NEAR(robustness_bound(0.1, 1.0, 1.0, 1.0, 37.0), 0.1, 1e-12);
    EXPECT_NEAR(robustness_bound(0.1, 1.0, 0.5, 0.0, 1.0), 0.2, 1e-12);
}

TEST(Robustness, MonotoneInRedundancy)
{
    for (double rho : {0.0, 0.3, 0.9}) {
        double prev = robustness_bound(0.2, 0.5, 0.8, rho, 1.0);
        for (int R = 2; R <= 200; ++R) {
            const double b = robustness_bound(0.2, 0.5, 0.8, rho, R);
            EXPECT_LE(b, prev + 1e-15);
            prev = b;
        }
    }
}

TEST(Robustness, DomainErrors)
{
    EXPECT_THROW(robustness_bound(0.1, 1.0, 1.0, 0.0, 0.0), Error);
    EXPECT_THROW(robustness_bound(0.1, 1.0, 1.0, 0.0, 2.5), Error);
    EXPECT_THROW(robustness_bound(0.1, 1.0, 0.0, 0.0, 1.0), Error);
    EXPECT_THROW(robustness_bound(0.1, 1.0, 1.5, 0.0, 1.0), Error);
    EXPECT_THROW(robustness_bound(0.1, 1.0, 1.0, -0.1, 1.0), Error);
    EXPECT_THROW(robustness_bound(0.1, 0.0, 1.0, 0.0, 1.0), Error);
}

TEST(SmallAngle, GradientMassTracksRedundancy)
{
    const auto c = circuit(3, 2, EncodingKind::Constant);
    const auto stats = small_angle_grad_stats(c, 0.05, 200, 17);
    const auto R = redundancy_profile(c.encoding, c.L);
    std::vector<double> r;
    for (int w : stats.omegas)
        r.push_back(R.at_double(w));
    EXPECT_GT(spearman(stats.mean_abs, r), 0.0);
    EXPECT_FALSE(stats.insufficient_samples);
}

TEST(SmallAngle, SlopeTracksSineDegree)
{
    // At theta = 0 the encodings stack into RX(3x), so omega = 3 needs no sine
    // factor while omega = 1, 2 need exactly one: slopes near 0 and near 1.
    const auto c = circuit(1, 3, EncodingKind::Constant, {EntanglerKind::None, 0, 0});
    const std::vector<double> sigmas{0.02, 0.05, 0.1, 0.2};
    const auto slopes = small_angle_slopes(c, sigmas, 60, 5);
    ASSERT_EQ(slopes.omegas.back(), 3);
    EXPECT_NEAR(slopes.slopes[1], 1.0, 0.1);
    EXPECT_NEAR(slopes.slopes[2], 1.0, 0.1);
    EXPECT_NEAR(slopes.slopes[3], 0.0, 0.1);
    EXPECT_GT(slopes.slopes[1], slopes.slopes[3] + 0.5);
}

TEST(SmallAngle, DeterministicAndFlagsSmallSamples)
{
    const auto c = circuit(2, 1, EncodingKind::Constant);
    const auto a = small_angle_grad_stats(c, 0.1, 10, 3);
    const auto b = small_angle_grad_stats(c, 0.1, 10, 3);
    EXPECT_EQ(a.mean_abs, b.mean_abs);
    EXPECT_EQ(a.rms, b.rms);
    EXPECT_TRUE(a.insufficient_samples);
    EXPECT_THROW(small_angle_grad_stats(c, 0.5, 10, 3), Error);
}

TEST(Stats, SpearmanWithTies)
{
    const std::vector<double> x{1, 2, 2, 3};
    EXPECT_EQ(average_ranks(x), (std::vector<double>{1, 2.5, 2.5, 4}));
    const std::vector<double> y{10, 20, 30, 40};
    EXPECT_NEAR(spearman(y, y), 1.0, 1e-15);
    const std::vector<double> z{4, 3, 2, 1};
    EXPECT_NEAR(spearman(y, z), -1.0, 1e-15);
    EXPECT_TRUE(std::isnan(spearman(y, std::vector<double>{1, 1, 1, 1})));
    EXPECT_NEAR(linear_slope(std::vector<double>{0, 1, 2}, std::vector<double>{1, 3, 5}), 2.0, 1e-15);
}

} // namespace
} // namespace slab
