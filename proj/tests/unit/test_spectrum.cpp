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
#include "spectral_lab/spectrum.hpp"

#include <gtest/gtest.h>

#include <map>

namespace slab {
namespace {

EncodingScheme enc(EncodingKind kind, int n) { return EncodingScheme::make(kind, n); }

std::map<double, int> as_map(const FrequencySpectrum &s)
{
    std::map<double, int> out;
    for (const auto &[key, count] : s.redundancy)
        out[s.omega(key)] = static_cast<int>(count);
    return out;
}

BigCount binomial(unsigned n, unsigned k)
{
    BigCount r = 1;
    for (unsigned i = 1; i <= k; ++i)
        r = r * (n - k + i) / i;
    return r;
}

TEST(Spectrum, ConstantTwoQubitsOneLayer)
{
    const std::map<double, int> expected{{-2, 1}, {-1, 4}, {0, 6}, {1, 4}, {2, 1}};
    EXPECT_EQ(as_map(redundancy_profile(enc(EncodingKind::Constant, 2), 1)), expected);
}

TEST(Spectrum, ConstantOneQubitTwoLayersMatchesTwoQubitsOneLayer)
{
    EXPECT_EQ(redundancy_profile(enc(EncodingKind::Constant, 1), 2),
              redundancy_profile(enc(EncodingKind::Constant, 2), 1));
}

TEST(Spectrum, TernaryTwoQubitsOneLayer)
{
    const std::map<double, int> expected{{-4, 1}, {-3, 2}, {-2, 1}, {-1, 2}, {0, 4},
                                         {1, 2},  {2, 1},  {3, 2},  {4, 1}};
    EXPECT_EQ(as_map(redundancy_profile(enc(EncodingKind::Ternary, 2), 1)), expected);
}

TEST(Spectrum, TernaryEigenSumHistogram)
{
    const auto h = eigen_sum_histogram(enc(EncodingKind::Ternary, 2), 1);
    std::map<double, int> got;
    for (const auto &[key, count] : h.counts)
        got[h.value(key)] = static_cast<int>(count);
    EXPECT_EQ(got, (std::map<double, int>{{-2, 1}, {-1, 1}, {1, 1}, {2, 1}}));
}

TEST(Spectrum, MatchesBruteForceOnAllSmallInstances)
{
    for (auto kind : {EncodingKind::Constant, EncodingKind::Linear, EncodingKind::Binary,
                      EncodingKind::Ternary})
        for (int n = 1; n <= 3; ++n)
            for (int L = 1; L <= 3; ++L)
                EXPECT_EQ(redundancy_profile(enc(kind, n), L), redundancy_bruteforce(enc(kind, n), L))
                    << to_string(kind) << " n=" << n << " L=" << L;
}

TEST(Spectrum, HalfIntegerBetas)
{
    const std::vector<double> betas{1.0, 1.5};
    const auto e = EncodingScheme::make(EncodingKind::Custom, 2, betas);
    const auto s = redundancy_profile(e, 1);
    EXPECT_EQ(s.scale, 4);
    const std::map<double, int> expected{{-2.5, 1}, {-1.5, 2}, {-1, 2}, {-0.5, 1}, {0, 4},
                                         {0.5, 1},  {1, 2},    {1.5, 2}, {2.5, 1}};
    EXPECT_EQ(as_map(s), expected);
    EXPECT_EQ(s, redundancy_bruteforce(e, 1));
    EXPECT_EQ(s, redundancy_bruteforce(e, 1));
    EXPECT_EQ(redundancy_profile(e, 2), redundancy_bruteforce(e, 2));
}

TEST(Spectrum, IrregularBetasAreRejected)
{
    const std::vector<double> betas{1.0, 0.3};
    try {
        redundancy_profile(EncodingScheme::make(EncodingKind::Custom, 2, betas), 1);
        FAIL() << "expected an unsupported lattice error";
    } catch (const Error &e) {
        EXPECT_EQ(e.kind(), ErrorKind::UnsupportedLattice);
    }
}

TEST(Spectrum, BruteForceRefusesLargeInstances)
{
    try {
        redundancy_bruteforce(enc(EncodingKind::Constant, 5), 3);
        FAIL() << "expected a size error";
    } catch (const Error &e) {
        EXPECT_EQ(e.kind(), ErrorKind::Size);
    }
}

TEST(Spectrum, SymmetryAndTotals)
{
    for (auto kind : {EncodingKind::Constant, EncodingKind::Linear, EncodingKind::Binary,
                      EncodingKind::Ternary})
        for (int n = 1; n <= 4; ++n)
            for (int L = 1; L <= 4; ++L) {
                const auto s = redundancy_profile(enc(kind, n), L);
                for (const auto &[key, count] : s.redundancy) {
                    ASSERT_EQ(s.redundancy.at(-key), count);
                    ASSERT_GT(count, 0);
                }
                EXPECT_EQ(s.total(), BigCount(1) << (2 * n * L));
                double beta_sum = 0.0;
                for (double b : enc(kind, n).betas)
                    beta_sum += b;
                EXPECT_DOUBLE_EQ(s.max_frequency(), L * beta_sum);
            }
}

TEST(Spectrum, TernaryHasNoGapsAndUniqueHistogram)
{
    // Ternary betas make every eigen-sum distinct in a single layer.
    const auto h = eigen_sum_histogram(enc(EncodingKind::Ternary, 4), 1);
    EXPECT_EQ(h.counts.size(), 16u);
    for (const auto &[key, count] : h.counts)
        EXPECT_EQ(count, 1);
    const auto s = redundancy_profile(enc(EncodingKind::Ternary, 4), 1);
    EXPECT_EQ(s.redundancy.size(), static_cast<std::size_t>(2 * 40 + 1));
}

TEST(Spectrum, PaperScaleConstantIsExact)
{
    const auto s = redundancy_profile(enc(EncodingKind::Constant, 5), 20);
    EXPECT_DOUBLE_EQ(s.max_frequency(), 100.0);
    EXPECT_EQ(s.total(), BigCount(1) << 200);
    // R(0) = sum_k C(100, k)^2 = C(200, 100).
    EXPECT_EQ(s.at(0.0), binomial(200, 100));
    EXPECT_EQ(to_decimal(s.at(100.0)), "1");
    EXPECT_EQ(s.at(100.5), 0);
}

TEST(Spectrum, PaperScaleTernaryBand)
{
    const auto s = redundancy_profile(enc(EncodingKind::Ternary, 5), 20);
    EXPECT_DOUBLE_EQ(s.max_frequency(), 2420.0);
    EXPECT_EQ(s.total(), BigCount(1) << 200);
    for (int w = -2420; w <= 2420; ++w)
        ASSERT_GT(s.at(w), 0) << w;
}

TEST(Spectrum, OffLatticeQueryIsRejected)
{
    const auto s = redundancy_profile(enc(EncodingKind::Constant, 2), 1);
    EXPECT_THROW((void)s.at(0.25), Error);
}

} // namespace
} // namespace slab
