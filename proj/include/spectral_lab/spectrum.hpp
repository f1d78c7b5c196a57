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

#pragma once

#include "spectral_lab/circuit.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <map>
#include <string>

namespace slab {

/// Exact counts; 4^(nL) exceeds 128 bits at paper scale (n = 5, L = 20).
using BigCount = boost::multiprecision::cpp_int;

/// Values stored as integer keys on a lattice with spacing 1/scale.
///
/// Eigen-angles are +-beta/2, so integer betas need scale 2 and half-integer
/// betas need scale 4. Frequencies share the lattice of the eigen-sums.
struct LatticeHistogram {
    int scale = 2;
    std::map<std::int64_t, BigCount> counts;

    double value(std::int64_t key) const { return static_cast<double>(key) / scale; }
    BigCount total() const;
};

/// Redundancy R(omega): number of ordered eigen-sum pairs (k, j) with
/// Lambda_k - Lambda_j = omega.
struct FrequencySpectrum {
    int scale = 2;
    std::map<std::int64_t, BigCount> redundancy;

    double omega(std::int64_t key) const { return static_cast<double>(key) / scale; }

    /// R(omega), zero off the support. omega must sit on the lattice.
    BigCount at(double omega) const;
    double at_double(double omega) const;

    double max_frequency() const;
    BigCount total() const;

    /// Sorted support as real frequencies.
    std::vector<double> frequencies() const;

    bool operator==(const FrequencySpectrum &) const = default;
};

/// Lattice scale for a set of betas; throws UnsupportedLattice unless every
/// beta is an integer or an exact half-integer.
int lattice_scale(std::span<const double> betas);

/// Histogram of eigen-sums over all n*L encoding gates, by iterated convolution.
LatticeHistogram eigen_sum_histogram(const EncodingScheme &encoding, int L);

/// Autocorrelation of the eigen-sum histogram.
FrequencySpectrum redundancy_profile(const EncodingScheme &encoding, int L);

/// Exhaustive enumeration of all (k, j) sign-choice pairs. Oracle for small
/// instances only: requires n * L <= kMaxBruteforceGates.
FrequencySpectrum redundancy_bruteforce(const EncodingScheme &encoding, int L);

inline constexpr int kMaxBruteforceGates = 12;

std::string to_decimal(const BigCount &value);
double to_double(const BigCount &value);

} // namespace slab
