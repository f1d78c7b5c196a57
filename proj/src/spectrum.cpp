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

#include "spectral_lab/spectrum.hpp"

#include "spectral_lab/error.hpp"

#include <cmath>
#include <vector>

namespace slab {

BigCount LatticeHistogram::total() const
{
    BigCount t = 0;
    for (const auto &[k, c] : counts)
        t += c;
    return t;
}

namespace {

std::int64_t lattice_key(double omega, int scale)
{
    const double scaled = omega * scale;
    const double rounded = std::round(scaled);
    if (std::abs(scaled - rounded) > 1e-9)
        fail(ErrorKind::UnsupportedLattice, "frequency " + std::to_string(omega) +
                                                " is not on the spectrum lattice");
    return static_cast<std::int64_t>(rounded);
}

/// Scaled eigen-angle beta * scale / 2 as an exact integer.
std::vector<std::int64_t> scaled_half_betas(const EncodingScheme &encoding, int scale)
{
    std::vector<std::int64_t> out;
    out.reserve(encoding.betas.size());
    for (double b : encoding.betas)
        out.push_back(static_cast<std::int64_t>(b * scale / 2.0));
    return out;
}

void check_inputs(const EncodingScheme &encoding, int L)
{
    if (encoding.betas.empty())
        fail(ErrorKind::Config, "spectrum: encoding has no betas");
    if (L < 1)
        fail(ErrorKind::Config, "spectrum: L must be >= 1");
}

} // namespace

BigCount FrequencySpectrum::at(double omega) const
{
    const auto it = redundancy.find(lattice_key(omega, scale));
    return it == redundancy.end() ? BigCount{0} : it->second;
}

double FrequencySpectrum::at_double(double omega) const
{
    const double scaled = omega * scale;
    const double rounded = std::round(scaled);
    if (std::abs(scaled - rounded) > 1e-9)
        return 0.0;
    const auto it = redundancy.find(static_cast<std::int64_t>(rounded));
    return it == redundancy.end() ? 0.0 : to_double(it->second);
}

double FrequencySpectrum::max_frequency() const
{
    return redundancy.empty() ? 0.0 : omega(redundancy.rbegin()->first);
}

BigCount FrequencySpectrum::total() const
{
    BigCount t = 0;
    for (const auto &[k, c] : redundancy)
        t += c;
    return t;
}

std::vector<double> FrequencySpectrum::frequencies() const
{
    std::vector<double> out;
    out.reserve(redundancy.size());
    for (const auto &[k, c] : redundancy)
        out.push_back(omega(k));
    return out;
}

int lattice_scale(std::span<const double> betas)
{
    int scale = 2;
    for (double b : betas) {
        if (b == std::floor(b) && std::abs(b) < 1e15)
            continue;
        if (2.0 * b == std::floor(2.0 * b) && std::abs(b) < 1e15) {
            scale = 4;
            continue;
        }
        fail(ErrorKind::UnsupportedLattice,
             "encoding scale " + std::to_string(b) +
                 " is not an integer or half-integer; its spectrum has no exact lattice");
    }
    return scale;
}

LatticeHistogram eigen_sum_histogram(const EncodingScheme &encoding, int L)
{
    check_inputs(encoding, L);
    const int scale = lattice_scale(encoding.betas);
    const auto half = scaled_half_betas(encoding, scale);

    // Dense convolution over [-span, span] with span = L * sum |half|.
    std::int64_t span = 0;
    for (auto h : half)
        span += h;
    span *= L;
    const std::size_t width = static_cast<std::size_t>(2 * span + 1);
    std::vector<BigCount> dist(width, 0);
    std::vector<BigCount> next(width, 0);
    dist[static_cast<std::size_t>(span)] = 1;
    std::int64_t reach = 0;  // current support radius
    for (int l = 0; l < L; ++l) {
        for (auto h : half) {
            for (std::int64_t v = -reach - h; v <= reach + h; ++v)
                next[static_cast<std::size_t>(v + span)] = 0;
            for (std::int64_t v = -reach; v <= reach; ++v) {
                const BigCount &c = dist[static_cast<std::size_t>(v + span)];
                if (c.is_zero())
                    continue;
                next[static_cast<std::size_t>(v - h + span)] += c;
                next[static_cast<std::size_t>(v + h + span)] += c;
            }
            reach += h;
            std::swap(dist, next);
        }
    }

    LatticeHistogram hist;
    hist.scale = scale;
    for (std::int64_t v = -span; v <= span; ++v) {
        const BigCount &c = dist[static_cast<std::size_t>(v + span)];
        if (!c.is_zero())
            hist.counts.emplace(v, c);
    }
    return hist;
}

FrequencySpectrum redundancy_profile(const EncodingScheme &encoding, int L)
{
    const LatticeHistogram hist = eigen_sum_histogram(encoding, L);
    std::vector<std::pair<std::int64_t, const BigCount *>> entries;
    entries.reserve(hist.counts.size());
    for (const auto &[k, c] : hist.counts)
        entries.emplace_back(k, &c);

    // R(omega) = sum_m hist(m) hist(m - omega); only omega >= 0 is computed and
    // mirrored, since the autocorrelation of any histogram is symmetric.
    FrequencySpectrum spec;
    spec.scale = hist.scale;
    if (entries.empty())
        return spec;
    const std::int64_t width = entries.back().first - entries.front().first;
    std::vector<BigCount> acc(static_cast<std::size_t>(width + 1), 0);
    for (std::size_t a = 0; a < entries.size(); ++a)
        for (std::size_t b = 0; b <= a; ++b)
            acc[static_cast<std::size_t>(entries[a].first - entries[b].first)] +=
                (*entries[a].second) * (*entries[b].second);
    for (std::int64_t omega = 0; omega <= width; ++omega) {
        const BigCount &c = acc[static_cast<std::size_t>(omega)];
        if (c.is_zero())
            continue;
        spec.redundancy[omega] = c;
        if (omega != 0)
            spec.redundancy[-omega] = c;
    }
    return spec;
}

FrequencySpectrum redundancy_bruteforce(const EncodingScheme &encoding, int L)
{
    check_inputs(encoding, L);
    const int gates = static_cast<int>(encoding.betas.size()) * L;
    if (gates > kMaxBruteforceGates)
        fail(ErrorKind::Size, "redundancy_bruteforce: n * L = " + std::to_string(gates) +
                                  " exceeds the enumeration limit of " +
                                  std::to_string(kMaxBruteforceGates));
    const int scale = lattice_scale(encoding.betas);
    const std::size_t n = encoding.betas.size();

    // Eigen-sum for every sign pattern; gate g uses beta of qubit g mod n.
    const std::size_t configs = std::size_t{1} << gates;
    std::vector<std::int64_t> sums(configs);
    for (std::size_t bits = 0; bits < configs; ++bits) {
        double s = 0.0;
        for (int g = 0; g < gates; ++g) {
            const double eig = encoding.betas[g % n] / 2.0;
            s += (bits >> g) & 1U ? eig : -eig;
        }
        sums[bits] = lattice_key(s, scale);
    }

    std::map<std::int64_t, std::uint64_t> counts;
    for (std::size_t k = 0; k < configs; ++k)
        for (std::size_t j = 0; j < configs; ++j)
            ++counts[sums[k] - sums[j]];

    FrequencySpectrum spec;
    spec.scale = scale;
    for (const auto &[omega, c] : counts)
        spec.redundancy.emplace(omega, BigCount{c});
    return spec;
}

std::string to_decimal(const BigCount &value)
{
    return value.str();
}

double to_double(const BigCount &value)
{
    return value.convert_to<double>();
}

} // namespace slab
