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
#include "spectral_lab/parallel.hpp"
#include "spectral_lab/rng.hpp"

#include <cmath>
#include <cstdlib>
#include <numbers>
#include <string>

namespace slab {

int exit_status(ErrorKind kind) noexcept
{
    switch (kind) {
    case ErrorKind::Config:
    case ErrorKind::UnsupportedLattice:
    case ErrorKind::Domain:
        return 2;
    case ErrorKind::Numeric:
        return 3;
    case ErrorKind::Size:
        return 4;
    case ErrorKind::Io:
        return 5;
    }
    return 1;
}

const char *to_string(ErrorKind kind) noexcept
{
    switch (kind) {
    case ErrorKind::Config: return "configuration error";
    case ErrorKind::Numeric: return "numeric error";
    case ErrorKind::Size: return "size error";
    case ErrorKind::Io: return "io error";
    case ErrorKind::UnsupportedLattice: return "unsupported lattice";
    case ErrorKind::Domain: return "domain error";
    }
    return "error";
}

std::uint64_t Rng::index(std::uint64_t bound)
{
    if (bound == 0)
        fail(ErrorKind::Domain, "Rng::index: empty range");
    // Reject the top partial block so every residue is equally likely.
    const std::uint64_t limit = UINT64_MAX - (UINT64_MAX % bound + 1) % bound;
    std::uint64_t v = engine_();
    while (v > limit)
        v = engine_();
    return v % bound;
}

double Rng::normal()
{
    // 1 - uniform() lies in (0, 1], so the log is finite.
    const double u1 = 1.0 - uniform();
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

std::size_t worker_count()
{
    if (const char *env = std::getenv("SPECTRAL_LAB_THREADS")) {
        char *end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && v > 0)
            return static_cast<std::size_t>(v);
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : hw;
}

} // namespace slab
