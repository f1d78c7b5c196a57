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

#include <stdexcept>
#include <string>

namespace slab {

/// Failure categories. Each maps onto one CLI exit status.
enum class ErrorKind {
    Config,              ///< invalid configuration, index or dimension mismatch
    Numeric,             ///< non-finite values or divergence
    Size,                ///< instance too large for an exhaustive routine
    Io,                  ///< filesystem failures
    UnsupportedLattice,  ///< encoding scales not representable on the frequency lattice
    Domain,              ///< argument outside a formula's domain
};

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string &message)
        : std::runtime_error(message), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

/// Process exit status for an error category (config=2, numeric=3, size=4, io=5).
int exit_status(ErrorKind kind) noexcept;

const char *to_string(ErrorKind kind) noexcept;

[[noreturn]] inline void fail(ErrorKind kind, const std::string &message)
{
    throw Error(kind, message);
}

} // namespace slab
