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

#include "spectral_lab/simcore.hpp"

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace slab {

enum class EncodingKind { Constant, Linear, Binary, Ternary, Custom };

const char *to_string(EncodingKind kind);
EncodingKind parse_encoding_kind(const std::string &name);

/// Per-qubit scale factors of the data-encoding rotations RX(beta_i x). The
/// same betas are reused in every reupload layer.
struct EncodingScheme {
    EncodingKind kind = EncodingKind::Constant;
    std::vector<double> betas;

    /// Builds the scheme for n qubits. custom_betas is only read for Custom.
    static EncodingScheme make(EncodingKind kind, int n, std::span<const double> custom_betas = {});

    bool operator==(const EncodingScheme &) const = default;
};

/// constant: 1; linear: i+1; binary: 2^i; ternary: 3^i; custom: as supplied.
std::vector<double> encoding_betas(EncodingKind kind, int n,
                                   std::span<const double> custom_betas = {});

enum class EntanglerKind { Ladder, OneDHop, AllToAll, Random, None };

const char *to_string(EntanglerKind kind);
EntanglerKind parse_entangler_kind(const std::string &name);

/// How CNOT pairs are generated for each trainable block.
struct EntanglementSpec {
    EntanglerKind kind = EntanglerKind::Ladder;
    int count = 0;           ///< pairs per block, Random only
    std::uint64_t seed = 0;  ///< Random only

    bool operator==(const EntanglementSpec &) const = default;
};

/// Short human-readable name, e.g. "ladder" or "random(2)".
std::string describe(const EntanglementSpec &spec);

using CnotPair = std::pair<int, int>;  // (control, target)

struct EntanglementLayout {
    EntanglementSpec generator;
    std::vector<std::vector<CnotPair>> blocks;  ///< one list per trainable block

    bool operator==(const EntanglementLayout &) const = default;
};

/// Resolves the CNOT pairs for `block_count` trainable blocks on n qubits.
/// One-qubit registers always resolve to empty blocks.
EntanglementLayout resolve_entanglement(const EntanglementSpec &spec, int n, int block_count);

using ParameterTable = std::vector<double>;

/// Reuploader circuit: trainable block 0, then L times (encoding layer,
/// trainable block). Each trainable block applies RY on every qubit, then RX
/// on every qubit, then its CNOT pairs.
struct ReuploaderCircuit {
    int n = 1;
    int L = 1;
    EncodingScheme encoding;
    EntanglementLayout entanglement;
    Program program;

    std::size_t parameter_count() const { return program.parameter_count; }
    const Observable &observable() const { return program.observable; }

    /// Flat table index of (block, qubit, slot); slot 0 is RY, slot 1 is RX.
    std::size_t parameter_index(int block, int qubit, int slot) const
    {
        return (static_cast<std::size_t>(block) * n + qubit) * 2 + slot;
    }

    /// Largest accessible frequency, L * sum(betas).
    double max_frequency() const;

    bool operator==(const ReuploaderCircuit &) const = default;
};

ReuploaderCircuit build_circuit(int n, int L, const EncodingScheme &encoding,
                                const EntanglementSpec &entanglement, const Observable &observable);

/// Builds from an already resolved layout (used when pairs are supplied directly).
ReuploaderCircuit build_circuit(int n, int L, const EncodingScheme &encoding,
                                const EntanglementLayout &layout, const Observable &observable);

/// I.i.d. N(0, sigma^2) draws, reproducible from seed.
ParameterTable init_params(const ReuploaderCircuit &circuit, double sigma, std::uint64_t seed);

double evaluate_circuit(const ReuploaderCircuit &circuit, std::span<const double> params, double x);

ComplexState prepare_state(const ReuploaderCircuit &circuit, std::span<const double> params, double x);

/// Samples f(x_m, theta) over a grid.
std::vector<double> evaluate_on_grid(const ReuploaderCircuit &circuit,
                                     std::span<const double> params,
                                     std::span<const double> grid);

} // namespace slab
