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

#include "spectral_lab/circuit.hpp"

#include "spectral_lab/error.hpp"
#include "spectral_lab/parallel.hpp"
#include "spectral_lab/rng.hpp"

#include <cmath>
#include <numeric>

namespace slab {

const char *to_string(EncodingKind kind)
{
    switch (kind) {
    case EncodingKind::Constant: return "constant";
    case EncodingKind::Linear: return "linear";
    case EncodingKind::Binary: return "binary";
    case EncodingKind::Ternary: return "ternary";
    case EncodingKind::Custom: return "custom";
    }
    return "?";
}

EncodingKind parse_encoding_kind(const std::string &name)
{
    for (auto k : {EncodingKind::Constant, EncodingKind::Linear, EncodingKind::Binary,
                   EncodingKind::Ternary, EncodingKind::Custom})
        if (name == to_string(k))
            return k;
    fail(ErrorKind::Config, "unknown encoding kind '" + name + "'");
}

std::vector<double> encoding_betas(EncodingKind kind, int n, std::span<const double> custom_betas)
{
    if (n < 1)
        fail(ErrorKind::Config, "encoding_betas: n must be >= 1");
    std::vector<double> betas(static_cast<std::size_t>(n));
    switch (kind) {
    case EncodingKind::Constant:
        std::fill(betas.begin(), betas.end(), 1.0);
        break;
    case EncodingKind::Linear:
        std::iota(betas.begin(), betas.end(), 1.0);
        break;
    case EncodingKind::Binary:
        for (int i = 0; i < n; ++i)
            betas[i] = std::ldexp(1.0, i);
        break;
    case EncodingKind::Ternary: {
        double p = 1.0;
        for (int i = 0; i < n; ++i, p *= 3.0)
            betas[i] = p;
        break;
    }
    case EncodingKind::Custom:
        if (custom_betas.empty())
            fail(ErrorKind::Config, "custom encoding requires explicit betas");
        if (custom_betas.size() != betas.size())
            fail(ErrorKind::Config, "custom encoding needs exactly one beta per qubit");
        betas.assign(custom_betas.begin(), custom_betas.end());
        break;
    }
    for (double b : betas)
        if (!(b > 0.0) || !std::isfinite(b))
            fail(ErrorKind::Config, "encoding betas must be finite and positive");
    return betas;
}

EncodingScheme EncodingScheme::make(EncodingKind kind, int n, std::span<const double> custom_betas)
{
    return EncodingScheme{kind, encoding_betas(kind, n, custom_betas)};
}

const char *to_string(EntanglerKind kind)
{
    switch (kind) {
    case EntanglerKind::Ladder: return "ladder";
    case EntanglerKind::OneDHop: return "one_d_hop";
    case EntanglerKind::AllToAll: return "all_to_all";
    case EntanglerKind::Random: return "random";
    case EntanglerKind::None: return "none";
    }
    return "?";
}

EntanglerKind parse_entangler_kind(const std::string &name)
{
    for (auto k : {EntanglerKind::Ladder, EntanglerKind::OneDHop, EntanglerKind::AllToAll,
                   EntanglerKind::Random, EntanglerKind::None})
        if (name == to_string(k))
            return k;
    fail(ErrorKind::Config, "unknown entanglement generator '" + name + "'");
}

std::string describe(const EntanglementSpec &spec)
{
    if (spec.kind == EntanglerKind::Random)
        return "random(" + std::to_string(spec.count) + ")";
    return to_string(spec.kind);
}

EntanglementLayout resolve_entanglement(const EntanglementSpec &spec, int n, int block_count)
{
    if (n < 1 || block_count < 1)
        fail(ErrorKind::Config, "resolve_entanglement: n and block count must be positive");
    EntanglementLayout layout{spec, std::vector<std::vector<CnotPair>>(block_count)};
    if (n == 1)
        return layout;

    std::vector<CnotPair> all_pairs;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            all_pairs.emplace_back(i, j);

    switch (spec.kind) {
    case EntanglerKind::None:
        break;
    case EntanglerKind::Ladder:
        for (auto &block : layout.blocks)
            for (int q = 0; q + 1 < n; ++q)
                block.emplace_back(q, q + 1);
        break;
    case EntanglerKind::OneDHop:
        for (int l = 0; l < block_count; ++l) {
            const int c = l % (n - 1);
            layout.blocks[l].emplace_back(c, c + 1);
        }
        break;
    case EntanglerKind::AllToAll:
        for (auto &block : layout.blocks)
            block = all_pairs;
        break;
    case EntanglerKind::Random: {
        if (spec.count < 0 || static_cast<std::size_t>(spec.count) > all_pairs.size())
            fail(ErrorKind::Config, "random entanglement: count must be in [0, " +
                                        std::to_string(all_pairs.size()) + "]");
        Rng rng(spec.seed);
        for (auto &block : layout.blocks) {
            // Partial Fisher-Yates: the first `count` slots are a uniform draw
            // without replacement.
            std::vector<CnotPair> pool = all_pairs;
            for (int i = 0; i < spec.count; ++i) {
                const auto j = i + rng.index(pool.size() - i);
                std::swap(pool[i], pool[j]);
            }
            block.assign(pool.begin(), pool.begin() + spec.count);
        }
        break;
    }
    }
    return layout;
}

double ReuploaderCircuit::max_frequency() const
{
    return L * std::accumulate(encoding.betas.begin(), encoding.betas.end(), 0.0);
}

namespace {

void append_trainable_block(Program &program, int n, int block,
                            const std::vector<CnotPair> &pairs)
{
    for (int slot = 0; slot < 2; ++slot) {
        const GateKind kind = slot == 0 ? GateKind::RY : GateKind::RX;
        for (int q = 0; q < n; ++q) {
            const std::size_t index = (static_cast<std::size_t>(block) * n + q) * 2 + slot;
            program.gates.push_back(Gate::rotation(kind, q, ParameterAngle{index}));
        }
    }
    for (const auto &[c, t] : pairs) {
        if (c < 0 || c >= n || t < 0 || t >= n || c == t)
            fail(ErrorKind::Config, "entanglement pair (" + std::to_string(c) + ", " +
                                        std::to_string(t) + ") out of range");
        program.gates.push_back(Gate::cnot(c, t));
    }
}

} // namespace

ReuploaderCircuit build_circuit(int n, int L, const EncodingScheme &encoding,
                                const EntanglementLayout &layout, const Observable &observable)
{
    if (n < 1)
        fail(ErrorKind::Config, "build_circuit: n must be >= 1");
    if (L < 1)
        fail(ErrorKind::Config, "build_circuit: L must be >= 1");
    if (encoding.betas.size() != static_cast<std::size_t>(n))
        fail(ErrorKind::Config, "build_circuit: encoding has the wrong number of betas");
    if (layout.blocks.size() != static_cast<std::size_t>(L + 1))
        fail(ErrorKind::Config, "build_circuit: layout must have L + 1 blocks");
    if (observable.qubit < 0 || observable.qubit >= n)
        fail(ErrorKind::Config, "build_circuit: observable qubit out of range");

    ReuploaderCircuit circuit;
    circuit.n = n;
    circuit.L = L;
    circuit.encoding = encoding;
    circuit.entanglement = layout;
    Program &p = circuit.program;
    p.qubits = n;
    p.observable = observable;
    p.parameter_count = static_cast<std::size_t>(n) * 2 * (L + 1);

    append_trainable_block(p, n, 0, layout.blocks[0]);
    for (int l = 1; l <= L; ++l) {
        for (int q = 0; q < n; ++q)
            p.gates.push_back(Gate::rotation(GateKind::RX, q, EncodingAngle{encoding.betas[q]}));
        append_trainable_block(p, n, l, layout.blocks[l]);
    }
    p.validate();
    return circuit;
}

ReuploaderCircuit build_circuit(int n, int L, const EncodingScheme &encoding,
                                const EntanglementSpec &entanglement, const Observable &observable)
{
    if (n < 1 || L < 1)
        fail(ErrorKind::Config, "build_circuit: n and L must be >= 1");
    return build_circuit(n, L, encoding, resolve_entanglement(entanglement, n, L + 1), observable);
}

ParameterTable init_params(const ReuploaderCircuit &circuit, double sigma, std::uint64_t seed)
{
    if (!(sigma >= 0.0) || !std::isfinite(sigma))
        fail(ErrorKind::Config, "init_params: sigma must be finite and >= 0");
    ParameterTable table(circuit.parameter_count(), 0.0);
    if (sigma == 0.0)
        return table;
    Rng rng(seed);
    for (double &v : table)
        v = rng.normal(0.0, sigma);
    return table;
}

double evaluate_circuit(const ReuploaderCircuit &circuit, std::span<const double> params, double x)
{
    return evaluate_program(circuit.program, params, x);
}

ComplexState prepare_state(const ReuploaderCircuit &circuit, std::span<const double> params, double x)
{
    return run_program(circuit.program, params, x);
}

std::vector<double> evaluate_on_grid(const ReuploaderCircuit &circuit,
                                     std::span<const double> params,
                                     std::span<const double> grid)
{
    std::vector<double> out(grid.size());
    parallel_for(grid.size(), [&](std::size_t m) {
        out[m] = evaluate_program(circuit.program, params, grid[m]);
    });
    return out;
}

} // namespace slab
