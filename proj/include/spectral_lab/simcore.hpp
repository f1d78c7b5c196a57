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

#include <complex>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <variant>
#include <vector>

namespace slab {

using Complex = std::complex<double>;

enum class GateKind : std::uint8_t { RX, RY, RZ, CNOT };

/// Angle read from the trainable parameter table.
struct ParameterAngle {
    std::size_t index = 0;
    bool operator==(const ParameterAngle &) const = default;
};

/// Data-encoding angle beta * x.
struct EncodingAngle {
    double beta = 1.0;
    bool operator==(const EncodingAngle &) const = default;
};

struct FixedAngle {
    double radians = 0.0;
    bool operator==(const FixedAngle &) const = default;
};

/// CNOT carries no angle.
struct NoAngle {
    bool operator==(const NoAngle &) const = default;
};

using AngleSource = std::variant<NoAngle, ParameterAngle, EncodingAngle, FixedAngle>;

/// One gate of a program. Rotations follow G(phi) = exp(-i phi P / 2).
struct Gate {
    GateKind kind = GateKind::RX;
    int target = 0;
    std::optional<int> control;
    AngleSource angle;

    static Gate rotation(GateKind kind, int target, AngleSource angle);
    static Gate cnot(int control, int target);

    bool is_rotation() const { return kind != GateKind::CNOT; }
    bool operator==(const Gate &) const = default;
};

/// Pauli-Z on one qubit.
struct Observable {
    int qubit = 0;
    bool operator==(const Observable &) const = default;
};

/// Dense n-qubit state. Amplitude index bit (n-1-q) holds qubit q, so qubit 0
/// is the most significant bit: |q0 q1 ... q_{n-1}>.
class ComplexState {
public:
    /// |0...0> on qubit_count qubits.
    explicit ComplexState(int qubit_count);

    /// Adopts explicit amplitudes; the length must be a power of two.
    static ComplexState from_amplitudes(std::vector<Complex> amplitudes);

    /// Computational basis state |index>.
    static ComplexState basis(int qubit_count, std::size_t index);

    int qubit_count() const { return qubits_; }
    std::size_t dimension() const { return amplitudes_.size(); }
    std::span<const Complex> amplitudes() const { return amplitudes_; }
    std::span<Complex> amplitudes() { return amplitudes_; }
    const Complex &operator[](std::size_t i) const { return amplitudes_[i]; }

    double norm_squared() const;

    /// In-place application; angle is ignored for CNOT.
    void apply(const Gate &gate, double angle);
    void apply_rotation(GateKind kind, int target, double angle);
    void apply_cnot(int control, int target);
    /// Multiplies by the bare Pauli matching a rotation kind (X, Y or Z).
    void apply_pauli(GateKind kind, int target);

    bool operator==(const ComplexState &) const = default;

private:
    ComplexState(int qubits, std::vector<Complex> amplitudes)
        : qubits_(qubits), amplitudes_(std::move(amplitudes)) {}

    std::size_t mask(int qubit) const
    {
        return std::size_t{1} << (qubits_ - 1 - qubit);
    }
    void check_qubit(int qubit) const;

    int qubits_;
    std::vector<Complex> amplitudes_;
};

/// Value-semantic gate application.
ComplexState apply_gate(ComplexState state, const Gate &gate, double resolved_angle);

/// <psi| Z_q |psi> = sum_i z_i |a_i|^2.
double expectation(const ComplexState &state, const Observable &obs);

/// Resolves a gate's angle for a parameter table and input x.
double resolve_angle(const Gate &gate, std::span<const double> params, double x);

/// A flat gate list together with the register size, observable and the
/// number of trainable parameters it indexes.
struct Program {
    int qubits = 1;
    std::vector<Gate> gates;
    Observable observable;
    std::size_t parameter_count = 0;

    /// Validates indices against the register and parameter table size.
    void validate() const;

    bool operator==(const Program &) const = default;
};

/// U(x, theta)|0>.
ComplexState run_program(const Program &program, std::span<const double> params, double x);

/// f(x, theta) = <0|U^dag O U|0>.
double evaluate_program(const Program &program, std::span<const double> params, double x);

} // namespace slab
