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

#include "spectral_lab/simcore.hpp"

#include "spectral_lab/error.hpp"

#include <bit>
#include <cmath>
#include <string>

namespace slab {

Gate Gate::rotation(GateKind kind, int target, AngleSource angle)
{
    if (kind == GateKind::CNOT)
        fail(ErrorKind::Config, "Gate::rotation: CNOT is not a rotation");
    if (std::holds_alternative<NoAngle>(angle))
        fail(ErrorKind::Config, "Gate::rotation: rotation needs an angle source");
    return Gate{kind, target, std::nullopt, angle};
}

Gate Gate::cnot(int control, int target)
{
    if (control == target)
        fail(ErrorKind::Config, "Gate::cnot: control and target coincide");
    return Gate{GateKind::CNOT, target, control, NoAngle{}};
}

ComplexState::ComplexState(int qubit_count)
    : qubits_(qubit_count)
{
    if (qubit_count < 1 || qubit_count > 30)
        fail(ErrorKind::Config, "ComplexState: qubit count must be in [1, 30]");
    amplitudes_.assign(std::size_t{1} << qubit_count, Complex{});
    amplitudes_[0] = 1.0;
}

ComplexState ComplexState::from_amplitudes(std::vector<Complex> amplitudes)
{
    const std::size_t dim = amplitudes.size();
    if (dim < 2 || !std::has_single_bit(dim))
        fail(ErrorKind::Config, "ComplexState: amplitude count must be a power of two >= 2");
    const int qubits = std::countr_zero(dim);
    return ComplexState(qubits, std::move(amplitudes));
}

ComplexState ComplexState::basis(int qubit_count, std::size_t index)
{
    ComplexState s(qubit_count);
    if (index >= s.dimension())
        fail(ErrorKind::Config, "ComplexState::basis: index out of range");
    s.amplitudes_[0] = 0.0;
    s.amplitudes_[index] = 1.0;
    return s;
}

double ComplexState::norm_squared() const
{
    double acc = 0.0;
    for (const auto &a : amplitudes_)
        acc += std::norm(a);
    return acc;
}

void ComplexState::check_qubit(int qubit) const
{
    if (qubit < 0 || qubit >= qubits_)
        fail(ErrorKind::Config, "qubit index " + std::to_string(qubit) +
                                    " out of range for " + std::to_string(qubits_) +
                                    " qubits");
}

void ComplexState::apply(const Gate &gate, double angle)
{
    if (gate.kind == GateKind::CNOT) {
        if (!gate.control)
            fail(ErrorKind::Config, "CNOT without control qubit");
        apply_cnot(*gate.control, gate.target);
    } else {
        if (gate.control)
            fail(ErrorKind::Config, "rotation gate with a control qubit");
        apply_rotation(gate.kind, gate.target, angle);
    }
}

void ComplexState::apply_rotation(GateKind kind, int target, double angle)
{
    check_qubit(target);
    if (!std::isfinite(angle))
        fail(ErrorKind::Numeric, "non-finite rotation angle");
    const double c = std::cos(0.5 * angle);
    const double s = std::sin(0.5 * angle);
    const std::size_t m = mask(target);
    const std::size_t dim = amplitudes_.size();
    Complex *a = amplitudes_.data();
    switch (kind) {
    case GateKind::RX:
        // [[c, -is], [-is, c]]
        for (std::size_t i = 0; i < dim; ++i) {
            if (i & m)
                continue;
            const Complex a0 = a[i];
            const Complex a1 = a[i | m];
            a[i] = {c * a0.real() + s * a1.imag(), c * a0.imag() - s * a1.real()};
            a[i | m] = {c * a1.real() + s * a0.imag(), c * a1.imag() - s * a0.real()};
        }
        break;
    case GateKind::RY:
        // [[c, -s], [s, c]]
        for (std::size_t i = 0; i < dim; ++i) {
            if (i & m)
                continue;
            const Complex a0 = a[i];
            const Complex a1 = a[i | m];
            a[i] = c * a0 - s * a1;
            a[i | m] = s * a0 + c * a1;
        }
        break;
    case GateKind::RZ: {
        // diag(e^{-i angle/2}, e^{+i angle/2})
        const Complex lo{c, -s};
        const Complex hi{c, s};
        for (std::size_t i = 0; i < dim; ++i)
            a[i] *= (i & m) ? hi : lo;
        break;
    }
    case GateKind::CNOT:
        fail(ErrorKind::Config, "apply_rotation: CNOT is not a rotation");
    }
}

void ComplexState::apply_cnot(int control, int target)
{
    check_qubit(control);
    check_qubit(target);
    if (control == target)
        fail(ErrorKind::Config, "CNOT control equals target");
    const std::size_t cm = mask(control);
    const std::size_t tm = mask(target);
    for (std::size_t i = 0; i < amplitudes_.size(); ++i)
        if ((i & cm) && !(i & tm))
            std::swap(amplitudes_[i], amplitudes_[i | tm]);
}

void ComplexState::apply_pauli(GateKind kind, int target)
{
    check_qubit(target);
    const std::size_t m = mask(target);
    Complex *a = amplitudes_.data();
    switch (kind) {
    case GateKind::RX:
        for (std::size_t i = 0; i < amplitudes_.size(); ++i)
            if (!(i & m))
                std::swap(a[i], a[i | m]);
        break;
    case GateKind::RY:
        // Y = [[0, -i], [i, 0]]
        for (std::size_t i = 0; i < amplitudes_.size(); ++i) {
            if (i & m)
                continue;
            const Complex a0 = a[i];
            const Complex a1 = a[i | m];
            a[i] = {a1.imag(), -a1.real()};
            a[i | m] = {-a0.imag(), a0.real()};
        }
        break;
    case GateKind::RZ:
        for (std::size_t i = 0; i < amplitudes_.size(); ++i)
            if (i & m)
                a[i] = -a[i];
        break;
    case GateKind::CNOT:
        fail(ErrorKind::Config, "apply_pauli: CNOT has no Pauli generator");
    }
}

ComplexState apply_gate(ComplexState state, const Gate &gate, double resolved_angle)
{
    state.apply(gate, resolved_angle);
    return state;
}

double expectation(const ComplexState &state, const Observable &obs)
{
    if (obs.qubit < 0 || obs.qubit >= state.qubit_count())
        fail(ErrorKind::Config, "observable qubit out of range");
    const std::size_t m = std::size_t{1} << (state.qubit_count() - 1 - obs.qubit);
    double acc = 0.0;
    const auto amps = state.amplitudes();
    for (std::size_t i = 0; i < amps.size(); ++i) {
        const double p = std::norm(amps[i]);
        acc += (i & m) ? -p : p;
    }
    return acc;
}

double resolve_angle(const Gate &gate, std::span<const double> params, double x)
{
    return std::visit(
        [&](const auto &src) -> double {
            using T = std::decay_t<decltype(src)>;
            if constexpr (std::is_same_v<T, ParameterAngle>) {
                if (src.index >= params.size())
                    fail(ErrorKind::Config, "parameter index " + std::to_string(src.index) +
                                                " out of range for table of size " +
                                                std::to_string(params.size()));
                return params[src.index];
            } else if constexpr (std::is_same_v<T, EncodingAngle>) {
                return src.beta * x;
            } else if constexpr (std::is_same_v<T, FixedAngle>) {
                return src.radians;
            } else {
                return 0.0;
            }
        },
        gate.angle);
}

void Program::validate() const
{
    if (qubits < 1 || qubits > 30)
        fail(ErrorKind::Config, "program qubit count must be in [1, 30]");
    auto in_range = [&](int q) { return q >= 0 && q < qubits; };
    if (!in_range(observable.qubit))
        fail(ErrorKind::Config, "observable qubit out of range");
    for (const Gate &g : gates) {
        if (!in_range(g.target))
            fail(ErrorKind::Config, "gate target out of range");
        if (g.kind == GateKind::CNOT) {
            if (!g.control || !in_range(*g.control) || *g.control == g.target)
                fail(ErrorKind::Config, "malformed CNOT");
        } else if (g.control) {
            fail(ErrorKind::Config, "rotation gate with a control qubit");
        }
        if (const auto *p = std::get_if<ParameterAngle>(&g.angle);
            p && p->index >= parameter_count)
            fail(ErrorKind::Config, "gate references parameter beyond the table");
    }
}

ComplexState run_program(const Program &program, std::span<const double> params, double x)
{
    if (params.size() != program.parameter_count)
        fail(ErrorKind::Config, "parameter table has " + std::to_string(params.size()) +
                                    " entries, circuit expects " +
                                    std::to_string(program.parameter_count));
    ComplexState state(program.qubits);
    for (const Gate &g : program.gates)
        state.apply(g, resolve_angle(g, params, x));
    return state;
}

double evaluate_program(const Program &program, std::span<const double> params, double x)
{
    return expectation(run_program(program, params, x), program.observable);
}

} // namespace slab
