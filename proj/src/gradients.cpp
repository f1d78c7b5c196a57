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

#include "spectral_lab/gradients.hpp"

#include "spectral_lab/error.hpp"
#include "spectral_lab/parallel.hpp"

#include <cmath>
#include <numbers>

namespace slab {

GradientVector grad_f(const ReuploaderCircuit &circuit, std::span<const double> params, double x)
{
    constexpr double shift = std::numbers::pi / 2.0;
    std::vector<double> shifted(params.begin(), params.end());
    GradientVector grad(params.size());
    for (std::size_t k = 0; k < params.size(); ++k) {
        const double orig = shifted[k];
        shifted[k] = orig + shift;
        const double plus = evaluate_circuit(circuit, shifted, x);
        shifted[k] = orig - shift;
        const double minus = evaluate_circuit(circuit, shifted, x);
        shifted[k] = orig;
        grad[k] = 0.5 * (plus - minus);
    }
    return grad;
}

GradientVector central_difference(const std::function<double(std::span<const double>)> &fn,
                                  std::span<const double> params, double h)
{
    if (!(h > 0.0))
        fail(ErrorKind::Domain, "central_difference: step must be positive");
    std::vector<double> shifted(params.begin(), params.end());
    GradientVector grad(params.size());
    for (std::size_t k = 0; k < params.size(); ++k) {
        const double orig = shifted[k];
        shifted[k] = orig + h;
        const double plus = fn(shifted);
        shifted[k] = orig - h;
        const double minus = fn(shifted);
        shifted[k] = orig;
        grad[k] = (plus - minus) / (2.0 * h);
    }
    return grad;
}

GradientVector grad_f_fd(const ReuploaderCircuit &circuit, std::span<const double> params, double x,
                         double h)
{
    if (!(h > 0.0 && h < 0.1))
        fail(ErrorKind::Domain, "grad_f_fd: step must lie in (0, 0.1)");
    return central_difference(
        [&](std::span<const double> p) { return evaluate_circuit(circuit, p, x); }, params, h);
}

GradientVector grad_f_adjoint(const ReuploaderCircuit &circuit, std::span<const double> params,
                              double x)
{
    const Program &program = circuit.program;
    ComplexState psi = run_program(program, params, x);

    // lambda = O psi
    ComplexState lambda = psi;
    lambda.apply_pauli(GateKind::RZ, program.observable.qubit);

    GradientVector grad(params.size(), 0.0);
    ComplexState mu = psi;
    for (auto it = program.gates.rbegin(); it != program.gates.rend(); ++it) {
        const Gate &g = *it;
        const double angle = resolve_angle(g, params, x);
        if (const auto *p = std::get_if<ParameterAngle>(&g.angle)) {
            // df/dtheta = Im <lambda| P |psi_after>, P commutes with the gate.
            mu = psi;
            mu.apply_pauli(g.kind, g.target);
            Complex inner{};
            const auto la = lambda.amplitudes();
            const auto ma = mu.amplitudes();
            for (std::size_t i = 0; i < la.size(); ++i)
                inner += std::conj(la[i]) * ma[i];
            grad[p->index] += inner.imag();
        }
        // Undo the gate on both sweeps: rotation inverse is the negated angle.
        psi.apply(g, -angle);
        lambda.apply(g, -angle);
    }
    return grad;
}

const char *to_string(GradientMethod method)
{
    return method == GradientMethod::Adjoint ? "adjoint" : "parameter_shift";
}

GradientMethod parse_gradient_method(const std::string &name)
{
    if (name == "adjoint")
        return GradientMethod::Adjoint;
    if (name == "parameter_shift")
        return GradientMethod::ParameterShift;
    fail(ErrorKind::Config, "unknown gradient method '" + name + "'");
}

GridJacobian grid_jacobian(const ReuploaderCircuit &circuit, std::span<const double> params,
                           std::span<const double> grid, GradientMethod method)
{
    GridJacobian jac;
    jac.values.resize(grid.size());
    jac.rows.resize(grid.size());
    parallel_for(grid.size(), [&](std::size_t m) {
        jac.values[m] = evaluate_circuit(circuit, params, grid[m]);
        jac.rows[m] = method == GradientMethod::Adjoint ? grad_f_adjoint(circuit, params, grid[m])
                                                        : grad_f(circuit, params, grid[m]);
    });
    return jac;
}

LossGradient grad_mse(const ReuploaderCircuit &circuit, std::span<const double> params,
                      std::span<const double> x_grid, std::span<const double> target_values,
                      GradientMethod method)
{
    if (x_grid.empty())
        fail(ErrorKind::Config, "grad_mse: empty grid");
    if (x_grid.size() != target_values.size())
        fail(ErrorKind::Config, "grad_mse: grid and targets differ in length");
    if (params.size() != circuit.parameter_count())
        fail(ErrorKind::Config, "grad_mse: parameter table size mismatch");

    const GridJacobian jac = grid_jacobian(circuit, params, x_grid, method);
    const double inv_m = 1.0 / static_cast<double>(x_grid.size());

    LossGradient out;
    out.gradient.assign(params.size(), 0.0);
    out.outputs = jac.values;
    for (std::size_t m = 0; m < x_grid.size(); ++m) {
        const double r = jac.values[m] - target_values[m];
        out.loss += r * r;
        for (std::size_t k = 0; k < params.size(); ++k)
            out.gradient[k] += r * jac.rows[m][k];
    }
    out.loss *= inv_m;
    for (double &g : out.gradient)
        g *= 2.0 * inv_m;
    if (!std::isfinite(out.loss))
        fail(ErrorKind::Numeric, "grad_mse: non-finite loss");
    return out;
}

} // namespace slab
