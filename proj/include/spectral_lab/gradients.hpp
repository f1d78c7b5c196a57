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

#include <functional>
#include <span>
#include <string>
#include <vector>

namespace slab {

using GradientVector = std::vector<double>;

/// Parameter-shift rule: (f(theta_k + pi/2) - f(theta_k - pi/2)) / 2.
/// Exact for exp(-i theta P / 2) rotations with each parameter used once.
GradientVector grad_f(const ReuploaderCircuit &circuit, std::span<const double> params, double x);

/// Central differences with step h, 0 < h < 0.1.
GradientVector grad_f_fd(const ReuploaderCircuit &circuit, std::span<const double> params, double x,
                         double h);

/// Reverse-mode (adjoint) derivative: one forward and one backward sweep.
GradientVector grad_f_adjoint(const ReuploaderCircuit &circuit, std::span<const double> params,
                              double x);

/// Central-difference gradient of an arbitrary scalar function.
GradientVector central_difference(const std::function<double(std::span<const double>)> &fn,
                                  std::span<const double> params, double h);

enum class GradientMethod { ParameterShift, Adjoint };

const char *to_string(GradientMethod method);
GradientMethod parse_gradient_method(const std::string &name);

/// Row m holds df(x_m)/dtheta; `values[m]` holds f(x_m).
struct GridJacobian {
    std::vector<double> values;
    std::vector<GradientVector> rows;
};

GridJacobian grid_jacobian(const ReuploaderCircuit &circuit, std::span<const double> params,
                           std::span<const double> grid,
                           GradientMethod method = GradientMethod::ParameterShift);

struct LossGradient {
    double loss = 0.0;
    GradientVector gradient;
    std::vector<double> outputs;  ///< f(x_m) on the grid
};

/// Full-batch grid MSE (1/M) sum (f - h)^2 and its gradient
/// (2/M) sum (f - h) grad f, reduced left to right over the grid.
LossGradient grad_mse(const ReuploaderCircuit &circuit, std::span<const double> params,
                      std::span<const double> x_grid, std::span<const double> target_values,
                      GradientMethod method = GradientMethod::ParameterShift);

} // namespace slab
