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
#include "spectral_lab/gradients.hpp"

#include <complex>
#include <cstddef>
#include <map>
#include <memory>
#include <span>
#include <vector>

namespace slab {

/// x_m = 2 pi m / M, m = 0 .. M-1.
std::vector<double> sample_grid(std::size_t M);

/// Integer-frequency coefficients c_omega for |omega| <= omega_max of a function
/// sampled on the uniform grid, with f(x) = sum_omega c_omega e^{i omega x}.
struct FourierSnapshot {
    int omega_max = 0;
    std::size_t grid_size = 0;
    std::vector<Complex> coefficients;  ///< index omega + omega_max

    Complex at(int omega) const;
    Complex &at(int omega);
    /// Sum of |c_omega|^2 over the tracked band.
    double power() const;

    bool operator==(const FourierSnapshot &) const = default;
};

/// c_omega = (1/M) sum_m samples[m] e^{-i omega x_m}. Refuses omega_max >= M/2
/// because those bins alias (Nyquist).
FourierSnapshot dft_coefficients(std::span<const double> samples, int omega_max_track);

/// Derivatives dc_omega/dtheta_k for a set of integer frequencies.
struct CoefficientGradients {
    std::vector<int> omegas;
    std::vector<std::vector<Complex>> by_omega;  ///< [omega index][parameter]
};

/// dc_omega/dtheta_k as the DFT of the derivative samples on an M-point grid.
CoefficientGradients coefficient_gradients(const ReuploaderCircuit &circuit,
                                           std::span<const double> params,
                                           std::span<const int> omegas, std::size_t grid_size,
                                           GradientMethod method = GradientMethod::ParameterShift);

/// Smallest power-of-two grid that resolves the circuit's full spectrum
/// without aliasing (M > 2 omega_max), at least 16 points.
std::size_t exact_grid_size(const ReuploaderCircuit &circuit);

/// Per-frequency loss L(omega) and its total.
struct LossSpectrum {
    std::vector<double> omegas;
    std::vector<double> per_omega;
    double total = 0.0;
};

/// Integer case: L(omega) = |c_omega(model) - c_omega(target)|^2.
LossSpectrum loss_decomposition(const FourierSnapshot &model, const FourierSnapshot &target);

/// Coefficients on an arbitrary real frequency set.
struct SpectralCoefficients {
    std::vector<double> omegas;
    std::vector<Complex> values;
};

/// sin(x)/x with sinc(0) = 1.
double sinc(double x);

/// Overlap (1/2pi) int_0^{2pi} e^{i (omega - omega') x} dx = e^{i pi d} sinc(pi d).
Complex atom_overlap(double omega, double omega_prime);

/// Least-squares fit of e^{i omega x} atoms to samples on a grid.
class AtomProjector {
public:
    AtomProjector(std::span<const double> grid, std::span<const double> omegas);
    ~AtomProjector();
    AtomProjector(AtomProjector &&) noexcept;
    AtomProjector &operator=(AtomProjector &&) noexcept;

    std::vector<Complex> project(std::span<const double> samples) const;
    const std::vector<double> &omegas() const { return omegas_; }

private:
    struct Impl;
    std::vector<double> omegas_;
    std::unique_ptr<Impl> impl_;
};

SpectralCoefficients least_squares_coefficients(std::span<const double> samples,
                                                std::span<const double> grid,
                                                std::span<const double> omegas);

/// General-spectrum assignment
/// L(omega) = Re(c_D(omega) sum_{omega'} conj(c_D(omega')) e^{i pi d} sinc(pi d)),
/// d = omega - omega', with c_D = model - target on a shared frequency list.
LossSpectrum nonint_loss_assignment(const SpectralCoefficients &model,
                                    const SpectralCoefficients &target);

/// Coefficients assembled from the eigen-decomposition of the encoding layers:
/// c_omega = sum over (k, j) with Lambda_k - Lambda_j = omega of a_{k,j}.
struct DecompositionResult {
    FourierSnapshot snapshot;
    std::map<int, std::size_t> term_counts;  ///< number of a_{k,j} summed per omega
};

/// Oracle for tiny circuits (n <= 2, L <= 2, integer betas).
DecompositionResult coefficients_by_decomposition(const ReuploaderCircuit &circuit,
                                                  std::span<const double> params);

} // namespace slab
