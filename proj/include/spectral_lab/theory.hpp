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
#include "spectral_lab/fourier.hpp"
#include "spectral_lab/spectrum.hpp"

#include <cstdint>
#include <limits>
#include <map>
#include <vector>

namespace slab {

struct BoundRow {
    std::size_t parameter = 0;
    double omega = 0.0;
    double lhs = 0.0;
    double rhs = 0.0;
    double slack = 0.0;  ///< rhs - lhs
};

struct BoundReport {
    std::vector<BoundRow> rows;
    std::size_t violations = 0;
    double tolerance = 1e-9;
    double min_slack = std::numeric_limits<double>::infinity();

    void add(std::size_t parameter, double omega, double lhs, double rhs);
    /// Appends another report's rows and counts.
    void merge(const BoundReport &other);
};

/// Sum of absolute eigenvalues: 2^n for a single-qubit Pauli Z.
double trace_norm(const Observable &obs, int n);

/// Inputs for the integer-spectrum bound on frequencies omega >= 0.
struct IntegerBoundInputs {
    FourierSnapshot model;
    FourierSnapshot target;
    CoefficientGradients gradients;  ///< omegas 0 .. K
    FrequencySpectrum spectrum;
    double trace_norm = 2.0;
};

/// |dL(omega)/dtheta_k| = |2 Re(conj(c_D) dc/dtheta_k)| against
/// 4 R(omega) ||O||_tr |c_D|.
BoundReport thm1_from_coefficients(const IntegerBoundInputs &in, double tolerance = 1e-9);

/// Circuit wrapper: model and gradients on target.grid_size points, rows for
/// omega = 0 .. circuit maximum frequency. Integer betas only.
BoundReport thm1_report(const ReuploaderCircuit &circuit, std::span<const double> params,
                        const FourierSnapshot &target, double tolerance = 1e-9);

/// Inputs for the sinc-coupled bound on an arbitrary real spectrum.
/// Coefficients and gradients cover the full support (both signs).
struct SpectralBoundInputs {
    std::vector<double> omegas;
    std::vector<Complex> model;
    std::vector<Complex> target;
    std::vector<std::vector<Complex>> gradients;  ///< [omega index][parameter]
    std::vector<double> redundancy;
    double trace_norm = 2.0;
};

/// lhs: derivative of L(omega) = Re(c_D(omega) sum conj(c_D(omega')) e^{i pi d} sinc(pi d));
/// rhs: 2 ||O||_tr sum |sinc(pi d)| (|c_D(omega')| R(omega) + |c_D(omega)| R(omega')).
/// Rows for omega >= 0.
BoundReport thm2_from_coefficients(const SpectralBoundInputs &in, double tolerance = 1e-9);

/// Circuit wrapper: coefficients and their gradients by least squares on an
/// M-point grid over the spectrum's support. `target` must use the same support.
BoundReport thm2_report(const ReuploaderCircuit &circuit, std::span<const double> params,
                        const SpectralCoefficients &target, const FrequencySpectrum &spectrum,
                        std::size_t grid_size, double tolerance = 1e-9);

/// Right-hand side of the sinc-coupled bound for one frequency index.
double thm2_rhs(const SpectralBoundInputs &in, std::size_t index);

/// E|X|^r for X ~ N(0, sigma^2): sigma^r 2^{r/2} Gamma((r+1)/2) / sqrt(pi).
double gaussian_abs_moment(int r, double sigma);

struct MomentTable {
    double sigma = 1.0;
    std::map<int, double> entries;
};

MomentTable moment_table(int max_r, double sigma);

enum class Sampling { Plain, Stratified };

/// Monte Carlo estimate of E|X|^r. Stratified draws one point uniformly in each
/// of `draws` equal-probability strata of the normal distribution.
double monte_carlo_abs_moment(int r, double sigma, std::size_t draws, std::uint64_t seed,
                              Sampling sampling = Sampling::Plain);

/// Per-frequency statistics of dc_omega/dtheta_k with theta ~ N(0, sigma^2 I).
struct SmallAngleStats {
    double sigma = 0.0;
    std::size_t samples = 0;
    bool insufficient_samples = false;  ///< fewer than 30 samples
    std::vector<int> omegas;             ///< 0 .. omega_max
    std::vector<double> mean_abs;        ///< mean over samples and k of |dc/dtheta_k|
    std::vector<double> rms;             ///< sqrt of mean |dc/dtheta_k|^2
    std::vector<double> total;           ///< mean over samples of G(omega) = sum_k |dc/dtheta_k|
};

SmallAngleStats small_angle_grad_stats(const ReuploaderCircuit &circuit, double sigma,
                                       std::size_t n_samples, std::uint64_t seed,
                                       std::size_t grid_size = 0);

/// Log-log slope of mean |dc_omega/dtheta| against sigma, per frequency.
/// NaN where a mean vanishes.
struct SmallAngleSlopes {
    std::vector<int> omegas;
    std::vector<double> slopes;
    std::vector<SmallAngleStats> stats;
};

SmallAngleSlopes small_angle_slopes(const ReuploaderCircuit &circuit,
                                    std::span<const double> sigmas, std::size_t n_samples,
                                    std::uint64_t seed, std::size_t grid_size = 0);

/// Normalized RMS deviation bound (sigma_a / (kappa a_bar)) sqrt((1 + (R - 1) rho) / R).
double robustness_bound(double sigma_a, double a_bar, double kappa, double rho, double R);

} // namespace slab
