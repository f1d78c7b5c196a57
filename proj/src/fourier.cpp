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

#include "spectral_lab/fourier.hpp"

#include "spectral_lab/error.hpp"

#include <Eigen/Dense>

#include <bit>
#include <cmath>
#include <numbers>
#include <string>

namespace slab {

std::vector<double> sample_grid(std::size_t M)
{
    if (M < 2)
        fail(ErrorKind::Config, "sample_grid: M must be >= 2");
    std::vector<double> grid(M);
    for (std::size_t m = 0; m < M; ++m)
        grid[m] = 2.0 * std::numbers::pi * static_cast<double>(m) / static_cast<double>(M);
    return grid;
}

Complex FourierSnapshot::at(int omega) const
{
    if (omega < -omega_max || omega > omega_max)
        fail(ErrorKind::Config, "snapshot does not track omega = " + std::to_string(omega));
    return coefficients[static_cast<std::size_t>(omega + omega_max)];
}

Complex &FourierSnapshot::at(int omega)
{
    if (omega < -omega_max || omega > omega_max)
        fail(ErrorKind::Config, "snapshot does not track omega = " + std::to_string(omega));
    return coefficients[static_cast<std::size_t>(omega + omega_max)];
}

double FourierSnapshot::power() const
{
    double p = 0.0;
    for (const auto &c : coefficients)
        p += std::norm(c);
    return p;
}

namespace {

/// e^{-2 pi i j / M} for j = 0 .. M-1; integer frequencies index it exactly.
std::vector<Complex> twiddles(std::size_t M)
{
    std::vector<Complex> t(M);
    for (std::size_t j = 0; j < M; ++j) {
        const double a = 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(M);
        t[j] = {std::cos(a), -std::sin(a)};
    }
    return t;
}

void check_track(std::size_t M, int omega_max_track)
{
    if (omega_max_track < 0)
        fail(ErrorKind::Config, "omega_max_track must be >= 0");
    if (2 * static_cast<std::size_t>(omega_max_track) >= M)
        fail(ErrorKind::Config, "omega_max_track = " + std::to_string(omega_max_track) +
                                    " must stay below the Nyquist limit M/2 = " +
                                    std::to_string(M / 2) + " to avoid aliasing");
}

Complex dft_bin(std::span<const double> samples, const std::vector<Complex> &tw, int omega)
{
    const std::size_t M = samples.size();
    const std::size_t step =
        static_cast<std::size_t>(((omega % static_cast<long>(M)) + static_cast<long>(M)) %
                                 static_cast<long>(M));
    Complex acc{};
    std::size_t idx = 0;
    for (std::size_t m = 0; m < M; ++m) {
        acc += samples[m] * tw[idx];
        idx += step;
        if (idx >= M)
            idx -= M;
    }
    return acc / static_cast<double>(M);
}

} // namespace

FourierSnapshot dft_coefficients(std::span<const double> samples, int omega_max_track)
{
    const std::size_t M = samples.size();
    if (M < 2)
        fail(ErrorKind::Config, "dft_coefficients: need at least two samples");
    check_track(M, omega_max_track);
    const auto tw = twiddles(M);
    FourierSnapshot snap;
    snap.omega_max = omega_max_track;
    snap.grid_size = M;
    snap.coefficients.resize(2 * static_cast<std::size_t>(omega_max_track) + 1);
    for (int w = -omega_max_track; w <= omega_max_track; ++w)
        snap.at(w) = dft_bin(samples, tw, w);
    return snap;
}

std::size_t exact_grid_size(const ReuploaderCircuit &circuit)
{
    const auto need = static_cast<std::size_t>(std::ceil(2.0 * circuit.max_frequency())) + 1;
    return std::max<std::size_t>(16, std::bit_ceil(need));
}

CoefficientGradients coefficient_gradients(const ReuploaderCircuit &circuit,
                                           std::span<const double> params,
                                           std::span<const int> omegas, std::size_t grid_size,
                                           GradientMethod method)
{
    const auto grid = sample_grid(grid_size);
    for (int w : omegas)
        check_track(grid_size, std::abs(w));
    const GridJacobian jac = grid_jacobian(circuit, params, grid, method);
    const auto tw = twiddles(grid_size);
    const std::size_t P = params.size();

    CoefficientGradients out;
    out.omegas.assign(omegas.begin(), omegas.end());
    out.by_omega.assign(omegas.size(), std::vector<Complex>(P));
    std::vector<double> column(grid_size);
    for (std::size_t k = 0; k < P; ++k) {
        for (std::size_t m = 0; m < grid_size; ++m)
            column[m] = jac.rows[m][k];
        for (std::size_t i = 0; i < omegas.size(); ++i)
            out.by_omega[i][k] = dft_bin(column, tw, omegas[i]);
    }
    return out;
}

LossSpectrum loss_decomposition(const FourierSnapshot &model, const FourierSnapshot &target)
{
    if (model.omega_max != target.omega_max ||
        model.coefficients.size() != target.coefficients.size())
        fail(ErrorKind::Config, "loss_decomposition: snapshots track different frequencies");
    LossSpectrum out;
    for (int w = -model.omega_max; w <= model.omega_max; ++w) {
        const double l = std::norm(model.at(w) - target.at(w));
        out.omegas.push_back(w);
        out.per_omega.push_back(l);
        out.total += l;
    }
    return out;
}

double sinc(double x)
{
    if (x == 0.0)
        return 1.0;
    return std::sin(x) / x;
}

Complex atom_overlap(double omega, double omega_prime)
{
    const double d = omega - omega_prime;
    const double phase = std::numbers::pi * d;
    return std::polar(1.0, phase) * sinc(phase);
}

struct AtomProjector::Impl {
    Eigen::ColPivHouseholderQR<Eigen::MatrixXcd> qr;
};

AtomProjector::AtomProjector(std::span<const double> grid, std::span<const double> omegas)
    : omegas_(omegas.begin(), omegas.end()), impl_(std::make_unique<Impl>())
{
    if (grid.size() < omegas.size())
        fail(ErrorKind::Config, "least squares: fewer grid points than frequencies");
    Eigen::MatrixXcd atoms(grid.size(), omegas.size());
    for (std::size_t m = 0; m < grid.size(); ++m)
        for (std::size_t k = 0; k < omegas.size(); ++k)
            atoms(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(k)) =
                std::polar(1.0, omegas[k] * grid[m]);
    impl_->qr.compute(atoms);
    if (impl_->qr.rank() < static_cast<Eigen::Index>(omegas.size()))
        fail(ErrorKind::Numeric, "least squares: frequency atoms are linearly dependent on the grid");
}

AtomProjector::~AtomProjector() = default;
AtomProjector::AtomProjector(AtomProjector &&) noexcept = default;
AtomProjector &AtomProjector::operator=(AtomProjector &&) noexcept = default;

std::vector<Complex> AtomProjector::project(std::span<const double> samples) const
{
    Eigen::VectorXcd rhs(static_cast<Eigen::Index>(samples.size()));
    for (std::size_t m = 0; m < samples.size(); ++m)
        rhs(static_cast<Eigen::Index>(m)) = samples[m];
    const Eigen::VectorXcd sol = impl_->qr.solve(rhs);
    return {sol.data(), sol.data() + sol.size()};
}

SpectralCoefficients least_squares_coefficients(std::span<const double> samples,
                                                std::span<const double> grid,
                                                std::span<const double> omegas)
{
    if (samples.size() != grid.size())
        fail(ErrorKind::Config, "least squares: samples and grid differ in length");
    AtomProjector projector(grid, omegas);
    return {projector.omegas(), projector.project(samples)};
}

LossSpectrum nonint_loss_assignment(const SpectralCoefficients &model,
                                    const SpectralCoefficients &target)
{
    if (model.omegas != target.omegas || model.values.size() != model.omegas.size() ||
        target.values.size() != target.omegas.size())
        fail(ErrorKind::Config, "nonint_loss_assignment: coefficient supports differ");
    const std::size_t K = model.omegas.size();
    std::vector<Complex> diff(K);
    for (std::size_t i = 0; i < K; ++i)
        diff[i] = model.values[i] - target.values[i];

    LossSpectrum out;
    out.omegas = model.omegas;
    out.per_omega.resize(K);
    for (std::size_t i = 0; i < K; ++i) {
        Complex cross{};
        for (std::size_t j = 0; j < K; ++j)
            cross += std::conj(diff[j]) * atom_overlap(model.omegas[i], model.omegas[j]);
        out.per_omega[i] = (diff[i] * cross).real();
        out.total += out.per_omega[i];
    }
    return out;
}

namespace {

using Matrix = std::vector<Complex>;  // row-major d x d

Matrix multiply(const Matrix &a, const Matrix &b, std::size_t d)
{
    Matrix c(d * d, Complex{});
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t k = 0; k < d; ++k)
            for (std::size_t j = 0; j < d; ++j)
                c[i * d + j] += a[i * d + k] * b[k * d + j];
    return c;
}

Matrix adjoint(const Matrix &a, std::size_t d)
{
    Matrix c(d * d);
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j)
            c[j * d + i] = std::conj(a[i * d + j]);
    return c;
}

/// Matrix of a gate run, built column by column from basis states.
Matrix segment_matrix(std::span<const Gate> gates, int n, std::span<const double> params)
{
    const std::size_t d = std::size_t{1} << n;
    Matrix m(d * d);
    for (std::size_t col = 0; col < d; ++col) {
        ComplexState s = ComplexState::basis(n, col);
        for (const Gate &g : gates)
            s.apply(g, resolve_angle(g, params, 0.0));
        for (std::size_t row = 0; row < d; ++row)
            m[row * d + col] = s[row];
    }
    return m;
}

} // namespace

DecompositionResult coefficients_by_decomposition(const ReuploaderCircuit &circuit,
                                                  std::span<const double> params)
{
    const int n = circuit.n;
    const int L = circuit.L;
    if (n > 2 || L > 2)
        fail(ErrorKind::Size, "coefficients_by_decomposition: limited to n <= 2 and L <= 2");
    if (params.size() != circuit.parameter_count())
        fail(ErrorKind::Config, "coefficients_by_decomposition: parameter table size mismatch");
    for (double b : circuit.encoding.betas)
        if (b != std::floor(b))
            fail(ErrorKind::UnsupportedLattice, "coefficients_by_decomposition: integer betas only");

    // Split the program into trainable segments around the encoding layers.
    std::vector<std::vector<Gate>> segments(1);
    bool in_encoding = false;
    for (const Gate &g : circuit.program.gates) {
        const bool enc = std::holds_alternative<EncodingAngle>(g.angle);
        if (enc) {
            in_encoding = true;
            continue;
        }
        if (in_encoding) {
            segments.emplace_back();
            in_encoding = false;
        }
        segments.back().push_back(g);
    }
    if (segments.size() != static_cast<std::size_t>(L + 1))
        fail(ErrorKind::Config, "coefficients_by_decomposition: unexpected program layout");

    const std::size_t d = std::size_t{1} << n;
    // Hadamard transform diagonalises every RX encoding layer:
    // (x) RX(beta_q x) = V diag(e^{-i Lambda_j x}) V^dag.
    Matrix V(d * d);
    const double norm = 1.0 / std::sqrt(static_cast<double>(d));
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j)
            V[i * d + j] = (std::popcount(i & j) % 2 ? -norm : norm);
    const Matrix Vdag = adjoint(V, d);

    std::vector<int> twice_lambda(d);  // 2 * Lambda_j, integer for integer betas
    for (std::size_t j = 0; j < d; ++j) {
        int s = 0;
        for (int q = 0; q < n; ++q) {
            const bool one = (j >> (n - 1 - q)) & 1U;
            const int b = static_cast<int>(circuit.encoding.betas[q]);
            s += one ? -b : b;
        }
        twice_lambda[j] = s;
    }

    std::vector<Matrix> W(L + 1);
    for (int l = 0; l <= L; ++l) {
        Matrix block = segment_matrix(segments[l], n, params);
        if (l > 0)
            block = multiply(block, V, d);
        if (l < L)
            block = multiply(Vdag, block, d);
        W[l] = std::move(block);
    }

    // Path amplitudes A_j[i] for every multi-index j = (j_1 .. j_L).
    const std::size_t paths = static_cast<std::size_t>(std::pow(d, L));
    std::vector<std::vector<Complex>> amp(paths, std::vector<Complex>(d));
    std::vector<int> path_lambda(paths);
    for (std::size_t p = 0; p < paths; ++p) {
        std::vector<std::size_t> idx(L);
        std::size_t rest = p;
        for (int l = 0; l < L; ++l) {
            idx[l] = rest % d;
            rest /= d;
        }
        Complex weight = W[0][idx[0] * d + 0];
        int lam = twice_lambda[idx[0]];
        for (int l = 1; l < L; ++l) {
            weight *= W[l][idx[l] * d + idx[l - 1]];
            lam += twice_lambda[idx[l]];
        }
        for (std::size_t i = 0; i < d; ++i)
            amp[p][i] = W[L][i * d + idx[L - 1]] * weight;
        path_lambda[p] = lam;
    }

    const std::size_t obs_mask = std::size_t{1} << (n - 1 - circuit.observable().qubit);
    const int omega_max = static_cast<int>(std::lround(circuit.max_frequency()));
    DecompositionResult out;
    out.snapshot.omega_max = omega_max;
    out.snapshot.coefficients.assign(2 * static_cast<std::size_t>(omega_max) + 1, Complex{});
    for (std::size_t k = 0; k < paths; ++k) {
        for (std::size_t j = 0; j < paths; ++j) {
            Complex a{};
            for (std::size_t i = 0; i < d; ++i) {
                const double o = (i & obs_mask) ? -1.0 : 1.0;
                a += o * std::conj(amp[k][i]) * amp[j][i];
            }
            const int twice_omega = path_lambda[k] - path_lambda[j];
            const int omega = twice_omega / 2;
            out.snapshot.at(omega) += a;
            ++out.term_counts[omega];
        }
    }
    return out;
}

} // namespace slab
