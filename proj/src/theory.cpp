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

#include "spectral_lab/theory.hpp"

#include "spectral_lab/error.hpp"
#include "spectral_lab/gradients.hpp"
#include "spectral_lab/rng.hpp"
#include "spectral_lab/stats.hpp"

#include <boost/math/distributions/normal.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace slab {

void BoundReport::add(std::size_t parameter, double omega, double lhs, double rhs)
{
    const double slack = rhs - lhs;
    rows.push_back({parameter, omega, lhs, rhs, slack});
    if (slack < -tolerance)
        ++violations;
    min_slack = std::min(min_slack, slack);
}

void BoundReport::merge(const BoundReport &other)
{
    rows.insert(rows.end(), other.rows.begin(), other.rows.end());
    violations += other.violations;
    min_slack = std::min(min_slack, other.min_slack);
}

double trace_norm(const Observable &obs, int n)
{
    if (n < 1 || obs.qubit < 0 || obs.qubit >= n)
        fail(ErrorKind::Config, "trace_norm: observable qubit outside the register");
    return std::ldexp(1.0, n);
}

BoundReport thm1_from_coefficients(const IntegerBoundInputs &in, double tolerance)
{
    BoundReport report;
    report.tolerance = tolerance;
    for (std::size_t i = 0; i < in.gradients.omegas.size(); ++i) {
        const int omega = in.gradients.omegas[i];
        if (omega < 0)
            continue;
        const Complex cd = in.model.at(omega) - in.target.at(omega);
        const double rhs = 4.0 * in.spectrum.at_double(omega) * in.trace_norm * std::abs(cd);
        const auto &grad = in.gradients.by_omega[i];
        for (std::size_t k = 0; k < grad.size(); ++k) {
            const double lhs = std::abs(2.0 * (std::conj(cd) * grad[k]).real());
            report.add(k, omega, lhs, rhs);
        }
    }
    return report;
}

namespace {

void require_integer_betas(const ReuploaderCircuit &circuit)
{
    for (double b : circuit.encoding.betas)
        if (b != std::floor(b))
            fail(ErrorKind::UnsupportedLattice,
                 "integer-spectrum bound needs integer betas; use thm2_report for general spectra");
}

} // namespace

BoundReport thm1_report(const ReuploaderCircuit &circuit, std::span<const double> params,
                        const FourierSnapshot &target, double tolerance)
{
    require_integer_betas(circuit);
    const int omega_max = static_cast<int>(std::lround(circuit.max_frequency()));
    if (target.omega_max < omega_max)
        fail(ErrorKind::Config, "thm1_report: target snapshot must track the circuit's full band (" +
                                    std::to_string(omega_max) + ")");
    const std::size_t M = target.grid_size;
    const auto grid = sample_grid(M);

    IntegerBoundInputs in;
    in.model = dft_coefficients(evaluate_on_grid(circuit, params, grid), target.omega_max);
    in.target = target;
    std::vector<int> omegas(static_cast<std::size_t>(omega_max) + 1);
    for (int w = 0; w <= omega_max; ++w)
        omegas[static_cast<std::size_t>(w)] = w;
    in.gradients = coefficient_gradients(circuit, params, omegas, M);
    in.spectrum = redundancy_profile(circuit.encoding, circuit.L);
    in.trace_norm = trace_norm(circuit.observable(), circuit.n);
    return thm1_from_coefficients(in, tolerance);
}

double thm2_rhs(const SpectralBoundInputs &in, std::size_t i)
{
    const std::size_t K = in.omegas.size();
    const double cd_i = std::abs(in.model[i] - in.target[i]);
    double acc = 0.0;
    for (std::size_t j = 0; j < K; ++j) {
        const double w = std::abs(sinc(std::numbers::pi * (in.omegas[i] - in.omegas[j])));
        const double cd_j = std::abs(in.model[j] - in.target[j]);
        acc += w * (cd_j * in.redundancy[i] + cd_i * in.redundancy[j]);
    }
    return 2.0 * in.trace_norm * acc;
}

BoundReport thm2_from_coefficients(const SpectralBoundInputs &in, double tolerance)
{
    const std::size_t K = in.omegas.size();
    if (in.model.size() != K || in.target.size() != K || in.gradients.size() != K ||
        in.redundancy.size() != K)
        fail(ErrorKind::Config, "thm2: inputs disagree on the frequency support");
    const std::size_t P = K ? in.gradients.front().size() : 0;
    std::vector<Complex> cd(K);
    for (std::size_t i = 0; i < K; ++i)
        cd[i] = in.model[i] - in.target[i];

    BoundReport report;
    report.tolerance = tolerance;
    for (std::size_t i = 0; i < K; ++i) {
        if (in.omegas[i] < 0.0)
            continue;
        Complex cross{};
        for (std::size_t j = 0; j < K; ++j)
            cross += std::conj(cd[j]) * atom_overlap(in.omegas[i], in.omegas[j]);
        const double rhs = thm2_rhs(in, i);
        for (std::size_t k = 0; k < P; ++k) {
            Complex dcross{};
            for (std::size_t j = 0; j < K; ++j)
                dcross += std::conj(in.gradients[j][k]) * atom_overlap(in.omegas[i], in.omegas[j]);
            const double lhs = std::abs((in.gradients[i][k] * cross + cd[i] * dcross).real());
            report.add(k, in.omegas[i], lhs, rhs);
        }
    }
    return report;
}

BoundReport thm2_report(const ReuploaderCircuit &circuit, std::span<const double> params,
                        const SpectralCoefficients &target, const FrequencySpectrum &spectrum,
                        std::size_t grid_size, double tolerance)
{
    const auto support = spectrum.frequencies();
    if (target.omegas != support || target.values.size() != support.size())
        fail(ErrorKind::Config, "thm2_report: target coefficients must cover the spectrum support");
    const auto grid = sample_grid(grid_size);
    const AtomProjector projector(grid, support);
    const GridJacobian jac = grid_jacobian(circuit, params, grid);

    SpectralBoundInputs in;
    in.omegas = support;
    in.model = projector.project(jac.values);
    in.target = target.values;
    in.trace_norm = trace_norm(circuit.observable(), circuit.n);
    for (double w : support)
        in.redundancy.push_back(spectrum.at_double(w));

    const std::size_t P = params.size();
    in.gradients.assign(support.size(), std::vector<Complex>(P));
    std::vector<double> column(grid_size);
    for (std::size_t k = 0; k < P; ++k) {
        for (std::size_t m = 0; m < grid_size; ++m)
            column[m] = jac.rows[m][k];
        const auto proj = projector.project(column);
        for (std::size_t i = 0; i < support.size(); ++i)
            in.gradients[i][k] = proj[i];
    }
    return thm2_from_coefficients(in, tolerance);
}

double gaussian_abs_moment(int r, double sigma)
{
    if (r < 0)
        fail(ErrorKind::Domain, "gaussian_abs_moment: r must be >= 0");
    if (!(sigma >= 0.0) || !std::isfinite(sigma))
        fail(ErrorKind::Domain, "gaussian_abs_moment: sigma must be finite and >= 0");
    if (r == 0)
        return 1.0;
    if (sigma == 0.0)
        return 0.0;
    const double rd = static_cast<double>(r);
    return std::exp(rd * std::log(sigma) + 0.5 * rd * std::numbers::ln2 +
                    std::lgamma(0.5 * (rd + 1.0)) - 0.5 * std::log(std::numbers::pi));
}

MomentTable moment_table(int max_r, double sigma)
{
    MomentTable table;
    table.sigma = sigma;
    for (int r = 0; r <= max_r; ++r)
        table.entries[r] = gaussian_abs_moment(r, sigma);
    return table;
}

double monte_carlo_abs_moment(int r, double sigma, std::size_t draws, std::uint64_t seed,
                              Sampling sampling)
{
    if (draws == 0)
        fail(ErrorKind::Config, "monte_carlo_abs_moment: need at least one draw");
    Rng rng(seed);
    const boost::math::normal_distribution<double> standard;
    double acc = 0.0;
    for (std::size_t i = 0; i < draws; ++i) {
        double z;
        if (sampling == Sampling::Plain) {
            z = rng.normal();
        } else {
            double u = (static_cast<double>(i) + rng.uniform()) / static_cast<double>(draws);
            u = std::clamp(u, 1e-300, 1.0 - 1e-16);
            z = boost::math::quantile(standard, u);
        }
        acc += std::pow(std::abs(sigma * z), r);
    }
    return acc / static_cast<double>(draws);
}

SmallAngleStats small_angle_grad_stats(const ReuploaderCircuit &circuit, double sigma,
                                       std::size_t n_samples, std::uint64_t seed,
                                       std::size_t grid_size)
{
    if (!(sigma > 0.0) || sigma > 0.3)
        fail(ErrorKind::Domain, "small_angle_grad_stats: sigma must lie in (0, 0.3]");
    if (n_samples == 0)
        fail(ErrorKind::Config, "small_angle_grad_stats: need at least one sample");
    const std::size_t M = grid_size ? grid_size : exact_grid_size(circuit);
    const int omega_max = static_cast<int>(std::floor(circuit.max_frequency()));

    SmallAngleStats stats;
    stats.sigma = sigma;
    stats.samples = n_samples;
    stats.insufficient_samples = n_samples < 30;
    for (int w = 0; w <= omega_max; ++w)
        stats.omegas.push_back(w);
    const std::size_t K = stats.omegas.size();
    stats.mean_abs.assign(K, 0.0);
    stats.rms.assign(K, 0.0);
    stats.total.assign(K, 0.0);

    const double P = static_cast<double>(circuit.parameter_count());
    for (std::size_t s = 0; s < n_samples; ++s) {
        const auto params = init_params(circuit, sigma, derive_seed(seed, s));
        const auto grads =
            coefficient_gradients(circuit, params, stats.omegas, M, GradientMethod::Adjoint);
        for (std::size_t i = 0; i < K; ++i) {
            double sum_abs = 0.0, sum_sq = 0.0;
            for (const Complex &g : grads.by_omega[i]) {
                sum_abs += std::abs(g);
                sum_sq += std::norm(g);
            }
            stats.total[i] += sum_abs;
            stats.mean_abs[i] += sum_abs / P;
            stats.rms[i] += sum_sq / P;
        }
    }
    const double ns = static_cast<double>(n_samples);
    for (std::size_t i = 0; i < K; ++i) {
        stats.total[i] /= ns;
        stats.mean_abs[i] /= ns;
        stats.rms[i] = std::sqrt(stats.rms[i] / ns);
    }
    return stats;
}

SmallAngleSlopes small_angle_slopes(const ReuploaderCircuit &circuit,
                                    std::span<const double> sigmas, std::size_t n_samples,
                                    std::uint64_t seed, std::size_t grid_size)
{
    if (sigmas.size() < 2)
        fail(ErrorKind::Config, "small_angle_slopes: need at least two sigma values");
    SmallAngleSlopes out;
    for (double s : sigmas)
        out.stats.push_back(small_angle_grad_stats(circuit, s, n_samples, seed, grid_size));
    out.omegas = out.stats.front().omegas;
    std::vector<double> lx;
    for (double s : sigmas)
        lx.push_back(std::log(s));
    for (std::size_t i = 0; i < out.omegas.size(); ++i) {
        std::vector<double> ly;
        bool defined = true;
        for (const auto &st : out.stats) {
            if (!(st.mean_abs[i] > 0.0)) {
                defined = false;
                break;
            }
            ly.push_back(std::log(st.mean_abs[i]));
        }
        out.slopes.push_back(defined ? linear_slope(lx, ly)
                                     : std::numeric_limits<double>::quiet_NaN());
    }
    return out;
}

double robustness_bound(double sigma_a, double a_bar, double kappa, double rho, double R)
{
    if (!(sigma_a >= 0.0) || !std::isfinite(sigma_a))
        fail(ErrorKind::Domain, "robustness_bound: sigma_a must be finite and >= 0");
    if (!(a_bar > 0.0) || !std::isfinite(a_bar))
        fail(ErrorKind::Domain, "robustness_bound: a_bar must be > 0");
    if (!(kappa > 0.0 && kappa <= 1.0))
        fail(ErrorKind::Domain, "robustness_bound: kappa must lie in (0, 1]");
    if (!(rho >= 0.0 && rho <= 1.0))
        fail(ErrorKind::Domain, "robustness_bound: rho must lie in [0, 1]");
    if (!(R >= 1.0) || R != std::floor(R) || !std::isfinite(R))
        fail(ErrorKind::Domain, "robustness_bound: R must be an integer >= 1");
    return sigma_a / (kappa * a_bar) * std::sqrt((1.0 + (R - 1.0) * rho) / R);
}

} // namespace slab
