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
#include "spectral_lab/gradients.hpp"
#include "spectral_lab/theory.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace slab {

struct CircuitConfig {
    int n = 3;
    int L = 4;
    EncodingKind encoding = EncodingKind::Constant;
    std::vector<double> betas;  ///< Custom only
    EntanglementSpec entanglement{EntanglerKind::Ladder, 0, 0};
    int observable_qubit = 1;

    bool operator==(const CircuitConfig &) const = default;
};

ReuploaderCircuit build_circuit(const CircuitConfig &config);

struct InitConfig {
    double sigma = 0.01;
    std::uint64_t seed = 0;

    bool operator==(const InitConfig &) const = default;
};

struct TargetConfig {
    std::vector<int> frequencies{1, 2, 3, 4, 5, 6};
    std::vector<double> amplitudes;  ///< empty means all ones
    std::uint64_t phase_seed = 0;

    bool operator==(const TargetConfig &) const = default;
};

struct TrainingOptions {
    double lr = 0.005;
    int epochs = 3000;
    int eval_every = 5;
    std::size_t grid_size = 256;
    int omega_max_track = 64;
    double early_stop_loss = 1e-5;
    GradientMethod method = GradientMethod::Adjoint;

    bool operator==(const TrainingOptions &) const = default;
};

/// Throws Config unless lr > 0, epochs >= 0, eval_every >= 1 and the tracked
/// band stays below the Nyquist limit of the grid.
void validate(const TrainingOptions &options);

enum class ExperimentKind { Redundancy, Train, Robustness, EntangleSweep, InitSweep, VerifyBounds };

const char *to_string(ExperimentKind kind);
ExperimentKind parse_experiment_kind(const std::string &name);

struct ExperimentConfig {
    ExperimentKind kind = ExperimentKind::Train;
    std::vector<std::uint64_t> seeds{0, 1, 2};
    std::vector<double> deltas;  ///< empty means 20 points on [0, pi]
    int n_directions = 100;
    std::vector<EntanglementSpec> layouts{{EntanglerKind::None, 0, 0},
                                          {EntanglerKind::Random, 1, 0},
                                          {EntanglerKind::Ladder, 0, 0},
                                          {EntanglerKind::AllToAll, 0, 0}};
    std::vector<double> sigma_list{0.01, 0.1, 1.0, 10.0};
    bool train_each_sigma = false;
    int instances = 100;
    double bound_sigma = 0.5;
    double threshold = 0.9;
    int hold = 2;

    bool operator==(const ExperimentConfig &) const = default;
};

struct RunConfig {
    std::string profile = "desk";
    CircuitConfig circuit;
    InitConfig init;
    TargetConfig target;
    TrainingOptions training;
    ExperimentConfig experiment;
    std::string output_directory = "out";

    bool operator==(const RunConfig &) const = default;
};

/// n=3, L=4, constant, ladder, Z on qubit 1, targets 1..6, M=256, lr 0.005, 3 seeds.
RunConfig desk_profile();
/// n=5, L=20, constant, ladder, targets 5..50 step 5, M=2048, lr 0.0005, 10 seeds.
RunConfig full_profile();
/// "desk" or "full"; anything else is a configuration error.
RunConfig profile_by_name(const std::string &name);

/// 20 values linearly spaced on [0, pi].
std::vector<double> default_deltas();

struct TargetFunction {
    std::vector<int> frequencies;
    std::vector<double> amplitudes;
    std::vector<double> phases;
    double normalizer = 1.0;

    /// (1/normalizer) sum A sin(omega x + phi).
    double operator()(double x) const;
    std::vector<double> sample(std::span<const double> grid) const;
    /// |c_omega(h)| = A / (2 normalizer) for the i-th frequency.
    double coefficient_magnitude(std::size_t i) const;
};

/// Phases i.i.d. uniform on [0, 2pi) from phase_seed; amplitudes default to 1.
TargetFunction make_target(std::span<const int> frequencies, std::span<const double> amplitudes,
                           std::uint64_t phase_seed);
TargetFunction make_target(const TargetConfig &config);

class AdamOptimizer {
public:
    explicit AdamOptimizer(std::size_t size, double lr, double beta1 = 0.9, double beta2 = 0.999,
                           double epsilon = 1e-8);

    void step(std::span<double> params, std::span<const double> gradient);
    long steps() const { return t_; }

private:
    double lr_, beta1_, beta2_, epsilon_;
    long t_ = 0;
    std::vector<double> m_, v_;
};

enum class TrainingStatus { Completed, EarlyStopped, Aborted };

const char *to_string(TrainingStatus status);

struct TrainingTrace {
    int eval_every = 1;
    std::size_t grid_size = 0;
    std::vector<int> eval_epochs;
    std::vector<double> losses;
    std::vector<FourierSnapshot> snapshots;
    FourierSnapshot target_snapshot;
    std::vector<int> target_frequencies;
    std::vector<std::vector<double>> normalized;  ///< [eval][target index] = |c_omega(f)| / |c_omega(h)|
    ParameterTable final_params;
    TrainingStatus status = TrainingStatus::Completed;
    std::string message;
};

/// Full-batch Adam on the grid MSE. Evaluations happen at every multiple of
/// eval_every; early stopping is checked at evaluations only. A non-finite
/// loss aborts and returns the trace so far.
TrainingTrace train(const ReuploaderCircuit &circuit, std::span<const double> params0,
                    const TargetFunction &target, const TrainingOptions &options);

/// First evaluation epoch whose normalized magnitude at omega is >= threshold
/// for `hold` consecutive evaluations. A streak still running when an
/// early-stopped trace ends also counts.
std::optional<int> epochs_to_threshold(const TrainingTrace &trace, int omega, double threshold,
                                       int hold = 2);

/// Everything needed for one seeded run of a configuration.
struct PreparedRun {
    ReuploaderCircuit circuit;
    ParameterTable params;
    TargetFunction target;
};

/// Parameters, target phases and random layouts each draw from their own
/// stream: derive_seed(init.seed | target.phase_seed | entanglement.seed, seed, stream).
PreparedRun prepare_run(const RunConfig &config, std::uint64_t seed);

struct TrainResult {
    std::vector<std::uint64_t> seeds;
    std::vector<PreparedRun> runs;
    std::vector<TrainingTrace> traces;
};

/// One training run per experiment seed, parallel across seeds.
TrainResult train_experiment(const RunConfig &config);

struct PerturbationReport {
    std::vector<double> deltas;
    std::vector<int> omegas;
    std::vector<double> base_magnitudes;           ///< |c_omega(theta*)|
    std::vector<std::vector<double>> normalized;   ///< [delta][omega]; NaN where undefined
    std::vector<bool> defined;                     ///< per omega
    int samples_per_delta = 0;
};

/// Gaussian draws normalized to unit Euclidean norm; direction d uses
/// derive_seed(seed, d).
std::vector<std::vector<double>> unit_directions(std::size_t dimension, int count, std::uint64_t seed);

/// Mean |c_omega(theta* + delta u)| / |c_omega(theta*)| over n_directions
/// random unit directions u (shared across deltas).
PerturbationReport perturb_report(const ReuploaderCircuit &circuit, std::span<const double> params_star,
                                  std::span<const int> omegas, std::span<const double> deltas,
                                  int n_directions, std::uint64_t seed, std::size_t grid_size);

struct RobustnessResult {
    std::vector<std::uint64_t> seeds;
    std::vector<TrainingTrace> traces;
    std::vector<PerturbationReport> reports;
    PerturbationReport mean;  ///< averaged over seeds (each seed draws its own target phases)
};

RobustnessResult robustness_experiment(const RunConfig &config);

struct ConvergenceRow {
    std::string layout;
    double cnots_per_layer = 0.0;
    std::uint64_t seed = 0;
    int omega = 0;
    std::optional<int> epochs;  ///< empty means did not converge
};

struct ConvergenceSummary {
    std::string layout;
    double cnots_per_layer = 0.0;
    int omega = 0;
    int runs = 0;
    int did_not_converge = 0;
    double mean_epochs = 0.0;  ///< non-converged runs counted at the epoch budget
};

struct ConvergenceTable {
    int eval_every = 1;
    int epoch_budget = 0;
    std::vector<ConvergenceRow> rows;
    std::vector<ConvergenceSummary> summary;

    const ConvergenceSummary &find(const std::string &layout, int omega) const;
};

inline constexpr std::size_t kMinRandomLayoutSeeds = 20;

/// One training run per (layout, seed). Random layouts are topped up with
/// consecutive seeds past the largest given one until kMinRandomLayoutSeeds.
ConvergenceTable entanglement_sweep(const RunConfig &base, std::span<const EntanglementSpec> layouts,
                                    std::span<const std::uint64_t> seeds);

struct InitSweepRow {
    double sigma = 0.0;
    double variance = 0.0;
    int omega = 0;
    double mean_power = 0.0;      ///< mean over seeds of |c_omega|^2 at epoch 0
    double mean_magnitude = 0.0;  ///< mean over seeds of |c_omega|
    /// Training results for target frequencies, when requested.
    std::optional<double> mean_epochs;
    int did_not_converge = 0;
};

struct InitSweepTable {
    std::vector<InitSweepRow> rows;
    const InitSweepRow &find(double sigma, int omega) const;
};

/// Tracks omega = 0 .. min(circuit band, omega_max_track).
InitSweepTable init_sweep(const RunConfig &base, std::span<const double> sigma_list,
                          std::span<const std::uint64_t> seeds, bool train_each = false);

struct BoundsExperiment {
    int instances = 0;
    std::vector<int> instance_of_row;
    BoundReport report;
};

/// Theorem 1 check on random circuits: n <= 3, L <= 3, the four standard
/// encodings, theta ~ N(0, bound_sigma^2), random band-limited targets.
BoundsExperiment verify_bounds(const RunConfig &config);

} // namespace slab
