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

#include "spectral_lab/experiments.hpp"

#include "spectral_lab/error.hpp"
#include "spectral_lab/parallel.hpp"
#include "spectral_lab/rng.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>
#include <set>

namespace slab {

ReuploaderCircuit build_circuit(const CircuitConfig &config)
{
    const auto encoding = EncodingScheme::make(config.encoding, config.n, config.betas);
    return build_circuit(config.n, config.L, encoding, config.entanglement,
                         Observable{config.observable_qubit});
}

void validate(const TrainingOptions &o)
{
    if (!(o.lr > 0.0) || !std::isfinite(o.lr))
        fail(ErrorKind::Config, "training.lr must be a positive number");
    if (o.epochs < 0)
        fail(ErrorKind::Config, "training.epochs must be >= 0");
    if (o.eval_every < 1)
        fail(ErrorKind::Config, "training.eval_every must be >= 1");
    if (o.grid_size < 2)
        fail(ErrorKind::Config, "training.grid_size must be >= 2");
    if (o.omega_max_track < 0 || 2 * static_cast<std::size_t>(o.omega_max_track) >= o.grid_size)
        fail(ErrorKind::Config, "training.omega_max_track must stay below the Nyquist limit grid_size/2");
    if (!(o.early_stop_loss >= 0.0))
        fail(ErrorKind::Config, "training.early_stop_loss must be >= 0");
}

const char *to_string(ExperimentKind kind)
{
    switch (kind) {
    case ExperimentKind::Redundancy: return "redundancy";
    case ExperimentKind::Train: return "train";
    case ExperimentKind::Robustness: return "robustness";
    case ExperimentKind::EntangleSweep: return "entangle-sweep";
    case ExperimentKind::InitSweep: return "init-sweep";
    case ExperimentKind::VerifyBounds: return "verify-bounds";
    }
    return "?";
}

ExperimentKind parse_experiment_kind(const std::string &name)
{
    for (auto k : {ExperimentKind::Redundancy, ExperimentKind::Train, ExperimentKind::Robustness,
                   ExperimentKind::EntangleSweep, ExperimentKind::InitSweep, ExperimentKind::VerifyBounds})
        if (name == to_string(k))
            return k;
    fail(ErrorKind::Config, "unknown experiment kind '" + name + "'");
}

RunConfig desk_profile()
{
    return RunConfig{};
}

RunConfig full_profile()
{
    RunConfig c;
    c.profile = "full";
    c.circuit.n = 5;
    c.circuit.L = 20;
    c.target.frequencies = {5, 10, 15, 20, 25, 30, 35, 40, 45, 50};
    c.training.lr = 0.0005;
    c.training.grid_size = 2048;
    c.training.eval_every = 5;
    c.training.omega_max_track = 64;
    c.experiment.seeds = {0, 1, 2, 3, 4, 5, 6, 7, 8, 9};
    return c;
}

RunConfig profile_by_name(const std::string &name)
{
    if (name == "desk")
        return desk_profile();
    if (name == "full")
        return full_profile();
    fail(ErrorKind::Config, "unknown profile '" + name + "' (expected desk or full)");
}

std::vector<double> default_deltas()
{
    std::vector<double> d(20);
    for (std::size_t i = 0; i < d.size(); ++i)
        d[i] = std::numbers::pi * static_cast<double>(i) / 19.0;
    return d;
}

double TargetFunction::operator()(double x) const
{
    double v = 0.0;
    for (std::size_t i = 0; i < frequencies.size(); ++i)
        v += amplitudes[i] * std::sin(frequencies[i] * x + phases[i]);
    return v / normalizer;
}

std::vector<double> TargetFunction::sample(std::span<const double> grid) const
{
    std::vector<double> out(grid.size());
    for (std::size_t m = 0; m < grid.size(); ++m)
        out[m] = (*this)(grid[m]);
    return out;
}

double TargetFunction::coefficient_magnitude(std::size_t i) const
{
    return amplitudes.at(i) / (2.0 * normalizer);
}

TargetFunction make_target(std::span<const int> frequencies, std::span<const double> amplitudes,
                           std::uint64_t phase_seed)
{
    if (frequencies.empty())
        fail(ErrorKind::Config, "target.frequencies must not be empty");
    std::set<int> seen;
    for (int w : frequencies) {
        if (w <= 0)
            fail(ErrorKind::Config, "target.frequencies must be positive integers");
        if (!seen.insert(w).second)
            fail(ErrorKind::Config, "target.frequencies must be distinct");
    }
    if (!amplitudes.empty() && amplitudes.size() != frequencies.size())
        fail(ErrorKind::Config, "target.amplitudes must match target.frequencies in length");

    TargetFunction t;
    t.frequencies.assign(frequencies.begin(), frequencies.end());
    if (amplitudes.empty())
        t.amplitudes.assign(frequencies.size(), 1.0);
    else
        t.amplitudes.assign(amplitudes.begin(), amplitudes.end());
    t.normalizer = 0.0;
    for (double a : t.amplitudes) {
        if (!(a > 0.0) || !std::isfinite(a))
            fail(ErrorKind::Config, "target.amplitudes must be positive");
        t.normalizer += a;
    }
    Rng rng(phase_seed);
    for (std::size_t i = 0; i < frequencies.size(); ++i)
        t.phases.push_back(rng.uniform(0.0, 2.0 * std::numbers::pi));
    return t;
}

TargetFunction make_target(const TargetConfig &config)
{
    return make_target(config.frequencies, config.amplitudes, config.phase_seed);
}

AdamOptimizer::AdamOptimizer(std::size_t size, double lr, double beta1, double beta2, double epsilon)
    : lr_(lr), beta1_(beta1), beta2_(beta2), epsilon_(epsilon), m_(size, 0.0), v_(size, 0.0)
{
}

void AdamOptimizer::step(std::span<double> params, std::span<const double> gradient)
{
    if (params.size() != m_.size() || gradient.size() != m_.size())
        fail(ErrorKind::Config, "adam: size mismatch");
    ++t_;
    const double c1 = 1.0 - std::pow(beta1_, static_cast<double>(t_));
    const double c2 = 1.0 - std::pow(beta2_, static_cast<double>(t_));
    for (std::size_t i = 0; i < params.size(); ++i) {
        m_[i] = beta1_ * m_[i] + (1.0 - beta1_) * gradient[i];
        v_[i] = beta2_ * v_[i] + (1.0 - beta2_) * gradient[i] * gradient[i];
        params[i] -= lr_ * (m_[i] / c1) / (std::sqrt(v_[i] / c2) + epsilon_);
    }
}

const char *to_string(TrainingStatus status)
{
    switch (status) {
    case TrainingStatus::Completed: return "completed";
    case TrainingStatus::EarlyStopped: return "early_stopped";
    case TrainingStatus::Aborted: return "aborted";
    }
    return "?";
}

TrainingTrace train(const ReuploaderCircuit &circuit, std::span<const double> params0,
                    const TargetFunction &target, const TrainingOptions &options)
{
    validate(options);
    for (int w : target.frequencies)
        if (w > options.omega_max_track)
            fail(ErrorKind::Config, "target frequency " + std::to_string(w) +
                                        " lies outside the tracked band");
    const auto grid = sample_grid(options.grid_size);
    const auto target_values = target.sample(grid);

    TrainingTrace trace;
    trace.eval_every = options.eval_every;
    trace.grid_size = options.grid_size;
    trace.target_snapshot = dft_coefficients(target_values, options.omega_max_track);
    trace.target_frequencies = target.frequencies;
    trace.final_params.assign(params0.begin(), params0.end());

    AdamOptimizer adam(params0.size(), options.lr);
    auto &params = trace.final_params;
    for (int epoch = 0; epoch <= options.epochs; ++epoch) {
        LossGradient lg;
        try {
            lg = grad_mse(circuit, params, grid, target_values, options.method);
        } catch (const Error &e) {
            if (e.kind() != ErrorKind::Numeric)
                throw;
            trace.status = TrainingStatus::Aborted;
            trace.message = e.what();
            return trace;
        }
        if (epoch % options.eval_every == 0) {
            trace.eval_epochs.push_back(epoch);
            trace.losses.push_back(lg.loss);
            trace.snapshots.push_back(dft_coefficients(lg.outputs, options.omega_max_track));
            std::vector<double> row;
            for (std::size_t i = 0; i < target.frequencies.size(); ++i)
                row.push_back(std::abs(trace.snapshots.back().at(target.frequencies[i])) /
                              target.coefficient_magnitude(i));
            trace.normalized.push_back(std::move(row));
            if (lg.loss < options.early_stop_loss) {
                trace.status = TrainingStatus::EarlyStopped;
                return trace;
            }
        }
        if (epoch == options.epochs)
            break;
        for (double g : lg.gradient)
            if (!std::isfinite(g)) {
                trace.status = TrainingStatus::Aborted;
                trace.message = "non-finite gradient at epoch " + std::to_string(epoch);
                return trace;
            }
        adam.step(params, lg.gradient);
    }
    return trace;
}

std::optional<int> epochs_to_threshold(const TrainingTrace &trace, int omega, double threshold, int hold)
{
    if (!(threshold > 0.0))
        fail(ErrorKind::Config, "epochs_to_threshold: threshold must be > 0");
    if (hold < 1)
        fail(ErrorKind::Config, "epochs_to_threshold: hold must be >= 1");
    const auto it = std::find(trace.target_frequencies.begin(), trace.target_frequencies.end(), omega);
    if (it == trace.target_frequencies.end())
        fail(ErrorKind::Config, "epochs_to_threshold: omega " + std::to_string(omega) + " is not a target frequency");
    const auto col = static_cast<std::size_t>(it - trace.target_frequencies.begin());
    int streak = 0;
    std::size_t start = 0;
    for (std::size_t e = 0; e < trace.normalized.size(); ++e) {
        if (trace.normalized[e][col] >= threshold) {
            if (streak == 0)
                start = e;
            if (++streak >= hold)
                return trace.eval_epochs[start];
        } else {
            streak = 0;
        }
    }
    if (streak > 0 && trace.status == TrainingStatus::EarlyStopped)
        return trace.eval_epochs[start];
    return std::nullopt;
}

PreparedRun prepare_run(const RunConfig &config, std::uint64_t seed)
{
    CircuitConfig cc = config.circuit;
    if (cc.entanglement.kind == EntanglerKind::Random)
        cc.entanglement.seed = derive_seed(cc.entanglement.seed, seed, Stream::Layout);
    PreparedRun run{build_circuit(cc), {}, {}};
    run.params = init_params(run.circuit, config.init.sigma, derive_seed(config.init.seed, seed, Stream::Params));
    TargetConfig tc = config.target;
    tc.phase_seed = derive_seed(tc.phase_seed, seed, Stream::Phases);
    run.target = make_target(tc);
    return run;
}

std::vector<std::vector<double>> unit_directions(std::size_t dimension, int count, std::uint64_t seed)
{
    if (dimension == 0 || count < 1)
        fail(ErrorKind::Config, "unit_directions: dimension and count must be positive");
    std::vector<std::vector<double>> directions(static_cast<std::size_t>(count));
    for (int d = 0; d < count; ++d) {
        Rng rng(derive_seed(seed, static_cast<std::uint64_t>(d)));
        auto &u = directions[static_cast<std::size_t>(d)];
        u.resize(dimension);
        double norm = 0.0;
        for (auto &v : u) {
            v = rng.normal();
            norm += v * v;
        }
        norm = std::sqrt(norm);
        for (auto &v : u)
            v /= norm;
    }
    return directions;
}

PerturbationReport perturb_report(const ReuploaderCircuit &circuit, std::span<const double> params_star,
                                  std::span<const int> omegas, std::span<const double> deltas,
                                  int n_directions, std::uint64_t seed, std::size_t grid_size)
{
    if (n_directions < 1)
        fail(ErrorKind::Config, "perturb_report: n_directions must be >= 1");
    if (deltas.empty() || omegas.empty())
        fail(ErrorKind::Config, "perturb_report: deltas and omegas must be non-empty");
    int track = 0;
    for (int w : omegas)
        track = std::max(track, std::abs(w));
    const auto grid = sample_grid(grid_size);
    const std::size_t P = params_star.size();

    PerturbationReport rep;
    rep.deltas.assign(deltas.begin(), deltas.end());
    rep.omegas.assign(omegas.begin(), omegas.end());
    rep.samples_per_delta = n_directions;
    const auto base = dft_coefficients(evaluate_on_grid(circuit, params_star, grid), track);
    for (int w : omegas) {
        rep.base_magnitudes.push_back(std::abs(base.at(w)));
        rep.defined.push_back(rep.base_magnitudes.back() >= 1e-12);
    }

    const auto directions = unit_directions(P, n_directions, seed);

    // magnitude[delta][direction][omega], filled in parallel then reduced in order.
    const std::size_t D = deltas.size(), N = directions.size(), K = omegas.size();
    std::vector<double> mags(D * N * K);
    parallel_for(D * N, [&](std::size_t job) {
        const std::size_t di = job / N, ni = job % N;
        std::vector<double> theta(params_star.begin(), params_star.end());
        for (std::size_t k = 0; k < P; ++k)
            theta[k] += deltas[di] * directions[ni][k];
        const auto snap = dft_coefficients(evaluate_on_grid(circuit, theta, grid), track);
        for (std::size_t i = 0; i < K; ++i)
            mags[job * K + i] = std::abs(snap.at(omegas[i]));
    });
    rep.normalized.assign(D, std::vector<double>(K, 0.0));
    for (std::size_t di = 0; di < D; ++di)
        for (std::size_t i = 0; i < K; ++i) {
            if (!rep.defined[i]) {
                rep.normalized[di][i] = std::numeric_limits<double>::quiet_NaN();
                continue;
            }
            double acc = 0.0;
            for (std::size_t ni = 0; ni < N; ++ni)
                acc += mags[(di * N + ni) * K + i];
            rep.normalized[di][i] = acc / static_cast<double>(N) / rep.base_magnitudes[i];
        }
    return rep;
}

namespace {

/// Runs one training per job, parallel across jobs.
std::vector<TrainingTrace> train_all(const std::vector<PreparedRun> &runs, const TrainingOptions &options)
{
    std::vector<TrainingTrace> traces(runs.size());
    parallel_for(runs.size(), [&](std::size_t i) {
        traces[i] = train(runs[i].circuit, runs[i].params, runs[i].target, options);
    });
    return traces;
}

} // namespace

TrainResult train_experiment(const RunConfig &config)
{
    if (config.experiment.seeds.empty())
        fail(ErrorKind::Config, "experiment.seeds must not be empty");
    TrainResult res;
    res.seeds = config.experiment.seeds;
    for (auto s : res.seeds)
        res.runs.push_back(prepare_run(config, s));
    res.traces = train_all(res.runs, config.training);
    return res;
}

RobustnessResult robustness_experiment(const RunConfig &config)
{
    const auto &ex = config.experiment;
    if (ex.seeds.empty())
        fail(ErrorKind::Config, "experiment.seeds must not be empty");
    const auto deltas = ex.deltas.empty() ? default_deltas() : ex.deltas;
    std::vector<PreparedRun> runs;
    for (auto s : ex.seeds)
        runs.push_back(prepare_run(config, s));

    RobustnessResult res;
    res.seeds = ex.seeds;
    res.traces = train_all(runs, config.training);
    for (std::size_t i = 0; i < runs.size(); ++i)
        res.reports.push_back(perturb_report(runs[i].circuit, res.traces[i].final_params,
                                             config.target.frequencies, deltas, ex.n_directions,
                                             derive_seed(config.init.seed, ex.seeds[i], Stream::Perturbation),
                                             config.training.grid_size));

    res.mean = res.reports.front();
    const std::size_t K = res.mean.omegas.size();
    for (std::size_t di = 0; di < deltas.size(); ++di)
        for (std::size_t k = 0; k < K; ++k) {
            double acc = 0.0;
            int count = 0;
            for (const auto &r : res.reports)
                if (r.defined[k]) {
                    acc += r.normalized[di][k];
                    ++count;
                }
            res.mean.normalized[di][k] =
                count ? acc / count : std::numeric_limits<double>::quiet_NaN();
        }
    for (std::size_t k = 0; k < K; ++k) {
        double acc = 0.0;
        bool any = false;
        for (const auto &r : res.reports) {
            acc += r.base_magnitudes[k];
            any = any || r.defined[k];
        }
        res.mean.base_magnitudes[k] = acc / static_cast<double>(res.reports.size());
        res.mean.defined[k] = any;
    }
    return res;
}

const ConvergenceSummary &ConvergenceTable::find(const std::string &layout, int omega) const
{
    for (const auto &s : summary)
        if (s.layout == layout && s.omega == omega)
            return s;
    fail(ErrorKind::Config, "no convergence summary for " + layout + " at omega " + std::to_string(omega));
}

ConvergenceTable entanglement_sweep(const RunConfig &base, std::span<const EntanglementSpec> layouts,
                                    std::span<const std::uint64_t> seeds)
{
    if (layouts.empty())
        fail(ErrorKind::Config, "entanglement_sweep: layouts must not be empty");
    if (seeds.empty())
        fail(ErrorKind::Config, "entanglement_sweep: seeds must not be empty");
    std::vector<std::vector<std::uint64_t>> layout_seeds;
    for (const auto &layout : layouts) {
        std::vector<std::uint64_t> ls(seeds.begin(), seeds.end());
        if (layout.kind == EntanglerKind::Random) {
            std::uint64_t next = *std::max_element(ls.begin(), ls.end()) + 1;
            while (ls.size() < kMinRandomLayoutSeeds)
                ls.push_back(next++);
        }
        layout_seeds.push_back(std::move(ls));
    }
    std::vector<PreparedRun> runs;
    for (std::size_t li = 0; li < layouts.size(); ++li)
        for (auto s : layout_seeds[li]) {
            RunConfig c = base;
            c.circuit.entanglement = layouts[li];
            runs.push_back(prepare_run(c, s));
        }
    const auto traces = train_all(runs, base.training);

    ConvergenceTable table;
    table.eval_every = base.training.eval_every;
    table.epoch_budget = base.training.epochs;
    const auto &ex = base.experiment;
    std::size_t job = 0;
    for (std::size_t li = 0; li < layouts.size(); ++li) {
        const std::string name = describe(layouts[li]);
        std::map<int, ConvergenceSummary> per_omega;
        for (auto s : layout_seeds[li]) {
            const auto &run = runs[job];
            const auto &trace = traces[job];
            ++job;
            double cnots = 0.0;
            for (const auto &b : run.circuit.entanglement.blocks)
                cnots += static_cast<double>(b.size());
            cnots /= static_cast<double>(run.circuit.entanglement.blocks.size());
            for (int w : base.target.frequencies) {
                const auto e = epochs_to_threshold(trace, w, ex.threshold, ex.hold);
                table.rows.push_back({name, cnots, s, w, e});
                auto &sum = per_omega[w];
                sum.layout = name;
                sum.omega = w;
                sum.cnots_per_layer += cnots;
                ++sum.runs;
                if (e)
                    sum.mean_epochs += *e;
                else {
                    ++sum.did_not_converge;
                    sum.mean_epochs += base.training.epochs;
                }
            }
        }
        for (int w : base.target.frequencies) {
            auto sum = per_omega[w];
            sum.mean_epochs /= sum.runs;
            sum.cnots_per_layer /= sum.runs;
            table.summary.push_back(sum);
        }
    }
    return table;
}

const InitSweepRow &InitSweepTable::find(double sigma, int omega) const
{
    for (const auto &r : rows)
        if (r.sigma == sigma && r.omega == omega)
            return r;
    fail(ErrorKind::Config, "no init-sweep row for sigma " + std::to_string(sigma) + " at omega " +
                                std::to_string(omega));
}

InitSweepTable init_sweep(const RunConfig &base, std::span<const double> sigma_list,
                          std::span<const std::uint64_t> seeds, bool train_each)
{
    if (sigma_list.empty())
        fail(ErrorKind::Config, "init_sweep: sigma_list must not be empty");
    if (seeds.empty())
        fail(ErrorKind::Config, "init_sweep: seeds must not be empty");
    const auto probe = build_circuit(base.circuit);
    const int band = std::min(base.training.omega_max_track,
                              static_cast<int>(std::floor(probe.max_frequency())));
    const auto grid = sample_grid(base.training.grid_size);

    InitSweepTable table;
    for (double sigma : sigma_list) {
        RunConfig c = base;
        c.init.sigma = sigma;
        std::vector<PreparedRun> runs;
        for (auto s : seeds)
            runs.push_back(prepare_run(c, s));
        std::vector<FourierSnapshot> snaps(runs.size());
        parallel_for(runs.size(), [&](std::size_t i) {
            snaps[i] = dft_coefficients(evaluate_on_grid(runs[i].circuit, runs[i].params, grid),
                                        base.training.omega_max_track);
        });
        std::vector<TrainingTrace> traces;
        if (train_each)
            traces = train_all(runs, base.training);
        for (int w = 0; w <= band; ++w) {
            InitSweepRow row;
            row.sigma = sigma;
            row.variance = sigma * sigma;
            row.omega = w;
            for (const auto &snap : snaps) {
                row.mean_power += std::norm(snap.at(w));
                row.mean_magnitude += std::abs(snap.at(w));
            }
            row.mean_power /= static_cast<double>(snaps.size());
            row.mean_magnitude /= static_cast<double>(snaps.size());
            const auto &f = base.target.frequencies;
            if (train_each && std::find(f.begin(), f.end(), w) != f.end()) {
                double acc = 0.0;
                for (const auto &t : traces) {
                    const auto e = epochs_to_threshold(t, w, base.experiment.threshold, base.experiment.hold);
                    if (e)
                        acc += *e;
                    else {
                        acc += base.training.epochs;
                        ++row.did_not_converge;
                    }
                }
                row.mean_epochs = acc / static_cast<double>(traces.size());
            }
            table.rows.push_back(row);
        }
    }
    return table;
}

BoundsExperiment verify_bounds(const RunConfig &config)
{
    const int instances = config.experiment.instances;
    if (instances < 1)
        fail(ErrorKind::Config, "experiment.instances must be >= 1");
    static const EncodingKind kinds[] = {EncodingKind::Constant, EncodingKind::Linear,
                                         EncodingKind::Binary, EncodingKind::Ternary};
    static const EntanglerKind entanglers[] = {EntanglerKind::Ladder, EntanglerKind::OneDHop,
                                               EntanglerKind::AllToAll, EntanglerKind::None};
    std::vector<BoundReport> reports(static_cast<std::size_t>(instances));
    parallel_for(reports.size(), [&](std::size_t i) {
        Rng rng(derive_seed(config.init.seed, i));
        const int n = 1 + static_cast<int>(rng.index(3));
        const int L = 1 + static_cast<int>(rng.index(3));
        const auto kind = kinds[rng.index(4)];
        const auto ent = entanglers[rng.index(4)];
        const int obs = static_cast<int>(rng.index(static_cast<std::uint64_t>(n)));
        const auto circuit =
            build_circuit(n, L, EncodingScheme::make(kind, n), EntanglementSpec{ent, 0, 0}, Observable{obs});
        std::vector<double> theta(circuit.parameter_count());
        for (auto &t : theta)
            t = rng.normal(0.0, config.experiment.bound_sigma);
        const std::size_t M = exact_grid_size(circuit);
        const int wmax = static_cast<int>(circuit.max_frequency());
        std::vector<double> amp(static_cast<std::size_t>(wmax) + 1), phase(amp.size());
        double total = 0.0;
        for (std::size_t w = 0; w < amp.size(); ++w) {
            amp[w] = rng.uniform();
            phase[w] = rng.uniform(0.0, 2.0 * std::numbers::pi);
            total += amp[w];
        }
        std::vector<double> target;
        for (double x : sample_grid(M)) {
            double v = 0.0;
            for (std::size_t w = 0; w < amp.size(); ++w)
                v += amp[w] * std::cos(static_cast<double>(w) * x + phase[w]);
            target.push_back(v / total);
        }
        reports[i] = thm1_report(circuit, theta, dft_coefficients(target, static_cast<int>(M / 2 - 1)));
    });
    BoundsExperiment out;
    out.instances = instances;
    out.report.tolerance = 1e-9;
    for (int i = 0; i < instances; ++i) {
        out.report.merge(reports[static_cast<std::size_t>(i)]);
        out.instance_of_row.insert(out.instance_of_row.end(), reports[static_cast<std::size_t>(i)].rows.size(), i);
    }
    return out;
}

} // namespace slab
