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

#include "spectral_lab/spectral_lab.h"

#include "spectral_lab/cliio.hpp"
#include "spectral_lab/error.hpp"
#include "spectral_lab/gradients.hpp"
#include "spectral_lab/spectrum.hpp"

#include <cstdlib>
#include <cstring>
#include <new>
#include <string>

struct slab_config {
    slab::RunConfig value;
};

struct slab_circuit {
    slab::ReuploaderCircuit value;
};

struct slab_spectrum {
    slab::FrequencySpectrum value;
    std::vector<std::int64_t> keys;
};

namespace {

thread_local std::string last_error;

slab_status status_of(slab::ErrorKind kind)
{
    switch (kind) {
    case slab::ErrorKind::Config: return SLAB_ERROR_CONFIG;
    case slab::ErrorKind::Numeric: return SLAB_ERROR_NUMERIC;
    case slab::ErrorKind::Size: return SLAB_ERROR_SIZE;
    case slab::ErrorKind::Io: return SLAB_ERROR_IO;
    case slab::ErrorKind::UnsupportedLattice: return SLAB_ERROR_LATTICE;
    case slab::ErrorKind::Domain: return SLAB_ERROR_DOMAIN;
    }
    return SLAB_ERROR_INTERNAL;
}

/// Runs fn, translating exceptions into a status and last_error.
template <typename Fn>
slab_status guard(Fn &&fn) noexcept
{
    try {
        last_error.clear();
        fn();
        return SLAB_OK;
    } catch (const slab::Error &e) {
        last_error = e.what();
        return status_of(e.kind());
    } catch (const std::bad_alloc &) {
        last_error = "out of memory";
        return SLAB_ERROR_SIZE;
    } catch (const std::exception &e) {
        last_error = e.what();
        return SLAB_ERROR_INTERNAL;
    } catch (...) {
        last_error = "unknown failure";
        return SLAB_ERROR_INTERNAL;
    }
}

void need(const void *p, const char *what)
{
    if (!p)
        slab::fail(slab::ErrorKind::Config, std::string(what) + " must not be NULL");
}

char *dup_string(const std::string &s)
{
    char *out = static_cast<char *>(std::malloc(s.size() + 1));
    if (!out)
        throw std::bad_alloc();
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

std::span<const double> params_of(const slab_circuit *c, const double *params, std::size_t count)
{
    need(c, "circuit");
    need(params, "params");
    if (count != c->value.parameter_count())
        slab::fail(slab::ErrorKind::Config, "expected " + std::to_string(c->value.parameter_count()) +
                                                " parameters, got " + std::to_string(count));
    return {params, count};
}

} // namespace

extern "C" {

const char *slab_version(void) { return slab::kToolVersion; }

const char *slab_status_string(slab_status status)
{
    switch (status) {
    case SLAB_OK: return "ok";
    case SLAB_ERROR_CONFIG: return "configuration error";
    case SLAB_ERROR_NUMERIC: return "numeric error";
    case SLAB_ERROR_SIZE: return "size error";
    case SLAB_ERROR_IO: return "io error";
    case SLAB_ERROR_LATTICE: return "unsupported lattice";
    case SLAB_ERROR_DOMAIN: return "domain error";
    case SLAB_ERROR_INTERNAL: return "internal error";
    }
    return "unknown status";
}

int slab_exit_code(slab_status status)
{
    switch (status) {
    case SLAB_OK: return 0;
    case SLAB_ERROR_CONFIG:
    case SLAB_ERROR_LATTICE:
    case SLAB_ERROR_DOMAIN: return 2;
    case SLAB_ERROR_NUMERIC: return 3;
    case SLAB_ERROR_SIZE: return 4;
    case SLAB_ERROR_IO: return 5;
    case SLAB_ERROR_INTERNAL: return 1;
    }
    return 1;
}

const char *slab_last_error(void) { return last_error.c_str(); }

void slab_string_free(char *s) { std::free(s); }

slab_status slab_config_from_profile(const char *profile, slab_config **out)
{
    return guard([&] {
        need(profile, "profile");
        need(out, "out");
        *out = new slab_config{slab::profile_by_name(profile)};
    });
}

slab_status slab_config_from_file(const char *path, slab_config **out)
{
    return guard([&] {
        need(path, "path");
        need(out, "out");
        *out = new slab_config{slab::parse_config(path)};
    });
}

slab_status slab_config_from_json(const char *text, slab_config **out)
{
    return guard([&] {
        need(text, "text");
        need(out, "out");
        auto parsed = slab::parse_config_text(text);
        if (!parsed.config)
            slab::fail(slab::ErrorKind::Config, slab::format_issues(parsed.issues));
        *out = new slab_config{std::move(*parsed.config)};
    });
}

slab_status slab_config_to_json(const slab_config *config, char **out)
{
    return guard([&] {
        need(config, "config");
        need(out, "out");
        *out = dup_string(slab::serialize_config(config->value));
    });
}

slab_status slab_config_hash(const slab_config *config, char out[65])
{
    return guard([&] {
        need(config, "config");
        need(out, "out");
        const auto h = slab::config_hash(config->value);
        std::memcpy(out, h.c_str(), 65);
    });
}

slab_status slab_config_set_experiment(slab_config *config, const char *kind)
{
    return guard([&] {
        need(config, "config");
        need(kind, "kind");
        config->value.experiment.kind = slab::parse_experiment_kind(kind);
    });
}

slab_status slab_config_set_seeds(slab_config *config, const uint64_t *seeds, size_t count)
{
    return guard([&] {
        need(config, "config");
        if (count == 0)
            slab::fail(slab::ErrorKind::Config, "at least one seed is required");
        need(seeds, "seeds");
        config->value.experiment.seeds.assign(seeds, seeds + count);
    });
}

slab_status slab_config_set_output_directory(slab_config *config, const char *directory)
{
    return guard([&] {
        need(config, "config");
        need(directory, "directory");
        config->value.output_directory = directory;
        slab::require_valid(config->value);
    });
}

void slab_config_free(slab_config *config) { delete config; }

slab_status slab_run(const slab_config *config, slab_log_fn log, void *user)
{
    return guard([&] {
        need(config, "config");
        slab::LogSink sink;
        if (log)
            sink = [log, user](const std::string &line) { log(line.c_str(), user); };
        slab::run_experiment(config->value, sink);
    });
}

slab_status slab_plot_trace(const char *csv_path, const char *svg_path)
{
    return guard([&] {
        need(csv_path, "csv_path");
        need(svg_path, "svg_path");
        slab::plot_trace(csv_path, svg_path);
    });
}

slab_status slab_circuit_from_config(const slab_config *config, slab_circuit **out)
{
    return guard([&] {
        need(config, "config");
        need(out, "out");
        *out = new slab_circuit{slab::build_circuit(config->value.circuit)};
    });
}

size_t slab_circuit_parameter_count(const slab_circuit *circuit)
{
    return circuit ? circuit->value.parameter_count() : 0;
}

double slab_circuit_max_frequency(const slab_circuit *circuit)
{
    return circuit ? circuit->value.max_frequency() : 0.0;
}

slab_status slab_circuit_init_params(const slab_circuit *circuit, double sigma, uint64_t seed, double *out,
                                     size_t count)
{
    return guard([&] {
        need(circuit, "circuit");
        need(out, "out");
        if (count != circuit->value.parameter_count())
            slab::fail(slab::ErrorKind::Config, "output buffer has the wrong length");
        const auto p = slab::init_params(circuit->value, sigma, seed);
        std::copy(p.begin(), p.end(), out);
    });
}

slab_status slab_circuit_evaluate(const slab_circuit *circuit, const double *params, size_t count,
                                  const double *xs, double *out, size_t points)
{
    return guard([&] {
        const auto p = params_of(circuit, params, count);
        if (points == 0)
            return;
        need(xs, "xs");
        need(out, "out");
        const auto values = slab::evaluate_on_grid(circuit->value, p, std::span<const double>(xs, points));
        std::copy(values.begin(), values.end(), out);
    });
}

slab_status slab_circuit_gradient(const slab_circuit *circuit, const double *params, size_t count, double x,
                                  double *out)
{
    return guard([&] {
        const auto p = params_of(circuit, params, count);
        need(out, "out");
        const auto g = slab::grad_f(circuit->value, p, x);
        std::copy(g.begin(), g.end(), out);
    });
}

slab_status slab_circuit_coefficients(const slab_circuit *circuit, const double *params, size_t count,
                                      size_t grid_size, int omega_max, double *re, double *im)
{
    return guard([&] {
        const auto p = params_of(circuit, params, count);
        need(re, "re");
        need(im, "im");
        const auto grid = slab::sample_grid(grid_size);
        const auto snap = slab::dft_coefficients(slab::evaluate_on_grid(circuit->value, p, grid), omega_max);
        for (int w = 0; w <= omega_max; ++w) {
            re[w] = snap.at(w).real();
            im[w] = snap.at(w).imag();
        }
    });
}

void slab_circuit_free(slab_circuit *circuit) { delete circuit; }

slab_status slab_spectrum_from_config(const slab_config *config, slab_spectrum **out)
{
    return guard([&] {
        need(config, "config");
        need(out, "out");
        const auto circuit = slab::build_circuit(config->value.circuit);
        auto *s = new slab_spectrum{slab::redundancy_profile(circuit.encoding, circuit.L), {}};
        for (const auto &kv : s->value.redundancy)
            s->keys.push_back(kv.first);
        *out = s;
    });
}

size_t slab_spectrum_size(const slab_spectrum *spectrum) { return spectrum ? spectrum->keys.size() : 0; }

slab_status slab_spectrum_entry(const slab_spectrum *spectrum, size_t index, double *omega, char **count_decimal,
                                double *count_double)
{
    return guard([&] {
        need(spectrum, "spectrum");
        if (index >= spectrum->keys.size())
            slab::fail(slab::ErrorKind::Config, "spectrum index out of range");
        const auto key = spectrum->keys[index];
        const auto &count = spectrum->value.redundancy.at(key);
        if (omega)
            *omega = spectrum->value.omega(key);
        if (count_double)
            *count_double = slab::to_double(count);
        if (count_decimal)
            *count_decimal = dup_string(slab::to_decimal(count));
    });
}

void slab_spectrum_free(slab_spectrum *spectrum) { delete spectrum; }

slab_status slab_params_write(const char *path, const double *params, size_t count)
{
    return guard([&] {
        need(path, "path");
        if (count)
            need(params, "params");
        slab::write_params(path, std::span<const double>(params, count));
    });
}

slab_status slab_params_read(const char *path, double **out, size_t *count)
{
    return guard([&] {
        need(path, "path");
        need(out, "out");
        need(count, "count");
        const auto p = slab::read_params(path);
        auto *buf = static_cast<double *>(std::malloc(std::max<std::size_t>(1, p.size()) * sizeof(double)));
        if (!buf)
            throw std::bad_alloc();
        std::copy(p.begin(), p.end(), buf);
        *out = buf;
        *count = p.size();
    });
}

void slab_params_free(double *params) { std::free(params); }

} // extern "C"
