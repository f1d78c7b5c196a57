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

// spectral-lab: command-line front end over the C interface.

#include "spectral_lab/spectral_lab.h"

#include <CLI11.hpp>

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

namespace {

struct RunFlags {
    std::string config;
    std::string out;
    std::string profile;
    std::optional<std::uint64_t> seed;
    bool quiet = false;
};

int report(slab_status status)
{
    if (status != SLAB_OK)
        std::cerr << "spectral-lab: " << slab_status_string(status) << ": " << slab_last_error() << "\n";
    return slab_exit_code(status);
}

void log_line(const char *line, void *)
{
    std::cerr << line << "\n";
}

int run_kind(const std::string &kind, const RunFlags &f)
{
    slab_config *cfg = nullptr;
    slab_status st = f.config.empty()
                         ? slab_config_from_profile(f.profile.empty() ? "desk" : f.profile.c_str(), &cfg)
                         : slab_config_from_file(f.config.c_str(), &cfg);
    if (st == SLAB_OK)
        st = slab_config_set_experiment(cfg, kind.c_str());
    if (st == SLAB_OK && f.seed) {
        const std::uint64_t seed = *f.seed;
        st = slab_config_set_seeds(cfg, &seed, 1);
    }
    if (st == SLAB_OK && !f.out.empty())
        st = slab_config_set_output_directory(cfg, f.out.c_str());
    if (st == SLAB_OK)
        st = slab_run(cfg, f.quiet ? nullptr : log_line, nullptr);
    slab_config_free(cfg);
    return report(st);
}

} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"Spectral bias experiments for data-reuploading circuits", "spectral-lab"};
    app.set_version_flag("--version", slab_version());
    app.require_subcommand(1);

    struct Kind {
        const char *name;
        const char *help;
    };
    const Kind kinds[] = {
        {"redundancy", "Write the redundancy profile R(omega) of the configured encoding"},
        {"train", "Train one model per seed and record spectral traces"},
        {"robustness", "Train, then perturb along random unit directions"},
        {"entangle-sweep", "Epochs to convergence across entanglement layouts"},
        {"init-sweep", "Initial Fourier coefficient sizes across init sigmas"},
        {"verify-bounds", "Check the gradient bound on random circuits"},
    };

    RunFlags flags;
    std::string chosen;
    for (const auto &k : kinds) {
        auto *sub = app.add_subcommand(k.name, k.help);
        auto *config = sub->add_option("--config", flags.config, "Run-config JSON file");
        auto *profile = sub->add_option("--profile", flags.profile, "Built-in profile")
                            ->check(CLI::IsMember({"desk", "full"}));
        config->excludes(profile);
        sub->add_option("--out", flags.out, "Output directory (overrides the config)");
        sub->add_option("--seed-override", flags.seed, "Run this single seed instead of the configured list");
        sub->add_flag("--quiet", flags.quiet, "No progress lines on stderr");
        sub->callback([&chosen, name = std::string(k.name)] { chosen = name; });
    }

    std::string plot_in, plot_out;
    auto *plot = app.add_subcommand("plot", "Render a trace CSV as an SVG heatmap");
    plot->add_option("--in", plot_in, "Trace CSV")->required();
    plot->add_option("--out", plot_out, "SVG file")->required();
    plot->callback([&chosen] { chosen = "plot"; });

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        app.exit(e);
        return 2;
    }

    if (chosen == "plot")
        return report(slab_plot_trace(plot_in.c_str(), plot_out.c_str()));
    return run_kind(chosen, flags);
}
