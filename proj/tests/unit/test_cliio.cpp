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

#include "spectral_lab/cliio.hpp"
#include "spectral_lab/error.hpp"
#include "spectral_lab/rng.hpp"

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include <cmath>
#include <cstdlib>

namespace slab {
namespace {

namespace fs = std::filesystem;

bool has_issue(const ConfigParse &p, const std::string &path, const std::string &fragment = "")
{
    for (const auto &i : p.issues)
        if (i.path == path && i.message.find(fragment) != std::string::npos)
            return true;
    return false;
}

class TempDir : public ::testing::Test {
protected:
    void SetUp() override
    {
        dir_ = fs::temp_directory_path() /
               ("slab_cliio_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
        fs::remove_all(dir_);
        fs::create_directories(dir_);
    }
    void TearDown() override { fs::remove_all(dir_); }
    fs::path dir_;
};

TEST(Config, PaperProfileAccepted)
{
    const auto p = parse_config_text(R"({
        "circuit": {"n": 5, "L": 20, "encoding": "constant"},
        "target": {"frequencies": [5, 10, 15, 20, 25, 30, 35, 40, 45, 50]},
        "training": {"lr": 0.0005, "grid_size": 2048, "eval_every": 5, "omega_max_track": 128}
    })");
    ASSERT_TRUE(p.config) << format_issues(p.issues);
    EXPECT_EQ(p.config->circuit.n, 5);
    EXPECT_EQ(p.config->circuit.L, 20);
    EXPECT_EQ(p.config->training.grid_size, 2048u);
    EXPECT_DOUBLE_EQ(p.config->training.lr, 0.0005);
}

TEST(Config, FullProfileByName)
{
    const auto p = parse_config_text(R"({"profile": "full"})");
    ASSERT_TRUE(p.config) << format_issues(p.issues);
    EXPECT_EQ(*p.config, full_profile());
}

TEST(Config, ZeroQubitsRejectedWithPath)
{
    const auto p = parse_config_text(R"({"circuit": {"n": 0}})");
    EXPECT_FALSE(p.config);
    EXPECT_TRUE(has_issue(p, "circuit.n"));
}

TEST(Config, NyquistViolationCited)
{
    const auto p = parse_config_text(
        R"({"circuit": {"encoding": "ternary"}, "training": {"grid_size": 256, "omega_max_track": 128}})");
    EXPECT_FALSE(p.config);
    EXPECT_TRUE(has_issue(p, "training.omega_max_track", "Nyquist"));
}

TEST(Config, CollectsEveryViolation)
{
    const auto p = parse_config_text(R"({
        "circuit": {"n": 0, "colour": "red", "entanglement": {"kind": "star"}},
        "init": {"sigma": -1},
        "training": {"lr": "fast", "eval_every": 0},
        "experiment": {"seeds": [], "layouts": [{"kind": "ladder", "extra": 1}], "threshold": 2},
        "extra": true
    })");
    EXPECT_FALSE(p.config);
    EXPECT_TRUE(has_issue(p, "circuit.n"));
    EXPECT_TRUE(has_issue(p, "circuit.colour", "unknown key"));
    EXPECT_TRUE(has_issue(p, "circuit.entanglement.kind"));
    EXPECT_TRUE(has_issue(p, "init.sigma"));
    EXPECT_TRUE(has_issue(p, "training.lr", "number"));
    EXPECT_TRUE(has_issue(p, "training.eval_every"));
    EXPECT_TRUE(has_issue(p, "experiment.seeds"));
    EXPECT_TRUE(has_issue(p, "experiment.layouts[0].extra", "unknown key"));
    EXPECT_TRUE(has_issue(p, "experiment.threshold"));
    EXPECT_TRUE(has_issue(p, "extra", "unknown key"));
    EXPECT_GE(p.issues.size(), 10u);
}

TEST(Config, TypeErrors)
{
    const auto p = parse_config_text(
        R"({"circuit": {"L": 2.5, "betas": "x"}, "init": {"seed": -3}, "target": {"frequencies": [1, "2"]}})");
    EXPECT_TRUE(has_issue(p, "circuit.L", "integer"));
    EXPECT_TRUE(has_issue(p, "circuit.betas", "array"));
    EXPECT_TRUE(has_issue(p, "init.seed", "non-negative"));
    EXPECT_TRUE(has_issue(p, "target.frequencies[1]", "integer"));
}

TEST(Config, SemanticChecks)
{
    EXPECT_TRUE(has_issue(parse_config_text(R"({"circuit": {"observable_qubit": 3}})"), "circuit.observable_qubit"));
    EXPECT_TRUE(has_issue(parse_config_text(R"({"circuit": {"encoding": "custom"}})"), "circuit.betas"));
    EXPECT_TRUE(has_issue(parse_config_text(R"({"circuit": {"betas": [1, 2, 3]}})"), "circuit.betas"));
    EXPECT_TRUE(has_issue(parse_config_text(R"({"target": {"frequencies": [1, 1]}})"), "target.frequencies[1]"));
    EXPECT_TRUE(has_issue(parse_config_text(R"({"target": {"frequencies": [70]}})"), "target.frequencies[0]"));
    EXPECT_TRUE(has_issue(parse_config_text(R"({"target": {"amplitudes": [1]}})"), "target.amplitudes"));
    EXPECT_TRUE(has_issue(
        parse_config_text(R"({"circuit": {"entanglement": {"kind": "random", "count": 7}}})"),
        "circuit.entanglement.count"));
    EXPECT_TRUE(has_issue(parse_config_text(R"({"profile": "huge"})"), "profile"));
    EXPECT_TRUE(has_issue(parse_config_text(R"({"output": {"directory": ""}})"), "output.directory"));
}

TEST(Config, MalformedJson)
{
    const auto p = parse_config_text("{\"circuit\": ");
    EXPECT_FALSE(p.config);
    ASSERT_EQ(p.issues.size(), 1u);
    EXPECT_NE(p.issues[0].message.find("malformed JSON"), std::string::npos);
    EXPECT_TRUE(has_issue(parse_config_text("[1, 2]"), "", "object"));
}

TEST(Config, RoundTripProfiles)
{
    for (const auto &cfg : {desk_profile(), full_profile()}) {
        const auto p = parse_config_text(serialize_config(cfg));
        ASSERT_TRUE(p.config) << format_issues(p.issues);
        EXPECT_EQ(*p.config, cfg);
    }
}

TEST(Config, RoundTripRandomConfigs)
{
    Rng rng(17);
    for (int trial = 0; trial < 50; ++trial) {
        RunConfig c = desk_profile();
        c.circuit.n = 1 + static_cast<int>(rng.index(4));
        c.circuit.L = 1 + static_cast<int>(rng.index(5));
        c.circuit.observable_qubit = static_cast<int>(rng.index(static_cast<std::uint64_t>(c.circuit.n)));
        c.circuit.encoding = EncodingKind::Custom;
        c.circuit.betas.clear();
        for (int q = 0; q < c.circuit.n; ++q)
            c.circuit.betas.push_back(0.5 * (1 + static_cast<double>(rng.index(6))));
        c.init.sigma = rng.uniform(0.0, 3.0);
        c.init.seed = rng.index(UINT64_MAX);
        c.target.phase_seed = rng.index(UINT64_MAX);
        c.target.amplitudes.assign(c.target.frequencies.size(), 0.0);
        for (auto &a : c.target.amplitudes)
            a = rng.uniform(0.1, 2.0);
        c.training.lr = rng.uniform(1e-5, 1e-1);
        c.training.method = trial % 2 ? GradientMethod::Adjoint : GradientMethod::ParameterShift;
        c.experiment.kind = static_cast<ExperimentKind>(rng.index(6));
        c.experiment.deltas = {rng.uniform(0.0, 1.0), std::numbers::pi};
        c.experiment.sigma_list = {1.0 / 3.0, rng.uniform(0.0, 10.0)};
        c.experiment.layouts = {{EntanglerKind::OneDHop, 0, 0}, {EntanglerKind::None, 0, 0}};
        c.output_directory = "runs/trial_" + std::to_string(trial);
        const auto p = parse_config_text(serialize_config(c));
        ASSERT_TRUE(p.config) << format_issues(p.issues);
        EXPECT_EQ(*p.config, c);
        EXPECT_EQ(config_hash(*p.config), config_hash(c));
    }
}

TEST(Config, HashIsCanonical)
{
    const RunConfig a = desk_profile();
    RunConfig b = desk_profile();
    EXPECT_EQ(config_hash(a), config_hash(b));
    EXPECT_EQ(config_hash(a).size(), 64u);
    b.init.seed = 1;
    EXPECT_NE(config_hash(a), config_hash(b));
    // Key order in the input does not matter.
    const auto x = parse_config_text(R"({"init": {"seed": 4, "sigma": 0.2}, "circuit": {"L": 2, "n": 2}})");
    const auto y = parse_config_text(R"({"circuit": {"n": 2, "L": 2}, "init": {"sigma": 0.2, "seed": 4}})");
    ASSERT_TRUE(x.config && y.config);
    EXPECT_EQ(config_hash(*x.config), config_hash(*y.config));
}

TEST(Files, Sha256KnownVectors)
{
    EXPECT_EQ(sha256_hex(""), "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
    EXPECT_EQ(sha256_hex("abc"), "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST(Files, FormatDoubleRoundTrips)
{
    EXPECT_EQ(format_double(0.1), "0.10000000000000001");
    EXPECT_EQ(format_double(2.0), "2");
    Rng rng(3);
    for (int i = 0; i < 1000; ++i) {
        const double v = rng.normal() * std::pow(10.0, rng.uniform(-30, 30));
        EXPECT_EQ(std::strtod(format_double(v).c_str(), nullptr), v);
    }
}

TEST_F(TempDir, AtomicWriteReplacesWithoutLeftovers)
{
    const auto p = dir_ / "sub" / "a.txt";
    write_file_atomic(p, "first");
    write_file_atomic(p, "second");
    EXPECT_EQ(read_file(p), "second");
    std::size_t entries = 0;
    for ([[maybe_unused]] const auto &e : fs::directory_iterator(p.parent_path()))
        ++entries;
    EXPECT_EQ(entries, 1u);
}

TEST_F(TempDir, MissingFileIsIoError)
{
    try {
        parse_config(dir_ / "nope.json");
        FAIL();
    } catch (const Error &e) {
        EXPECT_EQ(e.kind(), ErrorKind::Io);
    }
}

TEST_F(TempDir, ParamsAreLittleEndianFloat64)
{
    const std::vector<double> p{1.0, -0.5, 1e-300, std::numbers::pi};
    write_params(dir_ / "p.bin", p);
    const auto bytes = read_file(dir_ / "p.bin");
    ASSERT_EQ(bytes.size(), 32u);
    // 1.0 = 0x3FF0000000000000, least significant byte first.
    EXPECT_EQ(static_cast<unsigned char>(bytes[6]), 0xF0);
    EXPECT_EQ(static_cast<unsigned char>(bytes[7]), 0x3F);
    EXPECT_EQ(read_params(dir_ / "p.bin"), p);
    write_file_atomic(dir_ / "bad.bin", "1234567");
    EXPECT_THROW(read_params(dir_ / "bad.bin"), Error);
}

TEST(Csv, HeaderRowsAndColumns)
{
    CsvTable t{{"a", "b"}, {{"1", "2"}, {"3", ""}}};
    EXPECT_EQ(t.str(), "a,b\n1,2\n3,\n");
    const auto back = parse_csv(t.str());
    EXPECT_EQ(back.header, t.header);
    EXPECT_EQ(back.rows, t.rows);
    EXPECT_EQ(back.column("b"), 1u);
    EXPECT_THROW(back.column("c"), Error);
    EXPECT_THROW(parse_csv("a,b\n1\n"), Error);
    EXPECT_THROW(parse_csv(""), Error);
}

TEST(Plot, HeatmapHasOneCellPerEntry)
{
    const auto t = parse_csv("epoch,loss,omega_1,omega_2\n0,1,0.1,0.2\n5,0.5,0.9,1.2\n10,0.1,1,1\n");
    const auto svg = render_trace_svg(t);
    EXPECT_EQ(svg.rfind("<?xml", 0), 0u);
    EXPECT_NE(svg.find("</svg>"), std::string::npos);
    EXPECT_NE(svg.find("normalized magnitude"), std::string::npos);
    std::size_t rects = 0;
    for (auto pos = svg.find("<rect"); pos != std::string::npos; pos = svg.find("<rect", pos + 1))
        ++rects;
    // background + 6 cells + frame + 50 colorbar steps + colorbar frame
    EXPECT_EQ(rects, 1u + 6u + 1u + 50u + 1u);
    EXPECT_THROW(render_trace_svg(parse_csv("epoch,loss\n0,1\n")), Error);
}

TEST_F(TempDir, RunIsReproducibleAndManifested)
{
    RunConfig cfg = desk_profile();
    cfg.training.epochs = 20;
    cfg.experiment.seeds = {0, 3};
    cfg.output_directory = (dir_ / "a").string();
    const auto a = run_experiment(cfg);
    cfg.output_directory = (dir_ / "b").string();
    const auto b = run_experiment(cfg);
    ASSERT_EQ(a.files, b.files);
    for (const auto &f : a.files)
        if (f.ends_with(".csv") || f.ends_with(".bin"))
            EXPECT_EQ(read_file(a.directory / f), read_file(b.directory / f)) << f;

    const auto manifest = nlohmann::json::parse(read_file(a.directory / "manifest.json"));
    EXPECT_EQ(manifest["tool_version"], kToolVersion);
    EXPECT_EQ(manifest["files"].size(), a.files.size() - 1);
    for (const auto &f : manifest["files"]) {
        const auto bytes = read_file(a.directory / f["path"].get<std::string>());
        EXPECT_EQ(f["sha256"], sha256_hex(bytes));
        EXPECT_EQ(f["bytes"], bytes.size());
    }
    std::size_t on_disk = 0;
    for ([[maybe_unused]] const auto &e : fs::directory_iterator(a.directory))
        ++on_disk;
    EXPECT_EQ(on_disk, a.files.size());

    const auto copy = parse_config(a.directory / "config.json");
    EXPECT_EQ(config_hash(copy), manifest["config_hash"]);
}

TEST_F(TempDir, RedundancyCsvFormat)
{
    RunConfig cfg = desk_profile();
    cfg.experiment.kind = ExperimentKind::Redundancy;
    cfg.output_directory = dir_.string();
    run_experiment(cfg);
    const auto t = parse_csv(read_file(dir_ / "spectrum.csv"));
    EXPECT_EQ(t.header, (std::vector<std::string>{"omega", "redundancy", "redundancy_normalized"}));
    ASSERT_EQ(t.rows.size(), 25u);
    EXPECT_EQ(t.rows[12][0], "0");
    // R(0) for 12 unit-beta gates: C(24, 12).
    EXPECT_EQ(t.rows[12][1], "2704156");
    double sum = 0.0;
    for (const auto &r : t.rows)
        sum += std::strtod(r[2].c_str(), nullptr);
    EXPECT_NEAR(sum, 1.0, 1e-12);
}

TEST_F(TempDir, InvalidConfigRefusedBeforeWriting)
{
    RunConfig cfg = desk_profile();
    cfg.training.eval_every = 0;
    cfg.output_directory = (dir_ / "never").string();
    EXPECT_THROW(run_experiment(cfg), Error);
    EXPECT_FALSE(fs::exists(dir_ / "never"));
}

} // namespace
} // namespace slab
