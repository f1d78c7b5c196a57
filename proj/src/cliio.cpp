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
#include "spectral_lab/spectrum.hpp"

#include <nlohmann/json.hpp>
#include <openssl/evp.h>

#include <algorithm>
#include <bit>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>
#include <unistd.h>

namespace slab {

using json = nlohmann::json;
namespace fs = std::filesystem;

namespace {

// ---- config reading -------------------------------------------------------

class Reader {
public:
    explicit Reader(std::vector<ConfigIssue> &issues) : issues_(issues) {}

    void issue(const std::string &path, const std::string &message) { issues_.push_back({path, message}); }

    /// Reports keys outside `allowed`; returns false (and reports) unless j is an object.
    bool object(const json &j, const std::string &path, std::initializer_list<const char *> allowed)
    {
        if (!j.is_object()) {
            issue(path, "expected an object");
            return false;
        }
        for (const auto &item : j.items()) {
            const bool known = std::any_of(allowed.begin(), allowed.end(),
                                           [&](const char *k) { return item.key() == k; });
            if (!known)
                issue(join(path, item.key()), "unknown key");
        }
        return true;
    }

    const json *child(const json &j, const char *key) const
    {
        const auto it = j.find(key);
        return it == j.end() ? nullptr : &*it;
    }

    void read(const json &j, const std::string &path, int &dst)
    {
        std::int64_t v = 0;
        if (integer(j, path, v)) {
            if (v < std::numeric_limits<int>::min() || v > std::numeric_limits<int>::max())
                issue(path, "integer out of range");
            else
                dst = static_cast<int>(v);
        }
    }

    void read(const json &j, const std::string &path, std::uint64_t &dst)
    {
        if (j.is_number_unsigned())
            dst = j.get<std::uint64_t>();
        else if (j.is_number_integer())
            issue(path, "must be a non-negative integer");
        else
            issue(path, "expected an integer");
    }

    void read(const json &j, const std::string &path, double &dst)
    {
        if (j.is_number())
            dst = j.get<double>();
        else
            issue(path, "expected a number");
    }

    void read(const json &j, const std::string &path, bool &dst)
    {
        if (j.is_boolean())
            dst = j.get<bool>();
        else
            issue(path, "expected true or false");
    }

    void read(const json &j, const std::string &path, std::string &dst)
    {
        if (j.is_string())
            dst = j.get<std::string>();
        else
            issue(path, "expected a string");
    }

    template <typename T>
    void read(const json &j, const std::string &path, std::vector<T> &dst)
    {
        if (!j.is_array()) {
            issue(path, "expected an array");
            return;
        }
        std::vector<T> out(j.size());
        for (std::size_t i = 0; i < j.size(); ++i)
            read(j[i], path + "[" + std::to_string(i) + "]", out[i]);
        dst = std::move(out);
    }

    template <typename T>
    void field(const json &obj, const std::string &path, const char *key, T &dst)
    {
        if (const json *c = child(obj, key))
            read(*c, join(path, key), dst);
    }

    /// Enum read through a parse function that throws Config on unknown names.
    template <typename E, typename Parse>
    void enum_field(const json &obj, const std::string &path, const char *key, E &dst, Parse parse)
    {
        const json *c = child(obj, key);
        if (!c)
            return;
        std::string name;
        const auto before = issues_.size();
        read(*c, join(path, key), name);
        if (issues_.size() != before)
            return;
        try {
            dst = parse(name);
        } catch (const Error &e) {
            issue(join(path, key), e.what());
        }
    }

    static std::string join(const std::string &path, const std::string &key)
    {
        return path.empty() ? key : path + "." + key;
    }

private:
    bool integer(const json &j, const std::string &path, std::int64_t &out)
    {
        if (j.is_number_unsigned()) {
            const auto u = j.get<std::uint64_t>();
            if (u > static_cast<std::uint64_t>(std::numeric_limits<std::int64_t>::max())) {
                issue(path, "integer out of range");
                return false;
            }
            out = static_cast<std::int64_t>(u);
            return true;
        }
        if (j.is_number_integer()) {
            out = j.get<std::int64_t>();
            return true;
        }
        issue(path, "expected an integer");
        return false;
    }

    std::vector<ConfigIssue> &issues_;
};

void read_entanglement(Reader &r, const json &j, const std::string &path, EntanglementSpec &spec)
{
    if (!r.object(j, path, {"kind", "count", "seed"}))
        return;
    r.enum_field(j, path, "kind", spec.kind, parse_entangler_kind);
    r.field(j, path, "count", spec.count);
    r.field(j, path, "seed", spec.seed);
}

void read_config(Reader &r, const json &root, RunConfig &cfg)
{
    if (!r.object(root, "", {"profile", "circuit", "init", "target", "training", "experiment", "output"}))
        return;
    const std::string profile = cfg.profile;

    if (const json *c = r.child(root, "circuit")) {
        auto &cc = cfg.circuit;
        if (r.object(*c, "circuit", {"n", "L", "encoding", "betas", "entanglement", "observable_qubit"})) {
            r.field(*c, "circuit", "n", cc.n);
            r.field(*c, "circuit", "L", cc.L);
            r.enum_field(*c, "circuit", "encoding", cc.encoding, parse_encoding_kind);
            r.field(*c, "circuit", "betas", cc.betas);
            if (const json *e = r.child(*c, "entanglement"))
                read_entanglement(r, *e, "circuit.entanglement", cc.entanglement);
            r.field(*c, "circuit", "observable_qubit", cc.observable_qubit);
        }
    }
    if (const json *c = r.child(root, "init")) {
        if (r.object(*c, "init", {"sigma", "seed"})) {
            r.field(*c, "init", "sigma", cfg.init.sigma);
            r.field(*c, "init", "seed", cfg.init.seed);
        }
    }
    if (const json *c = r.child(root, "target")) {
        if (r.object(*c, "target", {"frequencies", "amplitudes", "phase_seed"})) {
            r.field(*c, "target", "frequencies", cfg.target.frequencies);
            r.field(*c, "target", "amplitudes", cfg.target.amplitudes);
            r.field(*c, "target", "phase_seed", cfg.target.phase_seed);
        }
    }
    if (const json *c = r.child(root, "training")) {
        auto &t = cfg.training;
        if (r.object(*c, "training", {"lr", "epochs", "eval_every", "grid_size", "omega_max_track",
                                      "early_stop_loss", "method"})) {
            r.field(*c, "training", "lr", t.lr);
            r.field(*c, "training", "epochs", t.epochs);
            r.field(*c, "training", "eval_every", t.eval_every);
            std::uint64_t m = t.grid_size;
            r.field(*c, "training", "grid_size", m);
            t.grid_size = static_cast<std::size_t>(m);
            r.field(*c, "training", "omega_max_track", t.omega_max_track);
            r.field(*c, "training", "early_stop_loss", t.early_stop_loss);
            r.enum_field(*c, "training", "method", t.method, parse_gradient_method);
        }
    }
    if (const json *c = r.child(root, "experiment")) {
        auto &ex = cfg.experiment;
        if (r.object(*c, "experiment", {"kind", "seeds", "deltas", "n_directions", "layouts", "sigma_list",
                                        "train_each_sigma", "instances", "bound_sigma", "threshold", "hold"})) {
            r.enum_field(*c, "experiment", "kind", ex.kind, parse_experiment_kind);
            r.field(*c, "experiment", "seeds", ex.seeds);
            r.field(*c, "experiment", "deltas", ex.deltas);
            r.field(*c, "experiment", "n_directions", ex.n_directions);
            if (const json *l = r.child(*c, "layouts")) {
                if (!l->is_array()) {
                    r.issue("experiment.layouts", "expected an array");
                } else {
                    ex.layouts.assign(l->size(), EntanglementSpec{});
                    for (std::size_t i = 0; i < l->size(); ++i)
                        read_entanglement(r, (*l)[i], "experiment.layouts[" + std::to_string(i) + "]",
                                          ex.layouts[i]);
                }
            }
            r.field(*c, "experiment", "sigma_list", ex.sigma_list);
            r.field(*c, "experiment", "train_each_sigma", ex.train_each_sigma);
            r.field(*c, "experiment", "instances", ex.instances);
            r.field(*c, "experiment", "bound_sigma", ex.bound_sigma);
            r.field(*c, "experiment", "threshold", ex.threshold);
            r.field(*c, "experiment", "hold", ex.hold);
        }
    }
    if (const json *c = r.child(root, "output")) {
        if (r.object(*c, "output", {"directory"}))
            r.field(*c, "output", "directory", cfg.output_directory);
    }
    cfg.profile = profile;
}

json entanglement_json(const EntanglementSpec &s)
{
    return json{{"kind", to_string(s.kind)}, {"count", s.count}, {"seed", s.seed}};
}

json config_json(const RunConfig &c)
{
    json layouts = json::array();
    for (const auto &l : c.experiment.layouts)
        layouts.push_back(entanglement_json(l));
    return json{
        {"profile", c.profile},
        {"circuit",
         {{"n", c.circuit.n},
          {"L", c.circuit.L},
          {"encoding", to_string(c.circuit.encoding)},
          {"betas", c.circuit.betas},
          {"entanglement", entanglement_json(c.circuit.entanglement)},
          {"observable_qubit", c.circuit.observable_qubit}}},
        {"init", {{"sigma", c.init.sigma}, {"seed", c.init.seed}}},
        {"target",
         {{"frequencies", c.target.frequencies},
          {"amplitudes", c.target.amplitudes},
          {"phase_seed", c.target.phase_seed}}},
        {"training",
         {{"lr", c.training.lr},
          {"epochs", c.training.epochs},
          {"eval_every", c.training.eval_every},
          {"grid_size", static_cast<std::uint64_t>(c.training.grid_size)},
          {"omega_max_track", c.training.omega_max_track},
          {"early_stop_loss", c.training.early_stop_loss},
          {"method", to_string(c.training.method)}}},
        {"experiment",
         {{"kind", to_string(c.experiment.kind)},
          {"seeds", c.experiment.seeds},
          {"deltas", c.experiment.deltas},
          {"n_directions", c.experiment.n_directions},
          {"layouts", layouts},
          {"sigma_list", c.experiment.sigma_list},
          {"train_each_sigma", c.experiment.train_each_sigma},
          {"instances", c.experiment.instances},
          {"bound_sigma", c.experiment.bound_sigma},
          {"threshold", c.experiment.threshold},
          {"hold", c.experiment.hold}}},
        {"output", {{"directory", c.output_directory}}},
    };
}

bool finite_nonneg(double v) { return std::isfinite(v) && v >= 0.0; }

void check_spec(const EntanglementSpec &spec, int n, const std::string &path, std::vector<ConfigIssue> &out)
{
    if (spec.count < 0)
        out.push_back({path + ".count", "must be >= 0"});
    else if (spec.kind == EntanglerKind::Random && n > 1 && spec.count > n * (n - 1) / 2)
        out.push_back({path + ".count", "random layouts allow at most n(n-1)/2 = " +
                                            std::to_string(n * (n - 1) / 2) + " pairs per block"});
    else if (spec.kind != EntanglerKind::Random && spec.count != 0)
        out.push_back({path + ".count", "only random layouts take a pair count"});
}

} // namespace

// ---- config API -----------------------------------------------------------

std::vector<ConfigIssue> validate_config(const RunConfig &c)
{
    std::vector<ConfigIssue> out;
    auto add = [&](const std::string &p, const std::string &m) { out.push_back({p, m}); };

    if (c.profile != "desk" && c.profile != "full")
        add("profile", "must be \"desk\" or \"full\"");

    const auto &cc = c.circuit;
    const bool n_ok = cc.n >= 1 && cc.n <= 30;
    if (!n_ok)
        add("circuit.n", "must be in [1, 30]");
    if (cc.L < 1)
        add("circuit.L", "must be >= 1");
    if (cc.encoding == EncodingKind::Custom) {
        if (n_ok && cc.betas.size() != static_cast<std::size_t>(cc.n))
            add("circuit.betas", "custom encoding needs one beta per qubit (" + std::to_string(cc.n) + ")");
        for (std::size_t i = 0; i < cc.betas.size(); ++i)
            if (!(std::isfinite(cc.betas[i]) && cc.betas[i] > 0.0))
                add("circuit.betas[" + std::to_string(i) + "]", "must be finite and > 0");
    } else if (!cc.betas.empty()) {
        add("circuit.betas", "only allowed with the custom encoding");
    }
    if (n_ok) {
        check_spec(cc.entanglement, cc.n, "circuit.entanglement", out);
        if (cc.observable_qubit < 0 || cc.observable_qubit >= cc.n)
            add("circuit.observable_qubit", "must be in [0, " + std::to_string(cc.n - 1) + "]");
    }

    if (!finite_nonneg(c.init.sigma))
        add("init.sigma", "must be finite and >= 0");

    const auto &t = c.target;
    if (t.frequencies.empty())
        add("target.frequencies", "must not be empty");
    std::set<int> seen;
    for (std::size_t i = 0; i < t.frequencies.size(); ++i) {
        const std::string p = "target.frequencies[" + std::to_string(i) + "]";
        if (t.frequencies[i] < 1)
            add(p, "must be a positive integer");
        else if (!seen.insert(t.frequencies[i]).second)
            add(p, "duplicate frequency " + std::to_string(t.frequencies[i]));
        else if (t.frequencies[i] > c.training.omega_max_track)
            add(p, "lies above training.omega_max_track");
    }
    if (!t.amplitudes.empty() && t.amplitudes.size() != t.frequencies.size())
        add("target.amplitudes", "must be empty or match target.frequencies in length");
    for (std::size_t i = 0; i < t.amplitudes.size(); ++i)
        if (!(std::isfinite(t.amplitudes[i]) && t.amplitudes[i] > 0.0))
            add("target.amplitudes[" + std::to_string(i) + "]", "must be finite and > 0");

    const auto &tr = c.training;
    if (!(std::isfinite(tr.lr) && tr.lr > 0.0))
        add("training.lr", "must be finite and > 0");
    if (tr.epochs < 0)
        add("training.epochs", "must be >= 0");
    if (tr.eval_every < 1)
        add("training.eval_every", "must be >= 1");
    if (tr.grid_size < 2)
        add("training.grid_size", "must be >= 2");
    if (tr.omega_max_track < 0)
        add("training.omega_max_track", "must be >= 0");
    else if (2 * static_cast<std::size_t>(tr.omega_max_track) >= tr.grid_size)
        add("training.omega_max_track", "violates the Nyquist limit: must be below grid_size / 2 = " +
                                            format_double(static_cast<double>(tr.grid_size) / 2.0));
    if (!finite_nonneg(tr.early_stop_loss))
        add("training.early_stop_loss", "must be finite and >= 0");

    const auto &ex = c.experiment;
    if (ex.seeds.empty())
        add("experiment.seeds", "must not be empty");
    for (std::size_t i = 0; i < ex.deltas.size(); ++i)
        if (!finite_nonneg(ex.deltas[i]))
            add("experiment.deltas[" + std::to_string(i) + "]", "must be finite and >= 0");
    if (ex.n_directions < 1)
        add("experiment.n_directions", "must be >= 1");
    if (ex.layouts.empty())
        add("experiment.layouts", "must not be empty");
    if (n_ok)
        for (std::size_t i = 0; i < ex.layouts.size(); ++i)
            check_spec(ex.layouts[i], cc.n, "experiment.layouts[" + std::to_string(i) + "]", out);
    if (ex.sigma_list.empty())
        add("experiment.sigma_list", "must not be empty");
    for (std::size_t i = 0; i < ex.sigma_list.size(); ++i)
        if (!finite_nonneg(ex.sigma_list[i]))
            add("experiment.sigma_list[" + std::to_string(i) + "]", "must be finite and >= 0");
    if (ex.instances < 1)
        add("experiment.instances", "must be >= 1");
    if (!(std::isfinite(ex.bound_sigma) && ex.bound_sigma > 0.0))
        add("experiment.bound_sigma", "must be finite and > 0");
    if (!(ex.threshold > 0.0 && ex.threshold <= 1.0))
        add("experiment.threshold", "must be in (0, 1]");
    if (ex.hold < 1)
        add("experiment.hold", "must be >= 1");

    if (c.output_directory.empty())
        add("output.directory", "must not be empty");
    return out;
}

std::string format_issues(const std::vector<ConfigIssue> &issues)
{
    std::string s;
    for (const auto &i : issues) {
        if (!s.empty())
            s += '\n';
        s += (i.path.empty() ? std::string("(root)") : i.path) + ": " + i.message;
    }
    return s;
}

void require_valid(const RunConfig &config)
{
    const auto issues = validate_config(config);
    if (!issues.empty())
        fail(ErrorKind::Config, format_issues(issues));
}

ConfigParse parse_config_text(const std::string &text)
{
    ConfigParse res;
    json root;
    try {
        root = json::parse(text);
    } catch (const json::parse_error &e) {
        res.issues.push_back({"", std::string("malformed JSON: ") + e.what()});
        return res;
    }
    Reader r(res.issues);
    RunConfig cfg;
    if (root.is_object()) {
        if (const json *p = r.child(root, "profile")) {
            std::string name;
            r.read(*p, "profile", name);
            if (name == "desk" || name == "full")
                cfg = profile_by_name(name);
            else if (p->is_string())
                res.issues.push_back({"profile", "must be \"desk\" or \"full\""});
        } else {
            cfg = desk_profile();
        }
    }
    read_config(r, root, cfg);
    if (root.is_object()) {
        // Fields that failed to read keep profile values, so these checks stay meaningful.
        const auto semantic = validate_config(cfg);
        res.issues.insert(res.issues.end(), semantic.begin(), semantic.end());
    }
    if (res.issues.empty())
        res.config = std::move(cfg);
    return res;
}

RunConfig parse_config(const fs::path &path)
{
    const auto parsed = parse_config_text(read_file(path));
    if (!parsed.config)
        fail(ErrorKind::Config, path.string() + ":\n" + format_issues(parsed.issues));
    return *parsed.config;
}

std::string serialize_config(const RunConfig &config) { return config_json(config).dump(2) + "\n"; }

std::string config_hash(const RunConfig &config) { return sha256_hex(config_json(config).dump()); }

// ---- files ----------------------------------------------------------------

std::string sha256_hex(std::string_view bytes)
{
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(), nullptr) != 1)
        fail(ErrorKind::Io, "sha256: digest failed");
    static constexpr char hex[] = "0123456789abcdef";
    std::string out;
    for (unsigned int i = 0; i < len; ++i) {
        out += hex[digest[i] >> 4];
        out += hex[digest[i] & 15];
    }
    return out;
}

std::string format_double(double value)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", value);
    return buf;
}

std::string read_file(const fs::path &path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        fail(ErrorKind::Io, "cannot open " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    if (in.bad())
        fail(ErrorKind::Io, "cannot read " + path.string());
    return ss.str();
}

void write_file_atomic(const fs::path &path, std::string_view bytes)
{
    std::error_code ec;
    if (path.has_parent_path()) {
        fs::create_directories(path.parent_path(), ec);
        if (ec)
            fail(ErrorKind::Io, "cannot create " + path.parent_path().string() + ": " + ec.message());
    }
    fs::path tmp = path;
    tmp += ".tmp." + std::to_string(::getpid());
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out)
            fail(ErrorKind::Io, "cannot write " + tmp.string());
        out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
        out.flush();
        if (!out) {
            fs::remove(tmp, ec);
            fail(ErrorKind::Io, "write failed for " + tmp.string());
        }
    }
    fs::rename(tmp, path, ec);
    if (ec) {
        fs::remove(tmp, ec);
        fail(ErrorKind::Io, "cannot rename onto " + path.string());
    }
}

void write_params(const fs::path &path, std::span<const double> params)
{
    std::string bytes(params.size() * 8, '\0');
    for (std::size_t i = 0; i < params.size(); ++i) {
        auto bits = std::bit_cast<std::uint64_t>(params[i]);
        for (int b = 0; b < 8; ++b)
            bytes[i * 8 + b] = static_cast<char>((bits >> (8 * b)) & 0xff);
    }
    write_file_atomic(path, bytes);
}

ParameterTable read_params(const fs::path &path)
{
    const auto bytes = read_file(path);
    if (bytes.size() % 8 != 0)
        fail(ErrorKind::Io, path.string() + ": size is not a multiple of 8 bytes");
    ParameterTable out(bytes.size() / 8);
    for (std::size_t i = 0; i < out.size(); ++i) {
        std::uint64_t bits = 0;
        for (int b = 0; b < 8; ++b)
            bits |= static_cast<std::uint64_t>(static_cast<unsigned char>(bytes[i * 8 + b])) << (8 * b);
        out[i] = std::bit_cast<double>(bits);
    }
    return out;
}

std::string CsvTable::str() const
{
    std::string s;
    auto line = [&](const std::vector<std::string> &cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (i)
                s += ',';
            s += cells[i];
        }
        s += '\n';
    };
    line(header);
    for (const auto &r : rows)
        line(r);
    return s;
}

std::size_t CsvTable::column(const std::string &name) const
{
    const auto it = std::find(header.begin(), header.end(), name);
    if (it == header.end())
        fail(ErrorKind::Config, "csv: no column '" + name + "'");
    return static_cast<std::size_t>(it - header.begin());
}

CsvTable parse_csv(const std::string &text)
{
    CsvTable t;
    std::istringstream in(text);
    std::string line;
    bool first = true;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        if (line.empty())
            continue;
        std::vector<std::string> cells;
        std::string cell;
        std::istringstream ls(line);
        while (std::getline(ls, cell, ','))
            cells.push_back(cell);
        if (line.back() == ',')
            cells.emplace_back();
        if (first) {
            t.header = std::move(cells);
            first = false;
        } else {
            if (cells.size() != t.header.size())
                fail(ErrorKind::Config, "csv: row " + std::to_string(t.rows.size() + 1) + " has " +
                                            std::to_string(cells.size()) + " cells, header has " +
                                            std::to_string(t.header.size()));
            t.rows.push_back(std::move(cells));
        }
    }
    if (first)
        fail(ErrorKind::Config, "csv: missing header row");
    return t;
}

// ---- experiment outputs ---------------------------------------------------

namespace {

std::string utc_now()
{
    const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

std::string fmt(double v) { return format_double(v); }

std::string fmt_omega(double w)
{
    return w == std::floor(w) ? std::to_string(static_cast<long long>(w)) : format_double(w);
}

json json_number(double v)
{
    return std::isfinite(v) ? json(v) : json(nullptr);
}

class OutputDir {
public:
    OutputDir(fs::path dir) : dir_(std::move(dir)) {}

    void write(const std::string &name, std::string_view bytes)
    {
        write_file_atomic(dir_ / name, bytes);
        files_.push_back(name);
    }

    void csv(const std::string &name, const CsvTable &t) { write(name, t.str()); }
    void json_file(const std::string &name, const json &j) { write(name, j.dump(2) + "\n"); }
    void params(const std::string &name, std::span<const double> p)
    {
        write_params(dir_ / name, p);
        files_.push_back(name);
    }

    const fs::path &dir() const { return dir_; }
    const std::vector<std::string> &files() const { return files_; }

private:
    fs::path dir_;
    std::vector<std::string> files_;
};

CsvTable trace_csv(const TrainingTrace &t)
{
    CsvTable c;
    c.header = {"epoch", "loss"};
    for (int w : t.target_frequencies)
        c.header.push_back("omega_" + std::to_string(w));
    for (std::size_t e = 0; e < t.eval_epochs.size(); ++e) {
        std::vector<std::string> row{std::to_string(t.eval_epochs[e]), fmt(t.losses[e])};
        for (double v : t.normalized[e])
            row.push_back(fmt(v));
        c.rows.push_back(std::move(row));
    }
    return c;
}

/// |c_omega| for omega = 0 .. track at every evaluation.
CsvTable coefficients_csv(const TrainingTrace &t)
{
    CsvTable c;
    c.header = {"epoch", "omega", "re", "im", "abs"};
    for (std::size_t e = 0; e < t.snapshots.size(); ++e) {
        const auto &s = t.snapshots[e];
        for (int w = 0; w <= s.omega_max; ++w) {
            const auto v = s.at(w);
            c.rows.push_back({std::to_string(t.eval_epochs[e]), std::to_string(w), fmt(v.real()), fmt(v.imag()),
                              fmt(std::abs(v))});
        }
    }
    return c;
}

json trace_summary(const TrainingTrace &t, std::uint64_t seed, const RunConfig &cfg)
{
    json thr = json::object();
    for (int w : t.target_frequencies) {
        const auto e = epochs_to_threshold(t, w, cfg.experiment.threshold, cfg.experiment.hold);
        thr[std::to_string(w)] = e ? json(*e) : json(nullptr);
    }
    return json{{"seed", seed},
                {"status", to_string(t.status)},
                {"message", t.message},
                {"evaluations", t.eval_epochs.size()},
                {"final_epoch", t.eval_epochs.empty() ? 0 : t.eval_epochs.back()},
                {"final_loss", t.losses.empty() ? json(nullptr) : json_number(t.losses.back())},
                {"epochs_to_threshold", thr}};
}

void write_traces(OutputDir &out, const std::vector<std::uint64_t> &seeds, const std::vector<TrainingTrace> &traces,
                  json &summary, const RunConfig &cfg)
{
    json runs = json::array();
    for (std::size_t i = 0; i < seeds.size(); ++i) {
        const std::string tag = "_seed" + std::to_string(seeds[i]);
        out.csv("trace" + tag + ".csv", trace_csv(traces[i]));
        out.csv("coefficients" + tag + ".csv", coefficients_csv(traces[i]));
        out.params("params" + tag + ".bin", traces[i].final_params);
        runs.push_back(trace_summary(traces[i], seeds[i], cfg));
    }
    summary["runs"] = runs;
}

CsvTable perturbation_csv(const PerturbationReport &rep)
{
    CsvTable c;
    c.header = {"delta"};
    for (int w : rep.omegas)
        c.header.push_back("omega_" + std::to_string(w));
    for (std::size_t d = 0; d < rep.deltas.size(); ++d) {
        std::vector<std::string> row{fmt(rep.deltas[d])};
        for (double v : rep.normalized[d])
            row.push_back(std::isfinite(v) ? fmt(v) : std::string("undefined"));
        c.rows.push_back(std::move(row));
    }
    return c;
}

void run_redundancy(const RunConfig &cfg, OutputDir &out, json &summary)
{
    const auto circuit = build_circuit(cfg.circuit);
    const auto spec = redundancy_profile(circuit.encoding, circuit.L);
    const BigCount total = spec.total();
    CsvTable c;
    c.header = {"omega", "redundancy", "redundancy_normalized"};
    for (const auto &[key, count] : spec.redundancy) {
        c.rows.push_back({fmt_omega(spec.omega(key)), to_decimal(count), fmt(to_double(count) / to_double(total))});
    }
    out.csv("spectrum.csv", c);
    summary["lattice_scale"] = spec.scale;
    summary["max_frequency"] = spec.max_frequency();
    summary["support_size"] = spec.redundancy.size();
    summary["total_pairs"] = to_decimal(total);
    summary["betas"] = circuit.encoding.betas;
}

void run_train(const RunConfig &cfg, OutputDir &out, json &summary, const LogSink &log)
{
    const auto res = train_experiment(cfg);
    write_traces(out, res.seeds, res.traces, summary, cfg);
    if (log)
        for (std::size_t i = 0; i < res.seeds.size(); ++i)
            log("seed " + std::to_string(res.seeds[i]) + ": " + to_string(res.traces[i].status) + ", final loss " +
                fmt(res.traces[i].losses.back()));
}

void run_robustness(const RunConfig &cfg, OutputDir &out, json &summary)
{
    const auto res = robustness_experiment(cfg);
    write_traces(out, res.seeds, res.traces, summary, cfg);
    for (std::size_t i = 0; i < res.seeds.size(); ++i)
        out.csv("robustness_seed" + std::to_string(res.seeds[i]) + ".csv", perturbation_csv(res.reports[i]));
    out.csv("robustness.csv", perturbation_csv(res.mean));
    json base = json::object();
    for (std::size_t k = 0; k < res.mean.omegas.size(); ++k)
        base[std::to_string(res.mean.omegas[k])] = res.mean.base_magnitudes[k];
    summary["mean_base_magnitudes"] = base;
    summary["directions_per_delta"] = res.mean.samples_per_delta;
}

void run_entangle(const RunConfig &cfg, OutputDir &out, json &summary)
{
    const auto &ex = cfg.experiment;
    const auto table = entanglement_sweep(cfg, ex.layouts, ex.seeds);
    CsvTable rows;
    rows.header = {"layout", "cnots_per_layer", "seed", "omega", "epochs"};
    for (const auto &r : table.rows)
        rows.rows.push_back({r.layout, fmt(r.cnots_per_layer), std::to_string(r.seed), std::to_string(r.omega),
                             r.epochs ? std::to_string(*r.epochs) : std::string("did-not-converge")});
    out.csv("convergence.csv", rows);
    CsvTable sum;
    sum.header = {"layout", "cnots_per_layer", "omega", "runs", "did_not_converge", "mean_epochs"};
    for (const auto &s : table.summary)
        sum.rows.push_back({s.layout, fmt(s.cnots_per_layer), std::to_string(s.omega), std::to_string(s.runs),
                            std::to_string(s.did_not_converge), fmt(s.mean_epochs)});
    out.csv("convergence_summary.csv", sum);
    summary["eval_every"] = table.eval_every;
    summary["epoch_budget"] = table.epoch_budget;
    summary["mean_epochs_note"] = "runs that never converge count at the epoch budget";
}

void run_init(const RunConfig &cfg, OutputDir &out, json &summary)
{
    const auto &ex = cfg.experiment;
    const auto table = init_sweep(cfg, ex.sigma_list, ex.seeds, ex.train_each_sigma);
    CsvTable c;
    c.header = {"sigma", "variance", "omega", "mean_power", "mean_magnitude", "mean_epochs", "did_not_converge"};
    for (const auto &r : table.rows)
        c.rows.push_back({fmt(r.sigma), fmt(r.variance), std::to_string(r.omega), fmt(r.mean_power),
                          fmt(r.mean_magnitude), r.mean_epochs ? fmt(*r.mean_epochs) : std::string(),
                          std::to_string(r.did_not_converge)});
    out.csv("init_sweep.csv", c);
    summary["sigma_convention"] = "sigma is the standard deviation of N(0, sigma^2); variance = sigma^2";
}

void run_bounds(const RunConfig &cfg, OutputDir &out, json &summary)
{
    const auto res = verify_bounds(cfg);
    CsvTable c;
    c.header = {"instance", "parameter", "omega", "lhs", "rhs", "slack"};
    for (std::size_t i = 0; i < res.report.rows.size(); ++i) {
        const auto &r = res.report.rows[i];
        c.rows.push_back({std::to_string(res.instance_of_row[i]), std::to_string(r.parameter), fmt_omega(r.omega),
                          fmt(r.lhs), fmt(r.rhs), fmt(r.slack)});
    }
    out.csv("bounds.csv", c);
    summary["instances"] = res.instances;
    summary["rows"] = res.report.rows.size();
    summary["violations"] = res.report.violations;
    summary["tolerance"] = res.report.tolerance;
    summary["min_slack"] = json_number(res.report.min_slack);
}

} // namespace

RunOutputs run_experiment(const RunConfig &config, const LogSink &log)
{
    require_valid(config);
    const std::string started = utc_now();
    OutputDir out(config.output_directory);
    out.write("config.json", serialize_config(config));

    json summary{{"kind", to_string(config.experiment.kind)}, {"config_hash", config_hash(config)}};
    if (log)
        log(std::string("running ") + to_string(config.experiment.kind) + " into " + out.dir().string());
    switch (config.experiment.kind) {
    case ExperimentKind::Redundancy: run_redundancy(config, out, summary); break;
    case ExperimentKind::Train: run_train(config, out, summary, log); break;
    case ExperimentKind::Robustness: run_robustness(config, out, summary); break;
    case ExperimentKind::EntangleSweep: run_entangle(config, out, summary); break;
    case ExperimentKind::InitSweep: run_init(config, out, summary); break;
    case ExperimentKind::VerifyBounds: run_bounds(config, out, summary); break;
    }
    out.json_file("summary.json", summary);

    json files = json::array();
    for (const auto &name : out.files()) {
        const auto bytes = read_file(out.dir() / name);
        files.push_back({{"path", name}, {"bytes", bytes.size()}, {"sha256", sha256_hex(bytes)}});
    }
    const json manifest{{"config_hash", config_hash(config)},
                        {"tool_version", kToolVersion},
                        {"started_at", started},
                        {"finished_at", utc_now()},
                        {"files", files}};
    write_file_atomic(out.dir() / "manifest.json", manifest.dump(2) + "\n");

    RunOutputs res{out.dir(), out.files()};
    res.files.push_back("manifest.json");
    if (log)
        log("wrote " + std::to_string(res.files.size()) + " files");
    return res;
}

// ---- plotting -------------------------------------------------------------

namespace {

/// Piecewise-linear approximation of the viridis map.
std::string color(double t)
{
    static constexpr double stops[][3] = {{68, 1, 84},     {59, 82, 139},  {33, 145, 140},
                                          {94, 201, 98},   {253, 231, 37}};
    t = std::clamp(t, 0.0, 1.0) * 4.0;
    const int i = std::min(3, static_cast<int>(t));
    const double f = t - i;
    char buf[8];
    std::snprintf(buf, sizeof buf, "#%02x%02x%02x",
                  static_cast<int>(std::lround(stops[i][0] + f * (stops[i + 1][0] - stops[i][0]))),
                  static_cast<int>(std::lround(stops[i][1] + f * (stops[i + 1][1] - stops[i][1]))),
                  static_cast<int>(std::lround(stops[i][2] + f * (stops[i + 1][2] - stops[i][2]))));
    return buf;
}

double parse_cell(const std::string &s, const std::string &what)
{
    char *end = nullptr;
    const double v = std::strtod(s.c_str(), &end);
    if (s.empty() || *end != '\0')
        fail(ErrorKind::Config, "plot: cannot read " + what + " value '" + s + "'");
    return v;
}

} // namespace

std::string render_trace_svg(const CsvTable &trace)
{
    const std::size_t epoch_col = trace.column("epoch");
    std::vector<std::size_t> cols;
    std::vector<std::string> labels;
    for (std::size_t i = 0; i < trace.header.size(); ++i)
        if (trace.header[i].rfind("omega_", 0) == 0) {
            cols.push_back(i);
            labels.push_back(trace.header[i].substr(6));
        }
    if (cols.empty())
        fail(ErrorKind::Config, "plot: trace has no omega_* columns");
    if (trace.rows.empty())
        fail(ErrorKind::Config, "plot: trace has no rows");

    const std::size_t T = trace.rows.size(), K = cols.size();
    std::vector<double> epochs(T);
    std::vector<std::vector<double>> v(T, std::vector<double>(K));
    double vmax = 1.0;
    for (std::size_t e = 0; e < T; ++e) {
        epochs[e] = parse_cell(trace.rows[e][epoch_col], "epoch");
        for (std::size_t k = 0; k < K; ++k) {
            v[e][k] = parse_cell(trace.rows[e][cols[k]], trace.header[cols[k]]);
            if (std::isfinite(v[e][k]))
                vmax = std::max(vmax, v[e][k]);
        }
    }

    const double left = 70, top = 30, width = 640, height = 24.0 * static_cast<double>(K), bar_gap = 20,
                 bar_w = 18;
    const double total_w = left + width + bar_gap + bar_w + 70, total_h = top + height + 60;
    const double cell_w = width / static_cast<double>(T), cell_h = height / static_cast<double>(K);
    std::ostringstream s;
    s << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << total_w << "\" height=\"" << total_h
      << "\" viewBox=\"0 0 " << total_w << " " << total_h << "\" font-family=\"sans-serif\" font-size=\"11\">\n"
      << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    // Frequencies run bottom to top, epochs left to right.
    for (std::size_t e = 0; e < T; ++e)
        for (std::size_t k = 0; k < K; ++k) {
            const double x = left + cell_w * static_cast<double>(e);
            const double y = top + cell_h * static_cast<double>(K - 1 - k);
            const std::string fill = std::isfinite(v[e][k]) ? color(v[e][k] / vmax) : std::string("#cccccc");
            s << "<rect x=\"" << x << "\" y=\"" << y << "\" width=\"" << cell_w + 0.05 << "\" height=\""
              << cell_h + 0.05 << "\" fill=\"" << fill << "\"/>\n";
        }
    s << "<rect x=\"" << left << "\" y=\"" << top << "\" width=\"" << width << "\" height=\"" << height
      << "\" fill=\"none\" stroke=\"black\"/>\n";
    for (std::size_t k = 0; k < K; ++k)
        s << "<text x=\"" << left - 6 << "\" y=\"" << top + cell_h * (static_cast<double>(K - 1 - k) + 0.5) + 4
          << "\" text-anchor=\"end\">" << labels[k] << "</text>\n";
    for (int i = 0; i <= 4; ++i) {
        const double frac = i / 4.0;
        const double epoch = epochs.front() + frac * (epochs.back() - epochs.front());
        s << "<text x=\"" << left + frac * width << "\" y=\"" << top + height + 16 << "\" text-anchor=\"middle\">"
          << std::lround(epoch) << "</text>\n";
    }
    s << "<text x=\"" << left + width / 2 << "\" y=\"" << top + height + 36
      << "\" text-anchor=\"middle\">epoch</text>\n"
      << "<text x=\"18\" y=\"" << top + height / 2 << "\" text-anchor=\"middle\" transform=\"rotate(-90 18 "
      << top + height / 2 << ")\">frequency</text>\n";
    // Colorbar: normalized magnitude |c_omega| / target amplitude.
    const double bx = left + width + bar_gap;
    const int steps = 50;
    for (int i = 0; i < steps; ++i) {
        const double t = (i + 0.5) / steps;
        s << "<rect x=\"" << bx << "\" y=\"" << top + height * (1.0 - static_cast<double>(i + 1) / steps)
          << "\" width=\"" << bar_w << "\" height=\"" << height / steps + 0.05 << "\" fill=\"" << color(t)
          << "\"/>\n";
    }
    s << "<rect x=\"" << bx << "\" y=\"" << top << "\" width=\"" << bar_w << "\" height=\"" << height
      << "\" fill=\"none\" stroke=\"black\"/>\n"
      << "<text x=\"" << bx + bar_w + 4 << "\" y=\"" << top + 4 << "\">" << format_double(vmax) << "</text>\n"
      << "<text x=\"" << bx + bar_w + 4 << "\" y=\"" << top + height + 4 << "\">0</text>\n"
      << "<text x=\"" << left << "\" y=\"18\">normalized magnitude |c_omega| / A_omega</text>\n"
      << "</svg>\n";
    return s.str();
}

void plot_trace(const fs::path &csv_in, const fs::path &svg_out)
{
    write_file_atomic(svg_out, render_trace_svg(parse_csv(read_file(csv_in))));
}

} // namespace slab
