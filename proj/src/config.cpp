// Copyright 2026 The aqec Authors
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

#include "aqec/config.hpp"

#include <cmath>
#include <map>
#include <numbers>
#include <set>

#include "aqec/errors.hpp"
#include "aqec/textrec.hpp"

namespace aqec {

namespace {

using textrec::Value;

enum class Dim { None, Frequency, Rate, Time };

constexpr double kMhz = 2.0 * std::numbers::pi * 1e-3;

double unit_factor(Dim dim, const std::string& unit, int line, const std::string& key) {
    auto bad = [&](const char* expected) -> double {
        throw ValidationError("line " + std::to_string(line) + ": '" + key + "' needs a unit (" + expected +
                              "), got '" + unit + "'");
    };
    switch (dim) {
        case Dim::None:
            if (!unit.empty()) bad("none");
            return 1.0;
        case Dim::Frequency:
            if (unit == "MHz") return kMhz;
            if (unit == "rad_per_ns") return 1.0;
            return bad("MHz or rad_per_ns");
        case Dim::Rate:
            if (unit == "per_us") return 1e-3;
            if (unit == "per_ns") return 1.0;
            return bad("per_us or per_ns");
        case Dim::Time:
            if (unit == "ns") return 1.0;
            if (unit == "us") return 1e3;
            return bad("ns or us");
    }
    return 1.0;
}

const char* internal_unit(Dim dim) {
    switch (dim) {
        case Dim::Frequency: return "rad_per_ns";
        case Dim::Rate: return "per_ns";
        case Dim::Time: return "ns";
        default: return "";
    }
}

class Reader {
   public:
    Reader(const textrec::Section* sec, std::set<std::string> allowed) : sec_(sec) {
        if (!sec_) return;
        for (const auto& e : sec_->entries)
            if (!allowed.count(e.key))
                throw ValidationError("line " + std::to_string(e.value.line) + ": unknown key '" + e.key +
                                      "' in [" + sec_->name + "]");
    }

    void number(const std::string& key, Dim dim, double& out) const {
        const Value* v = find(key);
        if (!v) return;
        if (v->kind != Value::Kind::Number) fail(*v, key, "expects a number");
        out = v->number * unit_factor(dim, v->unit, v->line, key);
    }
    void integer(const std::string& key, int& out) const {
        double x = out;
        number(key, Dim::None, x);
        if (x != std::floor(x) || std::abs(x) > 1e9) fail(*find(key), key, "expects an integer");
        out = static_cast<int>(x);
    }
    void list(const std::string& key, Dim dim, std::vector<double>& out) const {
        const Value* v = find(key);
        if (!v) return;
        if (v->kind != Value::Kind::List) fail(*v, key, "expects a list");
        const double f = unit_factor(dim, v->unit, v->line, key);
        out.clear();
        for (double x : v->list) out.push_back(x * f);
    }
    void word(const std::string& key, std::string& out) const {
        const Value* v = find(key);
        if (!v) return;
        if (v->kind != Value::Kind::Word || !v->unit.empty()) fail(*v, key, "expects a word or quoted string");
        out = v->word;
    }
    void flag(const std::string& key, bool& out) const {
        std::string w = out ? "true" : "false";
        word(key, w);
        if (w != "true" && w != "false") fail(*find(key), key, "expects true or false");
        out = w == "true";
    }

   private:
    const Value* find(const std::string& key) const { return sec_ ? sec_->find(key) : nullptr; }
    [[noreturn]] static void fail(const Value& v, const std::string& key, const std::string& msg) {
        throw ValidationError("line " + std::to_string(v.line) + ": '" + key + "' " + msg);
    }
    const textrec::Section* sec_;
};

void put(textrec::Section& s, const std::string& key, double x, Dim dim) {
    s.set(key, Value::of(x, internal_unit(dim)));
}
void put(textrec::Section& s, const std::string& key, const std::vector<double>& xs, Dim dim) {
    s.set(key, Value::of(xs, internal_unit(dim)));
}
void put_word(textrec::Section& s, const std::string& key, const std::string& w) {
    if (!w.empty()) s.set(key, Value::of_word(w));
}

void require(bool ok, const std::string& msg) {
    if (!ok) throw ValidationError(msg);
}

}  // namespace

ExperimentConfig parse_config(const std::string& text) {
    const auto doc = textrec::Document::parse(text);
    static const std::set<std::string> known{"model", "pulse", "optimizer", "schedule", "sweep",
                                             "fixed", "fit",   "output"};
    for (const auto& s : doc.sections)
        if (!known.count(s.name))
            throw ValidationError("line " + std::to_string(s.line) + ": unknown section [" + s.name + "]");
    if (!doc.find("model")) throw ValidationError("missing section [model]");

    ExperimentConfig c;
    const Reader m(doc.find("model"), {"kind", "delta", "j", "w", "omega_s", "t1", "gamma_lossy"});
    m.word("kind", c.model.kind);
    m.number("delta", Dim::Frequency, c.model.delta);
    m.number("j", Dim::Frequency, c.model.j);
    m.number("w", Dim::Frequency, c.model.w);
    m.number("omega_s", Dim::Frequency, c.model.omega_s);
    m.number("t1", Dim::Time, c.model.t1);
    m.number("gamma_lossy", Dim::Rate, c.model.gamma_lossy);

    const Reader p(doc.find("pulse"), {"n_modes", "t_p", "seed", "file"});
    p.integer("n_modes", c.pulse.n_modes);
    p.number("t_p", Dim::Time, c.pulse.t_p);
    p.number("seed", Dim::Frequency, c.pulse.seed);
    p.word("file", c.pulse.file);

    const Reader o(doc.find("optimizer"), {"epsilon", "learning_rate", "max_iters", "target_fidelity", "target"});
    o.number("epsilon", Dim::Frequency, c.optimizer.epsilon);
    o.number("learning_rate", Dim::None, c.optimizer.learning_rate);
    o.integer("max_iters", c.optimizer.max_iters);
    o.number("target_fidelity", Dim::None, c.optimizer.target_fidelity);
    o.word("target", c.optimizer.target);

    const Reader s(doc.find("schedule"), {"t_r", "t_r_grid", "n_cycles", "reset_rate"});
    s.number("t_r", Dim::Time, c.schedule.t_r);
    s.list("t_r_grid", Dim::Time, c.schedule.t_r_grid);
    s.integer("n_cycles", c.schedule.n_cycles);
    s.number("reset_rate", Dim::Rate, c.schedule.reset_rate);

    const Reader w(doc.find("sweep"), {"kind", "t1", "deltas"});
    w.word("kind", c.sweep.kind);
    w.list("t1", Dim::Time, c.sweep.t1);
    w.list("deltas", Dim::Frequency, c.sweep.deltas);

    const Reader f(doc.find("fixed"), {"omega", "gamma_s", "omega_s", "search"});
    f.list("omega", Dim::Frequency, c.fixed.omega);
    f.list("gamma_s", Dim::Rate, c.fixed.gamma_s);
    f.list("omega_s", Dim::Frequency, c.fixed.omega_s);
    f.flag("search", c.fixed.search);

    const Reader t(doc.find("fit"), {"input", "x_column", "y_column", "model"});
    t.word("input", c.fit.input);
    t.word("x_column", c.fit.x_column);
    t.word("y_column", c.fit.y_column);
    t.word("model", c.fit.model);

    const Reader out(doc.find("output"), {"dir", "workers"});
    out.word("dir", c.output_dir);
    out.integer("workers", c.workers);

    c.validate();
    return c;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
    if (!std::filesystem::exists(path)) throw ValidationError("config file '" + path.string() + "' does not exist");
    return parse_config(textrec::read_file(path.string()));
}

std::string write_config(const ExperimentConfig& c) {
    textrec::Document doc;
    auto& m = doc.section("model");
    put_word(m, "kind", c.model.kind);
    put(m, "delta", c.model.delta, Dim::Frequency);
    put(m, "j", c.model.j, Dim::Frequency);
    put(m, "w", c.model.w, Dim::Frequency);
    put(m, "omega_s", c.model.omega_s, Dim::Frequency);
    put(m, "t1", c.model.t1, Dim::Time);
    put(m, "gamma_lossy", c.model.gamma_lossy, Dim::Rate);

    auto& p = doc.section("pulse");
    put(p, "n_modes", c.pulse.n_modes, Dim::None);
    put(p, "t_p", c.pulse.t_p, Dim::Time);
    put(p, "seed", c.pulse.seed, Dim::Frequency);
    put_word(p, "file", c.pulse.file);

    auto& o = doc.section("optimizer");
    put(o, "epsilon", c.optimizer.epsilon, Dim::Frequency);
    put(o, "learning_rate", c.optimizer.learning_rate, Dim::None);
    put(o, "max_iters", c.optimizer.max_iters, Dim::None);
    put(o, "target_fidelity", c.optimizer.target_fidelity, Dim::None);
    put_word(o, "target", c.optimizer.target);

    auto& s = doc.section("schedule");
    put(s, "t_r", c.schedule.t_r, Dim::Time);
    put(s, "t_r_grid", c.schedule.t_r_grid, Dim::Time);
    put(s, "n_cycles", c.schedule.n_cycles, Dim::None);
    put(s, "reset_rate", c.schedule.reset_rate, Dim::Rate);

    auto& w = doc.section("sweep");
    put_word(w, "kind", c.sweep.kind);
    put(w, "t1", c.sweep.t1, Dim::Time);
    put(w, "deltas", c.sweep.deltas, Dim::Frequency);

    auto& f = doc.section("fixed");
    put(f, "omega", c.fixed.omega, Dim::Frequency);
    put(f, "gamma_s", c.fixed.gamma_s, Dim::Rate);
    put(f, "omega_s", c.fixed.omega_s, Dim::Frequency);
    put_word(f, "search", c.fixed.search ? "true" : "false");

    auto& t = doc.section("fit");
    put_word(t, "input", c.fit.input);
    put_word(t, "x_column", c.fit.x_column);
    put_word(t, "y_column", c.fit.y_column);
    put_word(t, "model", c.fit.model);

    auto& out = doc.section("output");
    put_word(out, "dir", c.output_dir);
    put(out, "workers", c.workers, Dim::None);
    return doc.to_text();
}

void ExperimentConfig::validate() const {
    static const std::set<std::string> kinds{"single_qubit", "three_qubit", "vslq"};
    require(kinds.count(model.kind) > 0, "[model] kind must be single_qubit, three_qubit or vslq");
    require(model.delta >= 0.0 && model.j >= 0.0 && model.w >= 0.0 && model.omega_s >= 0.0,
            "[model] frequencies must be non-negative");
    require(model.t1 >= 0.0, "[model] t1 must be non-negative");
    require(model.gamma_lossy >= 0.0, "[model] gamma_lossy must be non-negative");
    if (model.kind == "single_qubit") require(model.delta > 0.0, "[model] single_qubit needs delta > 0");
    if (model.kind == "three_qubit") require(model.j > 0.0, "[model] three_qubit needs j > 0");
    if (model.kind == "vslq") require(model.w > 0.0 && model.delta > 0.0, "[model] vslq needs w > 0 and delta > 0");

    require(pulse.n_modes >= 1, "[pulse] n_modes must be at least 1");
    require(pulse.t_p > 0.0, "[pulse] t_p must be positive");
    require(pulse.seed >= 0.0, "[pulse] seed must be non-negative");

    require(optimizer.epsilon > 0.0, "[optimizer] epsilon must be positive");
    require(optimizer.learning_rate > 0.0, "[optimizer] learning_rate must be positive");
    require(optimizer.max_iters >= 0, "[optimizer] max_iters must be non-negative");
    require(optimizer.target_fidelity > 0.0 && optimizer.target_fidelity <= 1.0,
            "[optimizer] target_fidelity must lie in (0, 1]");

    require(schedule.t_r >= 0.0, "[schedule] t_r must be non-negative");
    for (double t : schedule.t_r_grid) require(t >= 0.0, "[schedule] t_r_grid entries must be non-negative");
    require(schedule.n_cycles >= 0, "[schedule] n_cycles must be non-negative");
    require(schedule.reset_rate >= 0.0, "[schedule] reset_rate must be non-negative");

    static const std::set<std::string> sweeps{"", "residual", "vslq_fixed", "vslq_pulse_reset", "three_qubit",
                                              "delta"};
    require(sweeps.count(sweep.kind) > 0,
            "[sweep] kind must be residual, vslq_fixed, vslq_pulse_reset, three_qubit or delta");
    for (double t : sweep.t1) require(t > 0.0, "[sweep] t1 entries must be positive");
    for (double d : sweep.deltas) require(d > 0.0, "[sweep] deltas must be positive");
    for (const auto* v : {&fixed.omega, &fixed.gamma_s, &fixed.omega_s})
        for (double x : *v) require(x > 0.0, "[fixed] values must be positive");

    static const std::set<std::string> fits{"exp", "exp_with_offset", "power_law", "power_law_offset"};
    require(fits.count(fit.model) > 0, "[fit] model must be exp, exp_with_offset, power_law or power_law_offset");
    require(!output_dir.empty(), "[output] dir must not be empty");
    require(workers >= 1, "[output] workers must be at least 1");
}

ModelSpec ExperimentConfig::model_spec() const {
    const double gamma = model.t1 > 0.0 ? 1.0 / model.t1 : 0.0;
    if (model.kind == "single_qubit") return SingleQubitModel{model.delta, gamma, model.gamma_lossy};
    if (model.kind == "three_qubit") return ThreeQubitModel{model.j, gamma, model.gamma_lossy};
    VslqModel v = VslqModel::with_default_shadow(model.w, model.delta, gamma, model.gamma_lossy);
    if (model.omega_s > 0.0) v.omega_s = model.omega_s;
    return v;
}

ModelSpec ExperimentConfig::lossless_spec() const {
    ExperimentConfig c = *this;
    c.model.t1 = 0.0;
    c.model.gamma_lossy = 0.0;
    return c.model_spec();
}

OptimizerConfig ExperimentConfig::optimizer_config() const {
    OptimizerConfig o;
    o.epsilon = optimizer.epsilon;
    o.learning_rate = optimizer.learning_rate;
    o.max_iters = optimizer.max_iters;
    o.target_fidelity = optimizer.target_fidelity;
    o.seed_c1x = pulse.seed;
    o.n_modes = pulse.n_modes;
    o.t_p = pulse.t_p;
    o.workers = workers;
    return o;
}

std::uint64_t config_hash(const ExperimentConfig& config) {
    ExperimentConfig c = config;
    c.workers = 1;
    c.output_dir = "out";
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char ch : write_config(c)) {
        h ^= ch;
        h *= 1099511628211ULL;
    }
    return h;
}

// ---------------------------------------------------------------------------

namespace {

constexpr const char* kSingleQubit = R"([model]
kind = single_qubit
delta = 350 MHz

[pulse]
n_modes = 20
t_p = 20 ns
seed = 20 MHz

[optimizer]
target_fidelity = 0.999
max_iters = 2000
)";

constexpr const char* kThreeQubit = R"([model]
kind = three_qubit
j = 20 MHz

[pulse]
n_modes = 20
t_p = 40 ns
seed = 10 MHz

[optimizer]
target = both
target_fidelity = 0.99999
max_iters = 4000
)";

constexpr const char* kVslq = R"([model]
kind = vslq
w = 35 MHz
delta = 350 MHz

[pulse]
n_modes = 20
t_p = 40 ns
seed = 10 MHz

[optimizer]
target_fidelity = 0.999
max_iters = 2000
)";

constexpr const char* kTableOne = R"(
[sweep]
kind = vslq_fixed
t1 = [5, 10, 15, 20, 25, 30, 35, 40, 45, 50, 55, 60] us

[fixed]
omega = [2.94, 2.15, 1.81, 1.59, 1.43, 1.31, 1.22, 1.14, 1.08, 1.02, 0.98, 0.93] MHz
gamma_s = [24.66, 18.40, 15.32, 13.26, 12.09, 11.09, 10.30, 9.67, 9.15, 8.73, 8.38, 8.04] per_us
omega_s = [209.75, 209.83, 209.90, 209.92, 209.94, 209.95, 209.96, 209.96, 209.96, 209.97, 209.97, 209.97] MHz
)";

const std::map<std::string, std::string>& presets() {
    static const std::map<std::string, std::string> p{
        {"single-qubit-fig2", kSingleQubit},
        {"three-qubit-fig5", kThreeQubit},
        {"vslq-fig6", kVslq},
        {"fig3", std::string(kSingleQubit) + R"(
[schedule]
t_r_grid = [0, 10, 20, 30, 40, 50, 60, 80, 100, 120, 150, 200, 250, 300, 400] ns
reset_rate = 35 per_us

[sweep]
kind = residual
t1 = [5, 10, 15, 20, 25, 30, 35, 40, 45, 50, 55, 60] us
)"},
        {"fig4", R"([model]
kind = single_qubit
delta = 350 MHz

[pulse]
n_modes = 20
t_p = 20 ns
seed = 20 MHz

[optimizer]
target_fidelity = 0.99999
max_iters = 100

[sweep]
kind = delta
deltas = [100, 200, 350] MHz
)"},
        {"fig5", std::string(kThreeQubit) + R"(
[schedule]
t_r_grid = [0, 10, 20, 40, 60, 80, 120] ns
reset_rate = 30 per_us

[sweep]
kind = three_qubit
t1 = [5, 10, 20, 40, 60, 80, 100] us
)"},
        {"fig6", std::string(kVslq) + R"(
[schedule]
t_r_grid = [20, 40, 60, 80, 100, 150, 200] ns
reset_rate = 35 per_us

[sweep]
kind = vslq_pulse_reset
t1 = [5, 10, 15, 20, 25, 30, 35, 40, 45, 50, 55, 60] us
)" + std::string(kTableOne).substr(std::string(kTableOne).find("[fixed]"))},
        {"fig7", std::string(kVslq) + R"(
[schedule]
t_r_grid = [20, 40, 60, 80, 100, 150, 200] ns
reset_rate = 35 per_us

[sweep]
kind = vslq_pulse_reset
t1 = [30, 60] us

[fixed]
omega = [1.31, 0.93] MHz
gamma_s = [11.09, 8.04] per_us
omega_s = [209.95, 209.97] MHz
)"},
        {"table1", std::string(kVslq) + kTableOne},
    };
    return p;
}

}  // namespace

std::string preset_text(const std::string& name) {
    const auto& p = presets();
    const auto it = p.find(name);
    if (it == p.end()) throw ValidationError("unknown preset '" + name + "'");
    return it->second;
}

std::vector<std::string> preset_names() {
    std::vector<std::string> out;
    for (const auto& [k, v] : presets()) out.push_back(k);
    return out;
}

}  // namespace aqec
