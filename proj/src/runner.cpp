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

#include "aqec/runner.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <numbers>
#include <sstream>

#include "aqec/analysis.hpp"
#include "aqec/counterterm.hpp"
#include "aqec/dynamics.hpp"
#include "aqec/errors.hpp"
#include "aqec/experiments.hpp"
#include "aqec/optimizer.hpp"
#include "aqec/parallel.hpp"
#include "aqec/textrec.hpp"

namespace aqec {

namespace fs = std::filesystem;

namespace {

constexpr double kMhz = 2.0 * std::numbers::pi * 1e-3;

double to_mhz(double w) { return w / kMhz; }
double to_per_us(double g) { return g * 1e3; }
double to_us(double t) { return t * 1e-3; }

std::string utc_now() {
    const std::time_t t = std::time(nullptr);
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

std::string hex64(std::uint64_t h) {
    char buf[20];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c == '\n' ? ' ' : c;
    }
    return out + "\"";
}

std::vector<std::string> lossy_channels(const std::string& kind) {
    if (kind == "single_qubit") return {"r"};
    if (kind == "three_qubit") return {"r1", "r2", "r3"};
    return {"sl", "sr"};
}

std::vector<double> grid_or_single(const ExperimentConfig& c) {
    return c.schedule.t_r_grid.empty() ? std::vector<double>{c.schedule.t_r} : c.schedule.t_r_grid;
}

VslqModel vslq_at(const ExperimentConfig& c, double t1_ns, double gamma_s) {
    VslqModel m = VslqModel::with_default_shadow(c.model.w, c.model.delta, 1.0 / t1_ns, gamma_s);
    if (c.model.omega_s > 0.0) m.omega_s = c.model.omega_s;
    return m;
}

struct Summary {
    std::ostringstream text;

    template <class... Args>
    void line(const char* fmt, Args... args) {
        char buf[512];
        std::snprintf(buf, sizeof buf, fmt, args...);
        text << buf << '\n';
    }
};

void require_axis(const ExperimentConfig& c) {
    if (c.sweep.t1.empty()) throw ValidationError("[sweep] t1 axis is empty");
}

// ---------------------------------------------------------------------------
// Sweep tables. Rows follow the axis order; failures land in the error column.

template <class Fn>
void fill_rows(CsvTable& table, size_t n, int workers, Fn&& point) {
    std::vector<std::vector<std::string>> rows(n);
    parallel_for(n, workers, [&](size_t i) {
        try {
            rows[i] = point(i);
            rows[i].push_back("");
        } catch (const std::exception& e) {
            rows[i].assign(table.header.size() - 1, "nan");
            rows[i].push_back(e.what());
        }
    });
    for (auto& r : rows) table.add(std::move(r));
}

CsvTable residual_table(const ExperimentConfig& c, const PulseShape& pulse, int workers) {
    require_axis(c);
    CsvTable t;
    t.header = {"t1_us",           "best_t_r_ns",        "pulse_reset_residual", "constant_residual",
                "constant_omega_mhz", "constant_gamma_r_per_us", "error"};
    const auto grid = grid_or_single(c);
    fill_rows(t, c.sweep.t1.size(), workers, [&](size_t i) {
        const double t1_us = to_us(c.sweep.t1[i]);
        const SingleQubitCycle cycle(c.model.delta, pulse, t1_us, c.schedule.reset_rate);
        const auto scan = cycle.scan(grid);
        const auto cc = best_constant_coupling(c.model.delta, t1_us);
        return std::vector<std::string>{csv_number(t1_us),          csv_number(scan.best_t_r),
                                        csv_number(scan.best_residual), csv_number(cc.residual),
                                        csv_number(to_mhz(cc.omega)), csv_number(to_per_us(cc.gamma_r))};
    });
    return t;
}

CsvTable vslq_fixed_table(const ExperimentConfig& c, int workers) {
    require_axis(c);
    const size_t n = c.sweep.t1.size();
    if (c.fixed.omega.size() != n || c.fixed.gamma_s.size() != n || c.fixed.omega_s.size() != n)
        throw ValidationError("[fixed] lists must have one entry per [sweep] t1 value");
    CsvTable t;
    t.header = {"t1_us", "omega_mhz", "gamma_s_per_us", "omega_s_mhz", "t_x_us", "t_y_us", "r2_x", "r2_y",
                "improvement_x", "improvement_y", "error"};
    fill_rows(t, n, workers, [&](size_t i) {
        const double t1_us = to_us(c.sweep.t1[i]);
        VslqModel m = vslq_at(c, c.sweep.t1[i], c.fixed.gamma_s[i]);
        m.omega_s = c.fixed.omega_s[i];
        FixedParameters p{c.fixed.omega[i], c.fixed.gamma_s[i], c.fixed.omega_s[i]};
        LogicalLifetimes lt;
        if (c.fixed.search) {
            const FixedParameters lo{0.5 * p.omega, 0.5 * p.gamma_s, 0.98 * p.omega_s};
            const FixedParameters hi{2.0 * p.omega, 2.0 * p.gamma_s, 1.02 * p.omega_s};
            const auto opt = optimize_fixed_parameters(m, p, lo, hi);
            p = opt.params;
            lt = opt.lifetimes;
        } else {
            lt = VslqFixed(m, p.omega).lifetimes();
        }
        return std::vector<std::string>{
            csv_number(t1_us),
            csv_number(to_mhz(p.omega)),
            csv_number(to_per_us(p.gamma_s)),
            csv_number(to_mhz(p.omega_s)),
            csv_number(lt.x.fit.lifetime),
            csv_number(lt.y.fit.lifetime),
            csv_number(lt.x.fit.r_squared),
            csv_number(lt.y.fit.r_squared),
            csv_number(improvement_factor(lt.x.fit, t1_us)),
            csv_number(improvement_factor(lt.y.fit, t1_us))};
    });
    return t;
}

CsvTable vslq_pulse_reset_table(const ExperimentConfig& c, const PulseShape& pulse, int workers) {
    require_axis(c);
    CsvTable t;
    t.header = {"t1_us", "best_t_r_ns", "t_x_us", "t_y_us", "r2_x", "r2_y", "improvement_x", "improvement_y",
                "error"};
    const auto grid = grid_or_single(c);
    fill_rows(t, c.sweep.t1.size(), workers, [&](size_t i) {
        const double t1_us = to_us(c.sweep.t1[i]);
        const VslqPulseReset engine(vslq_at(c, c.sweep.t1[i], 0.0), pulse, c.schedule.reset_rate);
        const double t_r = grid.size() > 1 ? engine.scan(grid).best_t_r : grid[0];
        const auto lt = engine.lifetimes(t_r);
        return std::vector<std::string>{csv_number(t1_us),
                                        csv_number(t_r),
                                        csv_number(lt.x.fit.lifetime),
                                        csv_number(lt.y.fit.lifetime),
                                        csv_number(lt.x.fit.r_squared),
                                        csv_number(lt.y.fit.r_squared),
                                        csv_number(improvement_factor(lt.x.fit, t1_us)),
                                        csv_number(improvement_factor(lt.y.fit, t1_us))};
    });
    return t;
}

CsvTable three_qubit_table(const ExperimentConfig& c, const PulseShape& pulse, int workers) {
    require_axis(c);
    CsvTable t;
    t.header = {"t_e_us", "best_t_r_ns", "t_l0_us", "t_l1_us", "improvement_0", "improvement_1", "error"};
    const auto grid = grid_or_single(c);
    fill_rows(t, c.sweep.t1.size(), workers, [&](size_t i) {
        const double t_e_us = to_us(c.sweep.t1[i]);
        const ThreeQubitPulseReset engine({c.model.j, 1.0 / c.sweep.t1[i], 0.0}, pulse, c.schedule.reset_rate);
        const double t_r = grid.size() > 1 ? engine.scan(0, grid).best_t_r : grid[0];
        const auto l0 = engine.lifetime(0, t_r);
        const auto l1 = engine.lifetime(1, t_r);
        return std::vector<std::string>{csv_number(t_e_us),
                                        csv_number(t_r),
                                        csv_number(l0.fit.lifetime),
                                        csv_number(l1.fit.lifetime),
                                        csv_number(improvement_factor(l0.fit, t_e_us)),
                                        csv_number(improvement_factor(l1.fit, t_e_us))};
    });
    return t;
}

// Rows whose error column is empty.
std::pair<std::vector<double>, std::vector<double>> good_columns(const CsvTable& t, const std::string& x,
                                                                 const std::string& y) {
    const auto xs = t.column(x), ys = t.column(y);
    const auto err = std::find(t.header.begin(), t.header.end(), "error") - t.header.begin();
    std::vector<double> gx, gy;
    for (size_t i = 0; i < t.rows.size(); ++i)
        if (t.rows[i][err].empty()) {
            gx.push_back(xs[i]);
            gy.push_back(ys[i]);
        }
    return {gx, gy};
}

std::map<std::string, std::string> provenance(const ExperimentConfig& c, const std::string& what) {
    return {{"config_hash", hex64(config_hash(c))}, {"model", c.model.kind}, {"series", what}};
}

// Pure and offset power-law fits of one residual column.
std::pair<ScalingFit, ScalingFit> write_scaling(const ExperimentConfig& c, const CsvTable& t, const std::string& col,
                                                const std::string& stem, RunManifest& man, const fs::path& dir) {
    const auto [x, y] = good_columns(t, "t1_us", col);
    const auto pure = fit_power_law(x, y, false);
    const auto off = fit_power_law(x, y, true);
    man.write(dir, stem + ".txt", scaling_fit_record(pure, provenance(c, col)));
    man.write(dir, stem + "_offset.txt", scaling_fit_record(off, provenance(c, col + "+offset")));
    return {pure, off};
}

QuantumState protected_state(const ModelSystem& sys, const std::string& kind) {
    if (kind == "single_qubit") return basis_state(sys.space, {1, 0});
    if (kind == "three_qubit") return three_qubit_code(sys.space).zero;
    return vslq_logical(sys.space).zero;
}

void record_observables(Trajectory& traj, const ModelSystem& sys, const std::string& kind) {
    if (kind == "single_qubit") {
        traj.record_population("p_10", basis_state(sys.space, {1, 0}));
        traj.record_population("p_00", basis_state(sys.space, {0, 0}));
        traj.record_population("p_11", basis_state(sys.space, {1, 1}));
        traj.record_population("p_21", basis_state(sys.space, {2, 1}));
    } else if (kind == "three_qubit") {
        const int n = sys.space.total_dim();
        Matrix p0 = Matrix::Zero(n, n);
        for (int i = 0; i < n; ++i) {
            const auto o = sys.space.occupations(i);
            if (majority_vote({o[0], o[1], o[2]}) == 0) p0(i, i) = 1.0;
        }
        traj.record("p_0L", Operator(sys.space, p0));
        traj.record_population("p_000000", three_qubit_code(sys.space).zero);
    } else {
        const auto lg = vslq_logical(sys.space);
        traj.record("x_l", lg.x_l);
        traj.record("y_l", lg.y_l);
        traj.record("z_l", lg.z_l);
    }
}

CsvTable pulse_samples(const PulseShape& pulse, double dt = 0.05) {
    CsvTable t;
    t.header = {"t_ns", "omega_x_mhz", "omega_y_mhz"};
    const long n = std::lround(pulse.t_p() / dt);
    for (long i = 0; i <= n; ++i) {
        const double time = std::min(i * dt, pulse.t_p());
        const auto v = pulse.evaluate(time);
        t.add({csv_number(time), csv_number(to_mhz(v.x)), csv_number(to_mhz(v.y))});
    }
    return t;
}

// Decoherence-free populations of `watch` along the pulse, one column group per start state.
CsvTable pulse_populations(const ModelSystem& sys, const PulseShape& pulse,
                           const std::vector<std::pair<std::string, QuantumState>>& starts,
                           const std::vector<std::pair<std::string, Operator>>& watch, double dt = 0.1) {
    CsvTable t;
    t.header = {"t_ns"};
    std::vector<Trajectory> trajs;
    for (const auto& [sname, s] : starts) {
        EvolutionProblem p = problem_from_model(sys, s, 0.0, pulse.t_p());
        p.coupling = [&pulse](double time) { return pulse.evaluate(std::clamp(time, 0.0, pulse.t_p())); };
        for (double time = dt; time < pulse.t_p() - 1e-9; time += dt) p.output_times.push_back(time);
        auto traj = evolve_unitary(p);
        for (const auto& [wname, op] : watch) {
            traj.record(wname, op);
            t.header.push_back(sname + ":" + wname);
        }
        trajs.push_back(std::move(traj));
    }
    for (size_t k = 0; k < trajs[0].times.size(); ++k) {
        std::vector<std::string> row{csv_number(trajs[0].times[k])};
        for (size_t s = 0; s < trajs.size(); ++s)
            for (const auto& [wname, op] : watch) row.push_back(csv_number(trajs[s].observables.at(wname)[k]));
        t.add(std::move(row));
    }
    return t;
}

Operator projector_op(const QuantumState& s) { return Operator(s.space(), s.density_matrix()); }

fs::path prepare_dir(const std::string& dir) {
    const fs::path p(dir);
    fs::create_directories(p);
    return p;
}

}  // namespace

// ---------------------------------------------------------------------------

int default_workers() {
    const char* env = std::getenv("AQEC_WORKERS");
    if (!env) return 1;
    char* end = nullptr;
    const long n = std::strtol(env, &end, 10);
    if (end == env || *end != '\0' || n < 1 || n > 1024) return 1;
    return static_cast<int>(n);
}

std::string csv_number(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

void CsvTable::add(std::vector<std::string> row) {
    if (row.size() != header.size()) throw ValidationError("CsvTable: row width differs from header");
    rows.push_back(std::move(row));
}

std::vector<double> CsvTable::column(const std::string& name) const {
    const auto it = std::find(header.begin(), header.end(), name);
    if (it == header.end()) throw ValidationError("CSV has no column '" + name + "'");
    const size_t k = it - header.begin();
    std::vector<double> out;
    for (const auto& r : rows) {
        char* end = nullptr;
        const double v = std::strtod(r[k].c_str(), &end);
        if (end == r[k].c_str()) throw ValidationError("CSV column '" + name + "' holds non-numeric '" + r[k] + "'");
        out.push_back(v);
    }
    return out;
}

std::string CsvTable::to_text() const {
    std::string out;
    auto line = [&](const std::vector<std::string>& cells) {
        for (size_t i = 0; i < cells.size(); ++i) out += (i ? "," : "") + csv_escape(cells[i]);
        out += '\n';
    };
    line(header);
    for (const auto& r : rows) line(r);
    return out;
}

CsvTable CsvTable::parse(const std::string& text) {
    CsvTable t;
    std::istringstream in(text);
    std::string raw;
    auto split = [](const std::string& s) {
        std::vector<std::string> cells;
        std::string cur;
        bool quoted = false;
        for (size_t i = 0; i < s.size(); ++i) {
            const char ch = s[i];
            if (quoted) {
                if (ch == '"' && i + 1 < s.size() && s[i + 1] == '"') {
                    cur += '"';
                    ++i;
                } else if (ch == '"') {
                    quoted = false;
                } else {
                    cur += ch;
                }
            } else if (ch == '"') {
                quoted = true;
            } else if (ch == ',') {
                cells.push_back(cur);
                cur.clear();
            } else if (ch != '\r') {
                cur += ch;
            }
        }
        cells.push_back(cur);
        return cells;
    };
    int line = 0;
    while (std::getline(in, raw)) {
        ++line;
        if (raw.empty() || raw == "\r") continue;
        auto cells = split(raw);
        if (t.header.empty()) {
            t.header = std::move(cells);
        } else {
            if (cells.size() != t.header.size())
                throw ValidationError("CSV line " + std::to_string(line) + ": expected " +
                                      std::to_string(t.header.size()) + " cells");
            t.rows.push_back(std::move(cells));
        }
    }
    if (t.header.empty()) throw ValidationError("CSV is empty");
    return t;
}

// ---------------------------------------------------------------------------

RunManifest::RunManifest(std::string command, const ExperimentConfig& config)
    : command_(std::move(command)), hash_(hex64(config_hash(config))), started_(utc_now()) {}

void RunManifest::write(const fs::path& dir, const std::string& name, const std::string& contents) {
    textrec::write_file((dir / name).string(), contents);
    record(name);
}

void RunManifest::record(const std::string& name) {
    if (std::find(files_.begin(), files_.end(), name) == files_.end()) files_.push_back(name);
}

void RunManifest::finish(const fs::path& dir) {
    textrec::Document doc;
    auto& run = doc.section("run");
    run.set("command", textrec::Value::of_word(command_));
    run.set("config_hash", textrec::Value::of_word(hash_));
    run.set("version", textrec::Value::of_word(kVersion));
    run.set("started", textrec::Value::of_word(started_));
    run.set("finished", textrec::Value::of_word(utc_now()));
    auto& files = doc.section("files");
    for (size_t i = 0; i < files_.size(); ++i) files.set("file_" + std::to_string(i), textrec::Value::of_word(files_[i]));
    textrec::write_file((dir / "manifest.txt").string(), doc.to_text());
}

PulseOutcome obtain_pulse(const ExperimentConfig& c, RunManifest* manifest, const fs::path& dir) {
    PulseOutcome out;
    if (!c.pulse.file.empty()) {
        out.pulse = load_pulse(c.pulse.file);
        if (std::abs(out.pulse.t_p() - c.pulse.t_p) > 1e-9 * c.pulse.t_p)
            throw ValidationError("pulse file duration differs from [pulse] t_p");
        const auto spec = c.lossless_spec();
        const auto label = c.optimizer.target.empty() ? default_target_label(spec) : c.optimizer.target;
        out.fidelity = Objective(build_model(spec), target_operation(spec, label)).fidelity(out.pulse);
        return out;
    }
    const auto spec = c.lossless_spec();
    const auto label = c.optimizer.target.empty() ? default_target_label(spec) : c.optimizer.target;
    const Objective obj(build_model(spec), target_operation(spec, label));
    const auto res = optimize_pulse(obj, c.optimizer_config());
    out.pulse = res.pulse;
    out.fidelity = res.fidelity;
    out.converged = res.converged;
    out.optimized = true;
    if (manifest) {
        manifest->write(dir, "pulse.txt", pulse_to_text(res.pulse));
        write_trace_csv(res.trace, dir / "trace.csv");
        manifest->record("trace.csv");
    }
    return out;
}

void cmd_optimize(const ExperimentConfig& c) {
    const auto dir = prepare_dir(c.output_dir);
    RunManifest man("optimize", c);
    const auto out = obtain_pulse(c, &man, dir);
    Summary s;
    s.line("model = %s", c.model.kind.c_str());
    s.line("fidelity = %.12g", out.fidelity);
    s.line("infidelity = %.6e", 1.0 - out.fidelity);
    s.line("target_fidelity = %.12g", c.optimizer.target_fidelity);
    s.line("converged = %s", out.converged ? "true" : "false");
    const auto warn = validity_warnings(c.lossless_spec(), out.pulse.peak_amplitude());
    for (const auto& w : warn) s.line("warning = \"%s\"", w.c_str());
    man.write(dir, "summary.txt", s.text.str());
    man.finish(dir);
    if (!out.converged)
        throw ConvergenceError("optimizer stopped below the target fidelity", out.fidelity);
}

void cmd_evolve(const ExperimentConfig& c) {
    if (!(c.model.t1 > 0.0)) throw ValidationError("evolve needs [model] t1 > 0");
    const auto dir = prepare_dir(c.output_dir);
    RunManifest man("evolve", c);
    const auto pulse = obtain_pulse(c, &man, dir).pulse;
    const auto sys = build_model(c.model_spec());
    std::map<std::string, double> pulse_rates, reset_rates;
    for (const auto& ch : sys.channels) pulse_rates[ch.name] = 1.0 / c.model.t1;
    for (const auto& name : lossy_channels(c.model.kind)) reset_rates[name] = c.schedule.reset_rate;
    const auto schedule = make_schedule(sys, c.pulse.t_p, c.schedule.t_r, pulse_rates, reset_rates, c.schedule.n_cycles);
    CycleOptions opt;
    opt.samples_per_phase = 4;
    auto traj = evolve_cycles(sys, pulse, schedule, protected_state(sys, c.model.kind), opt);
    record_observables(traj, sys, c.model.kind);
    write_trajectory_csv(traj, dir / "trajectory.csv");
    man.record("trajectory.csv");
    man.write(dir, "states.txt", trajectory_state_dump(traj));
    man.finish(dir);
}

void cmd_sweep(const ExperimentConfig& c) {
    const auto dir = prepare_dir(c.output_dir);
    RunManifest man("sweep", c);
    const auto& kind = c.sweep.kind;
    if (kind.empty()) throw ValidationError("[sweep] kind is not set");
    if (kind == "delta") {
        if (c.sweep.deltas.empty()) throw ValidationError("[sweep] deltas axis is empty");
        const auto rows = run_delta_sweep(c.sweep.deltas, c.optimizer_config(), c.workers);
        write_delta_sweep_csv(rows, dir / "sweep.csv");
        man.record("sweep.csv");
        for (const auto& r : rows) {
            char name[64];
            std::snprintf(name, sizeof name, "pulse_delta_%g.txt", r.delta_mhz);
            man.write(dir, name, pulse_to_text(r.pulse));
        }
        man.finish(dir);
        return;
    }
    CsvTable table;
    if (kind == "residual") {
        if (c.model.kind != "single_qubit") throw ValidationError("residual sweep needs the single_qubit model");
        const auto pulse = obtain_pulse(c, &man, dir).pulse;
        table = residual_table(c, pulse, c.workers);
        man.write(dir, "sweep.csv", table.to_text());
        write_scaling(c, table, "pulse_reset_residual", "scaling_pulse_reset", man, dir);
        write_scaling(c, table, "constant_residual", "scaling_constant", man, dir);
    } else if (kind == "vslq_fixed") {
        if (c.model.kind != "vslq") throw ValidationError("vslq_fixed sweep needs the vslq model");
        table = vslq_fixed_table(c, c.workers);
        man.write(dir, "sweep.csv", table.to_text());
    } else if (kind == "vslq_pulse_reset") {
        if (c.model.kind != "vslq") throw ValidationError("vslq_pulse_reset sweep needs the vslq model");
        const auto pulse = obtain_pulse(c, &man, dir).pulse;
        table = vslq_pulse_reset_table(c, pulse, c.workers);
        man.write(dir, "sweep.csv", table.to_text());
    } else {
        if (c.model.kind != "three_qubit") throw ValidationError("three_qubit sweep needs the three_qubit model");
        const auto pulse = obtain_pulse(c, &man, dir).pulse;
        table = three_qubit_table(c, pulse, c.workers);
        man.write(dir, "sweep.csv", table.to_text());
    }
    man.finish(dir);
}

void cmd_scan_reset(const ExperimentConfig& c) {
    if (!(c.model.t1 > 0.0)) throw ValidationError("scan-reset needs [model] t1 > 0");
    if (c.schedule.t_r_grid.empty()) throw ValidationError("scan-reset needs a non-empty [schedule] t_r_grid");
    const auto dir = prepare_dir(c.output_dir);
    RunManifest man("scan-reset", c);
    const auto pulse = obtain_pulse(c, &man, dir).pulse;
    const double t1_us = to_us(c.model.t1);
    ResetScan scan;
    std::string metric;
    if (c.model.kind == "single_qubit") {
        scan = SingleQubitCycle(c.model.delta, pulse, t1_us, c.schedule.reset_rate).scan(c.schedule.t_r_grid);
        metric = "residual";
    } else if (c.model.kind == "vslq") {
        scan = VslqPulseReset(vslq_at(c, c.model.t1, 0.0), pulse, c.schedule.reset_rate).scan(c.schedule.t_r_grid);
        metric = "x_error_rate_per_us";
    } else {
        scan = ThreeQubitPulseReset({c.model.j, 1.0 / c.model.t1, 0.0}, pulse, c.schedule.reset_rate)
                   .scan(0, c.schedule.t_r_grid);
        metric = "logical_error_rate_per_us";
    }
    CsvTable t;
    t.header = {"t_r_ns", metric};
    for (size_t i = 0; i < scan.t_r.size(); ++i) t.add({csv_number(scan.t_r[i]), csv_number(scan.residual[i])});
    man.write(dir, "scan_reset.csv", t.to_text());
    Summary s;
    s.line("t1_us = %.12g", t1_us);
    s.line("best_t_r_ns = %.12g", scan.best_t_r);
    s.line("best_%s = %.12g", metric.c_str(), scan.best_residual);
    man.write(dir, "summary.txt", s.text.str());
    man.finish(dir);
}

void cmd_fit(const ExperimentConfig& c) {
    if (c.fit.input.empty() || c.fit.x_column.empty() || c.fit.y_column.empty())
        throw ValidationError("[fit] needs input, x_column and y_column");
    if (!fs::exists(c.fit.input)) throw ValidationError("fit input '" + c.fit.input + "' does not exist");
    const auto dir = prepare_dir(c.output_dir);
    RunManifest man("fit", c);
    const auto table = CsvTable::parse(textrec::read_file(c.fit.input));
    const auto x = table.column(c.fit.x_column), y = table.column(c.fit.y_column);
    auto prov = provenance(c, c.fit.y_column);
    prov["input"] = c.fit.input;
    prov["x_column"] = c.fit.x_column;
    if (c.fit.model == "exp" || c.fit.model == "exp_with_offset") {
        const auto fit =
            fit_lifetime(x, y, c.fit.model == "exp" ? DecayModel::Exp : DecayModel::ExpWithOffset);
        man.write(dir, "fit.txt", decay_fit_record(fit, prov));
    } else {
        const auto fit = fit_power_law(x, y, c.fit.model == "power_law_offset");
        man.write(dir, "fit.txt", scaling_fit_record(fit, prov));
    }
    man.finish(dir);
}

// ---------------------------------------------------------------------------
// Reproductions.

namespace {

const double kTableT1[] = {5, 10, 15, 20, 25, 30, 35, 40, 45, 50, 55, 60};
const double kTableTx[] = {117, 353, 675, 1061, 1514, 2016, 2571, 3151, 3743, 4422, 5207, 5955};
const double kTableTy[] = {66, 189, 350, 542, 762, 1005, 1271, 1553, 1846, 2168, 2524, 2879};

void compare_table(Summary& s, const CsvTable& t) {
    const auto t1 = t.column("t1_us"), tx = t.column("t_x_us"), ty = t.column("t_y_us");
    for (size_t i = 0; i < t1.size(); ++i)
        for (size_t k = 0; k < std::size(kTableT1); ++k)
            if (std::abs(t1[i] - kTableT1[k]) < 1e-9)
                s.line("t1 = %g us: T_X = %.1f us (table %.0f, %+.1f%%), T_Y = %.1f us (table %.0f, %+.1f%%)", t1[i],
                       tx[i], kTableTx[k], 100.0 * (tx[i] / kTableTx[k] - 1.0), ty[i], kTableTy[k],
                       100.0 * (ty[i] / kTableTy[k] - 1.0));
}

void reproduce_fig2(const ExperimentConfig& c, const fs::path& dir, RunManifest& man, Summary& s) {
    const auto out = obtain_pulse(c, &man, dir);
    man.write(dir, "pulse_samples.csv", pulse_samples(out.pulse).to_text());
    const auto sys = build_model(c.lossless_spec());
    const auto pop = pulse_populations(
        sys, out.pulse, {{"00", basis_state(sys.space, {0, 0})}, {"10", basis_state(sys.space, {1, 0})}},
        {{"p_00", projector_op(basis_state(sys.space, {0, 0}))},
         {"p_11", projector_op(basis_state(sys.space, {1, 1}))},
         {"p_10", projector_op(basis_state(sys.space, {1, 0}))},
         {"p_21", projector_op(basis_state(sys.space, {2, 1}))}});
    man.write(dir, "populations.csv", pop.to_text());
    s.line("operation fidelity = %.6f (reference 0.9989)", out.fidelity);
}

void reproduce_fig3(const ExperimentConfig& c, const fs::path& dir, RunManifest& man, Summary& s) {
    const auto pulse = obtain_pulse(c, &man, dir).pulse;
    const auto t = residual_table(c, pulse, c.workers);
    man.write(dir, "residual.csv", t.to_text());
    const auto [pr, pr_off] = write_scaling(c, t, "pulse_reset_residual", "scaling_pulse_reset", man, dir);
    const auto [cc, cc_off] = write_scaling(c, t, "constant_residual", "scaling_constant", man, dir);
    s.line("pulse-reset exponent = %.3f (reference -0.81); with offset %.3f, offset %.2e", pr.exponent,
           pr_off.exponent, pr_off.offset);
    s.line("constant-coupling exponent = %.3f (reference -0.69); with offset %.3f, offset %.2e", cc.exponent,
           cc_off.exponent, cc_off.offset);
    const auto t1 = t.column("t1_us"), a = t.column("pulse_reset_residual"), b = t.column("constant_residual");
    for (size_t i = 0; i < t1.size(); ++i)
        s.line("t1 = %g us: pulse-reset %.4e, constant %.4e", t1[i], a[i], b[i]);
}

void reproduce_fig4(const ExperimentConfig& c, const fs::path& dir, RunManifest& man, Summary& s) {
    const auto rows = run_delta_sweep(c.sweep.deltas, c.optimizer_config(), c.workers);
    write_delta_sweep_csv(rows, dir / "counterterm.csv");
    man.record("counterterm.csv");
    for (const auto& r : rows) {
        char name[64];
        std::snprintf(name, sizeof name, "pulse_delta_%g.txt", r.delta_mhz);
        man.write(dir, name, pulse_to_text(r.pulse));
        s.line("delta = %g MHz: Omega_y peak %.1f MHz (%+.1f%%), F = %.6f, leakage %.3e with y, %.3e without",
               r.delta_mhz, r.peak_mhz, 100.0 * (r.peak_mhz / r.delta_mhz - 1.0), r.fidelity, r.max_leakage_with_y,
               r.max_leakage_without_y);
    }
}

void reproduce_fig5(const ExperimentConfig& c, const fs::path& dir, RunManifest& man, Summary& s) {
    const auto out = obtain_pulse(c, &man, dir);
    man.write(dir, "pulse_samples.csv", pulse_samples(out.pulse).to_text());
    const auto sys = build_model(c.lossless_spec());
    const int n = sys.space.total_dim();
    Matrix p000 = Matrix::Zero(n, n);
    for (int i = 0; i < n; ++i) {
        const auto o = sys.space.occupations(i);
        if (o[0] == 0 && o[1] == 0 && o[2] == 0) p000(i, i) = 1.0;
    }
    std::vector<std::pair<std::string, QuantumState>> starts;
    for (const auto& occ : std::vector<std::vector<int>>{{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {0, 0, 1}}) {
        std::vector<int> full = occ;
        full.insert(full.end(), {0, 0, 0});
        starts.emplace_back(std::to_string(occ[0]) + std::to_string(occ[1]) + std::to_string(occ[2]),
                            basis_state(sys.space, full));
    }
    man.write(dir, "populations.csv",
              pulse_populations(sys, out.pulse, starts, {{"p_000P", Operator(sys.space, p000)}}).to_text());
    s.line("operation fidelity = %.8f, 1-F = %.3e (reference 0.99999635)", out.fidelity, 1.0 - out.fidelity);
    const auto t = three_qubit_table(c, out.pulse, c.workers);
    man.write(dir, "improvement.csv", t.to_text());
    const auto te = t.column("t_e_us"), i0 = t.column("improvement_0"), i1 = t.column("improvement_1");
    for (size_t i = 0; i < te.size(); ++i)
        s.line("T_E = %g us: T_L/T_E = %.2f (|000>), %.2f (|111>)", te[i], i0[i], i1[i]);
}

void reproduce_fig6(const ExperimentConfig& c, const fs::path& dir, RunManifest& man, Summary& s) {
    const auto out = obtain_pulse(c, &man, dir);
    man.write(dir, "pulse_samples.csv", pulse_samples(out.pulse).to_text());
    s.line("operation fidelity = %.6f (reference 0.99991)", out.fidelity);
    const auto fixed = vslq_fixed_table(c, c.workers);
    man.write(dir, "fixed.csv", fixed.to_text());
    const auto pr = vslq_pulse_reset_table(c, out.pulse, c.workers);
    man.write(dir, "pulse_reset.csv", pr.to_text());
    const auto t1 = pr.column("t1_us");
    const auto fx = fixed.column("improvement_x"), fy = fixed.column("improvement_y");
    const auto px = pr.column("improvement_x"), py = pr.column("improvement_y");
    for (size_t i = 0; i < t1.size(); ++i)
        s.line("t1 = %g us: T_X/T1 fixed %.1f, pulse-reset %.1f; T_Y/T1 fixed %.1f, pulse-reset %.1f", t1[i], fx[i],
               px[i], fy[i], py[i]);
}

void reproduce_fig7(const ExperimentConfig& c, const fs::path& dir, RunManifest& man, Summary& s) {
    require_axis(c);
    const auto pulse = obtain_pulse(c, &man, dir).pulse;
    CsvTable t;
    t.header = {"t1_us", "t_r_ns", "t_ns", "x_fixed", "y_fixed", "x_pulse_reset", "y_pulse_reset"};
    for (size_t i = 0; i < c.sweep.t1.size(); ++i) {
        VslqModel fm = vslq_at(c, c.sweep.t1[i], c.fixed.gamma_s.at(i));
        fm.omega_s = c.fixed.omega_s.at(i);
        const VslqFixed fixed(fm, c.fixed.omega.at(i));
        const VslqPulseReset engine(vslq_at(c, c.sweep.t1[i], 0.0), pulse, c.schedule.reset_rate);
        const double t_r = engine.scan(grid_or_single(c)).best_t_r;
        for (double time = 0.0; time <= 2000.0 + 1e-9; time += 50.0) {
            const auto f = fixed.values_at(time);
            const auto p = engine.values_at(t_r, time);
            t.add({csv_number(to_us(c.sweep.t1[i])), csv_number(t_r), csv_number(time), csv_number(f.x),
                   csv_number(f.y), csv_number(p.x), csv_number(p.y)});
            if (time == 2000.0)
                s.line("t1 = %g us, t_r = %g ns, t = 2 us: <X_L> fixed %.5f, pulse-reset %.5f; <Y_L> fixed %.5f, "
                       "pulse-reset %.5f",
                       to_us(c.sweep.t1[i]), t_r, f.x, p.x, f.y, p.y);
        }
    }
    man.write(dir, "short_time.csv", t.to_text());
}

void reproduce_table1(const ExperimentConfig& c, const fs::path& dir, RunManifest& man, Summary& s) {
    const auto t = vslq_fixed_table(c, c.workers);
    man.write(dir, "table1.csv", t.to_text());
    compare_table(s, t);
}

}  // namespace

std::vector<std::string> reproduce_ids() { return {"fig2", "fig3", "fig4", "fig5", "fig6", "fig7", "table1"}; }

void cmd_reproduce(const std::string& id, const std::string& out_dir, int workers) {
    const auto ids = reproduce_ids();
    if (std::find(ids.begin(), ids.end(), id) == ids.end()) throw ValidationError("unknown figure id '" + id + "'");
    ExperimentConfig c = parse_config(preset_text(id == "fig2" ? "single-qubit-fig2" : id));
    c.output_dir = out_dir;
    c.workers = workers;
    c.validate();
    const auto dir = prepare_dir(out_dir);
    RunManifest man("reproduce " + id, c);
    man.write(dir, "config.txt", write_config(c));
    Summary s;
    s.line("reproduce %s", id.c_str());
    if (id == "fig2") reproduce_fig2(c, dir, man, s);
    if (id == "fig3") reproduce_fig3(c, dir, man, s);
    if (id == "fig4") reproduce_fig4(c, dir, man, s);
    if (id == "fig5") reproduce_fig5(c, dir, man, s);
    if (id == "fig6") reproduce_fig6(c, dir, man, s);
    if (id == "fig7") reproduce_fig7(c, dir, man, s);
    if (id == "table1") reproduce_table1(c, dir, man, s);
    man.write(dir, "summary.txt", s.text.str());
    man.finish(dir);
}

}  // namespace aqec
