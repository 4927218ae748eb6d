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

#include "aqec/pulse.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "aqec/errors.hpp"
#include "aqec/textrec.hpp"

namespace aqec {

PulseShape::PulseShape(std::vector<double> cx, std::vector<double> cy, double t_p)
    : cx_(std::move(cx)), cy_(std::move(cy)), t_p_(t_p) {
    if (cx_.empty()) throw ValidationError("PulseShape: need at least one mode");
    if (cx_.size() != cy_.size()) throw ValidationError("PulseShape: cx and cy lengths differ");
    if (!(t_p_ > 0.0)) throw ValidationError("PulseShape: t_p must be positive");
}

PulseShape PulseShape::seeded(int n_modes, double t_p, double seed_c1x) {
    if (n_modes < 1) throw ValidationError("PulseShape: need at least one mode");
    std::vector<double> cx(n_modes, 0.0), cy(n_modes, 0.0);
    cx[0] = seed_c1x;
    return PulseShape(std::move(cx), std::move(cy), t_p);
}

std::vector<double> PulseShape::coefficients() const {
    std::vector<double> flat(cx_);
    flat.insert(flat.end(), cy_.begin(), cy_.end());
    return flat;
}

PulseShape PulseShape::with_coefficients(const std::vector<double>& flat) const {
    const size_t n = cx_.size();
    if (flat.size() != 2 * n) throw ValidationError("PulseShape: coefficient vector has wrong length");
    return PulseShape(std::vector<double>(flat.begin(), flat.begin() + n),
                      std::vector<double>(flat.begin() + n, flat.end()), t_p_);
}

CouplingValue PulseShape::evaluate(double t) const {
    if (t < 0.0 || t > t_p_) throw ValidationError("PulseShape::evaluate: t outside [0, t_p]");
    // Exact zeros at the ends; sin(n*pi) is not exactly zero in floating point.
    if (t == 0.0 || t == t_p_) return {};
    const double theta = std::numbers::pi * t / t_p_;
    // sin(n theta) by the Chebyshev-like recurrence s_{n+1} = 2 cos(theta) s_n - s_{n-1}.
    const double c2 = 2.0 * std::cos(theta);
    double s_prev = 0.0, s = std::sin(theta);
    CouplingValue out;
    for (size_t n = 0; n < cx_.size(); ++n) {
        out.x += cx_[n] * s;
        out.y += cy_[n] * s;
        const double next = c2 * s - s_prev;
        s_prev = s;
        s = next;
    }
    return out;
}

double PulseShape::peak_amplitude(int samples) const {
    double peak = 0.0;
    for (int k = 0; k < samples; ++k) {
        const auto v = evaluate(t_p_ * k / (samples - 1));
        peak = std::max({peak, std::abs(v.x), std::abs(v.y)});
    }
    return peak;
}

void CycleSchedule::validate() const {
    if (!(t_p > 0.0)) throw ValidationError("CycleSchedule: t_p must be positive");
    if (t_r < 0.0) throw ValidationError("CycleSchedule: t_r must be non-negative");
    if (n_cycles < 0) throw ValidationError("CycleSchedule: n_cycles must be non-negative");
    for (const auto& [name, rate] : rate_pulse) {
        if (rate < 0.0) throw ValidationError("CycleSchedule: negative pulse rate for " + name);
        if (!rate_reset.count(name)) throw ValidationError("CycleSchedule: no reset rate for " + name);
    }
    for (const auto& [name, rate] : rate_reset) {
        if (rate < 0.0) throw ValidationError("CycleSchedule: negative reset rate for " + name);
        if (!rate_pulse.count(name)) throw ValidationError("CycleSchedule: no pulse rate for " + name);
    }
}

double cycle_offset(const CycleSchedule& schedule, double t) {
    if (t < 0.0) throw ValidationError("schedule: t must be non-negative");
    const double period = schedule.period();
    double off = std::fmod(t, period);
    if (off < 0.0) off = 0.0;
    return off;
}

CyclePhase phase_at(const CycleSchedule& schedule, double t) {
    return cycle_offset(schedule, t) < schedule.t_p ? CyclePhase::Pulse : CyclePhase::Reset;
}

double schedule_rate(const CycleSchedule& schedule, const std::string& channel, double t) {
    const auto& table = phase_at(schedule, t) == CyclePhase::Pulse ? schedule.rate_pulse : schedule.rate_reset;
    const auto it = table.find(channel);
    if (it == table.end()) throw ValidationError("schedule_rate: unknown channel '" + channel + "'");
    return it->second;
}

CouplingValue schedule_coupling(const CycleSchedule& schedule, const PulseShape& pulse, double t) {
    const double off = cycle_offset(schedule, t);
    if (off >= schedule.t_p) return {};
    return pulse.evaluate(std::min(off, pulse.t_p()));
}

std::string pulse_to_text(const PulseShape& pulse) {
    textrec::Document doc;
    auto& sec = doc.section("pulse");
    sec.set("n_modes", textrec::Value::of(pulse.n_modes()));
    sec.set("t_p", textrec::Value::of(pulse.t_p(), "ns"));
    sec.set("cx", textrec::Value::of(pulse.cx(), "rad_per_ns"));
    sec.set("cy", textrec::Value::of(pulse.cy(), "rad_per_ns"));
    return doc.to_text();
}

PulseShape pulse_from_text(const std::string& text) {
    const auto doc = textrec::Document::parse(text);
    const auto* sec = doc.find("pulse");
    if (!sec) throw ValidationError("pulse record: missing [pulse] section");
    auto need = [&](const char* key) {
        const auto* v = sec->find(key);
        if (!v) throw ValidationError(std::string("pulse record: missing key '") + key + "'");
        return v;
    };
    const auto* n = need("n_modes");
    const auto* tp = need("t_p");
    const auto* cx = need("cx");
    const auto* cy = need("cy");
    if (n->kind != textrec::Value::Kind::Number) throw ValidationError("pulse record: n_modes must be a number");
    if (tp->kind != textrec::Value::Kind::Number || tp->unit != "ns")
        throw ValidationError("pulse record: t_p must be given in ns");
    for (const auto* c : {cx, cy})
        if (c->kind != textrec::Value::Kind::List || c->unit != "rad_per_ns")
            throw ValidationError("pulse record: coefficients must be a list in rad_per_ns");
    if (static_cast<double>(cx->list.size()) != n->number)
        throw ValidationError("pulse record: n_modes does not match coefficient count");
    return PulseShape(cx->list, cy->list, tp->number);
}

void save_pulse(const PulseShape& pulse, const std::filesystem::path& path) {
    textrec::write_file(path.string(), pulse_to_text(pulse));
}

PulseShape load_pulse(const std::filesystem::path& path) {
    return pulse_from_text(textrec::read_file(path.string()));
}

}  // namespace aqec
