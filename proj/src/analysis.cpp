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

#include "aqec/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "aqec/errors.hpp"
#include "aqec/liouville.hpp"
#include "aqec/textrec.hpp"

namespace aqec {

namespace {

constexpr double kGolden = 0.38196601125010515;

// Minimizes f on [a, b] by golden-section search.
template <class F>
double golden_min(F&& f, double a, double b, double tol) {
    double x1 = a + kGolden * (b - a), x2 = b - kGolden * (b - a);
    double f1 = f(x1), f2 = f(x2);
    for (int it = 0; it < 200 && (b - a) > tol * (std::abs(a) + std::abs(b) + 1e-300); ++it) {
        if (f1 <= f2) {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = a + kGolden * (b - a);
            f1 = f(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = b - kGolden * (b - a);
            f2 = f(x2);
        }
    }
    return f1 <= f2 ? x1 : x2;
}

struct LinearSolve {
    double a = 0.0, b = 0.0, ss = 0.0;
};

// Best A (and B) for a fixed rate k.
LinearSolve solve_amplitudes(const std::vector<double>& t, const std::vector<double>& y, double k, bool offset) {
    const size_t n = t.size();
    double see = 0, se = 0, sy = 0, sey = 0;
    std::vector<double> e(n);
    for (size_t i = 0; i < n; ++i) {
        e[i] = std::exp(-k * t[i]);
        see += e[i] * e[i];
        se += e[i];
        sy += y[i];
        sey += e[i] * y[i];
    }
    LinearSolve s;
    if (offset) {
        const double det = see * static_cast<double>(n) - se * se;
        if (std::abs(det) <= 1e-14 * see * static_cast<double>(n)) {
            s.a = 0.0;
            s.b = sy / static_cast<double>(n);
        } else {
            s.a = (sey * static_cast<double>(n) - se * sy) / det;
            s.b = (see * sy - se * sey) / det;
        }
    } else {
        s.a = see > 0.0 ? sey / see : 0.0;
    }
    for (size_t i = 0; i < n; ++i) {
        const double r = y[i] - (s.a * e[i] + s.b);
        s.ss += r * r;
    }
    return s;
}

void require_finite(const std::vector<double>& v, const char* what) {
    for (double x : v)
        if (!std::isfinite(x)) throw ValidationError(std::string(what) + " contains a non-finite value");
}

}  // namespace

DecayFit fit_lifetime(const std::vector<double>& times, const std::vector<double>& values, DecayModel model) {
    if (times.size() != values.size()) throw ValidationError("fit_lifetime: times and values differ in length");
    if (times.size() < 5) throw ValidationError("fit_lifetime: need at least 5 samples");
    require_finite(times, "fit_lifetime: times");
    require_finite(values, "fit_lifetime: values");
    const auto [tmin, tmax] = std::minmax_element(times.begin(), times.end());
    const double span = *tmax - *tmin;
    if (!(span > 0.0)) throw ValidationError("fit_lifetime: times must span a positive interval");
    const auto [ymin, ymax] = std::minmax_element(values.begin(), values.end());
    const double yscale = std::max(std::abs(*ymin), std::abs(*ymax));
    if (*ymax - *ymin <= 1e-12 * std::max(yscale, 1e-300))
        throw ValidationError("fit_lifetime: degenerate (constant) data");

    const bool offset = model == DecayModel::ExpWithOffset;
    // Shift times so the exponentials stay well scaled; the lifetime is unaffected.
    std::vector<double> t(times.size());
    for (size_t i = 0; i < t.size(); ++i) t[i] = times[i] - *tmin;

    auto ss_at = [&](double k) { return solve_amplitudes(t, values, k, offset).ss; };
    // Scan signed rates on a log grid in units of 1/span.
    constexpr int kGrid = 240;
    const double lo = std::log(1e-4), hi = std::log(1e4);
    double best = std::numeric_limits<double>::infinity();
    int best_i = 0, best_sign = 1;
    for (int sign : {+1, -1})
        for (int i = 0; i <= kGrid; ++i) {
            const double u = lo + (hi - lo) * i / kGrid;
            if (sign < 0 && u > 0.0) break;  // growth faster than e per span is irrelevant
            const double ss = ss_at(sign * std::exp(u) / span);
            if (ss < best) {
                best = ss;
                best_i = i;
                best_sign = sign;
            }
        }
    if (best_sign < 0) throw ValidationError("fit_lifetime: data grows; fitted lifetime is not positive");
    if (best_i == 0) throw ConvergenceError("fit_lifetime: lifetime exceeds 1e4 times the sampled span", 0.0);
    const double u_lo = lo + (hi - lo) * (best_i - 1) / kGrid;
    const double u_hi = lo + (hi - lo) * std::min(best_i + 1, kGrid) / kGrid;
    const double u = golden_min([&](double uu) { return ss_at(std::exp(uu) / span); }, u_lo, u_hi, 1e-15);
    const double k = std::exp(u) / span;
    const auto s = solve_amplitudes(t, values, k, offset);

    double mean = 0.0;
    for (double y : values) mean += y;
    mean /= static_cast<double>(values.size());
    double sst = 0.0;
    for (double y : values) sst += (y - mean) * (y - mean);

    DecayFit fit;
    fit.lifetime = 1.0 / k;
    fit.amplitude = s.a * std::exp(k * *tmin);
    fit.offset = s.b;
    fit.r_squared = std::clamp(1.0 - s.ss / sst, 0.0, 1.0);
    if (!(fit.lifetime > 0.0) || !std::isfinite(fit.lifetime))
        throw ValidationError("fit_lifetime: fitted lifetime is not positive");
    return fit;
}

ScalingFit fit_power_law(const std::vector<double>& x, const std::vector<double>& y, bool with_offset) {
    if (x.size() != y.size()) throw ValidationError("fit_power_law: x and y differ in length");
    if (x.size() < 4) throw ValidationError("fit_power_law: need at least 4 points");
    for (size_t i = 0; i < x.size(); ++i)
        if (!(x[i] > 0.0) || !(y[i] > 0.0)) throw ValidationError("fit_power_law: data must be positive");

    const size_t n = x.size();
    auto regress = [&](double c) {
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        for (size_t i = 0; i < n; ++i) {
            const double lx = std::log(x[i]), ly = std::log(y[i] - c);
            sx += lx;
            sy += ly;
            sxx += lx * lx;
            sxy += lx * ly;
        }
        const double dn = static_cast<double>(n);
        const double det = dn * sxx - sx * sx;
        if (!(det > 0.0)) throw ValidationError("fit_power_law: x values must not all coincide");
        ScalingFit f;
        f.exponent = (dn * sxy - sx * sy) / det;
        f.prefactor = std::exp((sy - f.exponent * sx) / dn);
        f.offset = c;
        double rr = 0.0;
        for (size_t i = 0; i < n; ++i) {
            const double r = (y[i] - (f.prefactor * std::pow(x[i], f.exponent) + c)) / y[i];
            rr += r * r;
        }
        f.residual = std::sqrt(rr / dn);
        return f;
    };
    if (!with_offset) return regress(0.0);
    const double c_max = *std::min_element(y.begin(), y.end()) * (1.0 - 1e-9);
    const double c = golden_min([&](double cc) { return regress(cc).residual; }, 0.0, c_max, 1e-12);
    auto f = regress(c);
    const auto f0 = regress(0.0);
    return f0.residual <= f.residual ? f0 : f;
}

double residual_error(const Trajectory& traj, const QuantumState& target) {
    if (traj.states.empty()) throw ValidationError("residual_error: trajectory has no end-of-cycle sample");
    return 1.0 - population(traj.states.back(), target);
}

double improvement_factor(const DecayFit& logical, double physical_time) {
    if (!(logical.lifetime > 0.0) || !(physical_time > 0.0))
        throw ValidationError("improvement_factor: lifetimes must be positive");
    return logical.lifetime / physical_time;
}

LongTimeDecay long_time_decay(const Matrix& base_map, double base_step_ns, const Vector& v0,
                              const Eigen::RowVectorXcd& row, double lifetime_guess_us,
                              const LongTimeOptions& options) {
    if (!(base_step_ns > 0.0) || !(lifetime_guess_us > 0.0))
        throw ValidationError("long_time_decay: step and lifetime guess must be positive");
    if (options.samples < 5) throw ValidationError("long_time_decay: need at least 5 samples");
    std::vector<Matrix> pow2{base_map};
    auto power = [&](long s) {
        Matrix m = Matrix::Identity(base_map.rows(), base_map.cols());
        for (int bit = 0; (1L << bit) <= s; ++bit) {
            while (static_cast<int>(pow2.size()) <= bit) pow2.push_back(pow2.back() * pow2.back());
            if (s & (1L << bit)) m = m * pow2[bit];
        }
        return m;
    };
    LongTimeDecay out;
    double guess = lifetime_guess_us;
    long prev_stride = -1;
    for (int round = 1; round <= options.max_rounds; ++round) {
        const double window_ns = options.window_factor * guess * 1e3;
        const long stride = std::max(1L, std::lround(window_ns / (options.samples * base_step_ns)));
        if (stride == prev_stride && round > 1) break;
        prev_stride = stride;
        const Matrix step = power(stride);
        out.times_us.assign(1, 0.0);
        out.values.assign(1, (row * v0)(0).real());
        Vector v = v0;
        for (int i = 1; i <= options.samples; ++i) {
            v = step * v;
            out.times_us.push_back(i * stride * base_step_ns * 1e-3);
            out.values.push_back((row * v)(0).real());
        }
        out.fit = fit_lifetime(out.times_us, out.values, DecayModel::ExpWithOffset);
        out.rounds = round;
        const double change = std::abs(out.fit.lifetime - guess) / guess;
        guess = out.fit.lifetime;
        if (change < options.rel_tol) break;
    }
    return out;
}

namespace {

std::string record_with_provenance(textrec::Document doc, const std::map<std::string, std::string>& provenance) {
    auto& sec = doc.section("provenance");
    for (const auto& [k, v] : provenance) sec.set(k, textrec::Value::of_word(v));
    return doc.to_text();
}

}  // namespace

std::string decay_fit_record(const DecayFit& fit, const std::map<std::string, std::string>& provenance) {
    textrec::Document doc;
    auto& sec = doc.section("decay_fit");
    sec.set("lifetime", textrec::Value::of(fit.lifetime, "us"));
    sec.set("amplitude", textrec::Value::of(fit.amplitude));
    sec.set("offset", textrec::Value::of(fit.offset));
    sec.set("r_squared", textrec::Value::of(fit.r_squared));
    return record_with_provenance(std::move(doc), provenance);
}

std::string scaling_fit_record(const ScalingFit& fit, const std::map<std::string, std::string>& provenance) {
    textrec::Document doc;
    auto& sec = doc.section("scaling_fit");
    sec.set("exponent", textrec::Value::of(fit.exponent));
    sec.set("prefactor", textrec::Value::of(fit.prefactor));
    sec.set("offset", textrec::Value::of(fit.offset));
    sec.set("residual", textrec::Value::of(fit.residual));
    return record_with_provenance(std::move(doc), provenance);
}

}  // namespace aqec
