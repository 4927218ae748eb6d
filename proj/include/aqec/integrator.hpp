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

// Dormand-Prince 5(4) with a max-norm error estimate scaled by the largest
// state entry:  err = max|e_i| / (atol + rtol * max(max|y_i|, max|y'_i|)).
// Works on any Eigen dense type.

#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <type_traits>

#include "aqec/errors.hpp"

namespace aqec {

struct OdeOptions {
    double rtol = 1e-10;
    double atol = 1e-13;
    double h_max = 0.0;  // 0 means unbounded
    long max_steps = 50'000'000;
};

struct OdeStats {
    long accepted = 0;
    long rejected = 0;
};

namespace detail {

struct NoHook {
    template <class Y>
    void operator()(Y&) const {}
};

template <class Y>
double max_abs(const Y& y) {
    return y.size() ? y.cwiseAbs().maxCoeff() : 0.0;
}

}  // namespace detail

/// Advances y from t0 to t1. `f(t, y, dy)` writes dy/dt. `hook(y)` runs after
/// every accepted step. `h` carries the step size between calls (0 = choose).
template <class Y, class F, class Hook = detail::NoHook>
void dopri5(F&& f, double t0, double t1, Y& y, const OdeOptions& opt, double& h, OdeStats* stats = nullptr,
            Hook&& hook = Hook{}) {
    constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
    constexpr double a21 = 1.0 / 5;
    constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
    constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
    constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561, a54 = -212.0 / 729;
    constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                     a65 = -5103.0 / 18656;
    constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784, b6 = 11.0 / 84;
    constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                     e6 = 22.0 / 525, e7 = -1.0 / 40;

    const double span = t1 - t0;
    if (span < 0.0) throw ValidationError("dopri5: t1 < t0");
    if (span == 0.0) return;

    Y k1, k2, k3, k4, k5, k6, k7, tmp, ynew, err;
    f(t0, y, k1);
    if (h <= 0.0) {
        const double fy = detail::max_abs(k1);
        const double sy = std::max(detail::max_abs(y), 1e-300);
        h = fy > 0.0 ? 0.01 * sy / fy : span;
        h = std::max(h, 1e-6 * span);
    }
    if (opt.h_max > 0.0) h = std::min(h, opt.h_max);

    double t = t0;
    long steps = 0;
    while (t < t1) {
        if (++steps > opt.max_steps)
            throw IntegrityError("integrator exceeded the step budget", static_cast<double>(steps));
        bool last = false;
        double hs = h;
        if (t + hs >= t1 || t + 1.01 * hs >= t1) {
            hs = t1 - t;
            last = true;
        }
        tmp = y + hs * (a21 * k1);
        f(t + c2 * hs, tmp, k2);
        tmp = y + hs * (a31 * k1 + a32 * k2);
        f(t + c3 * hs, tmp, k3);
        tmp = y + hs * (a41 * k1 + a42 * k2 + a43 * k3);
        f(t + c4 * hs, tmp, k4);
        tmp = y + hs * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4);
        f(t + c5 * hs, tmp, k5);
        tmp = y + hs * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5);
        f(last ? t1 : t + hs, tmp, k6);
        ynew = y + hs * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
        f(last ? t1 : t + hs, ynew, k7);
        err = hs * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);

        const double scale = opt.atol + opt.rtol * std::max(detail::max_abs(y), detail::max_abs(ynew));
        const double e = detail::max_abs(err) / scale;
        if (!std::isfinite(e)) throw IntegrityError("integrator produced a non-finite state", e);

        if (e <= 1.0) {
            t = last ? t1 : t + hs;
            y.swap(ynew);
            hook(y);
            if (stats) ++stats->accepted;
            // FSAL: the last stage is the derivative at the new point, unless the hook changed y.
            if constexpr (std::is_same_v<std::decay_t<Hook>, detail::NoHook>) {
                k1.swap(k7);
            } else {
                f(t, y, k1);
            }
            const double fac = e > 0.0 ? std::clamp(0.9 * std::pow(e, -0.2), 0.2, 5.0) : 5.0;
            if (!last) h = hs * fac;
        } else {
            if (stats) ++stats->rejected;
            h = hs * std::clamp(0.9 * std::pow(e, -0.2), 0.1, 0.9);
        }
        if (opt.h_max > 0.0) h = std::min(h, opt.h_max);
        if (h < 1e-13 * std::max(1.0, std::abs(t)))
            throw IntegrityError("integrator step size underflow at t = " + std::to_string(t), e);
    }
}

}  // namespace aqec
