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

#include "aqec/models.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "aqec/errors.hpp"

namespace aqec {

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;

// Site indices.
constexpr int kQ = 0, kR = 1;
constexpr int kSl = 0, kL = 1, kRt = 2, kSr = 3;

Vector level_vec(int dim, std::initializer_list<std::pair<int, double>> amps) {
    Vector v = Vector::Zero(dim);
    for (auto [lvl, a] : amps) v(lvl) = a;
    return v;
}

Vector plus3() { return level_vec(3, {{0, kInvSqrt2}, {2, kInvSqrt2}}); }
Vector minus3() { return level_vec(3, {{0, kInvSqrt2}, {2, -kInvSqrt2}}); }
Vector ground(int dim) { return level_vec(dim, {{0, 1.0}}); }
Vector excited(int dim) { return level_vec(dim, {{1, 1.0}}); }

void require_positive(double x, const char* what) {
    if (!(x > 0.0)) throw ValidationError(std::string(what) + " must be positive");
}

void require_nonnegative(double x, const char* what) {
    if (!(x >= 0.0)) throw ValidationError(std::string(what) + " must be non-negative");
}

}  // namespace

VslqModel VslqModel::with_default_shadow(double w, double delta, double gamma_p, double gamma_s) {
    return VslqModel{w, delta, w + delta / 2.0, gamma_p, gamma_s};
}

const Channel& ModelSystem::channel(const std::string& name) const {
    for (const auto& c : channels)
        if (c.name == name) return c;
    throw ValidationError("model has no channel named '" + name + "'");
}

Matrix x_tilde(int dim) {
    const Matrix a = ladder(dim);
    const Matrix ad = a.adjoint();
    return (ad * ad + a * a) * kInvSqrt2;
}

Matrix z_tilde(int dim) { return projector(dim, 2) - projector(dim, 0); }

ModelSystem build_single_qubit(const SingleQubitModel& m) {
    require_positive(m.delta, "delta");
    require_nonnegative(m.gamma_q, "gamma_q");
    require_nonnegative(m.gamma_r, "gamma_r");
    TensorSpace sp({3, 2});
    const Operator aq = embed(ladder(3), kQ, sp);
    const Operator ar = embed(ladder(2), kR, sp);
    const Operator pair_down = aq * ar;
    const Operator pair_up = pair_down.adjoint();

    ModelSystem sys;
    sys.space = sp;
    sys.h_static = embed(projector(3, 2), kQ, sp) * Complex(-m.delta);
    sys.h_x = pair_down + pair_up;
    sys.h_y = (pair_up - pair_down) * kI;
    sys.channels = {{"q", aq, m.gamma_q}, {"r", ar, m.gamma_r}};
    return sys;
}

ModelSystem build_three_qubit(const ThreeQubitModel& m) {
    require_positive(m.j, "J");
    require_nonnegative(m.gamma_p, "gamma_p");
    require_nonnegative(m.gamma_r, "gamma_r");
    TensorSpace sp({2, 2, 2, 2, 2, 2});
    std::vector<Operator> zp, xp, zr, xr, yr, mr;
    for (int i = 0; i < 3; ++i) {
        zp.push_back(embed(pauli_z(), i, sp));
        xp.push_back(embed(pauli_x(), i, sp));
        zr.push_back(embed(pauli_z(), 3 + i, sp));
        xr.push_back(embed(pauli_x(), 3 + i, sp));
        yr.push_back(embed(pauli_y(), 3 + i, sp));
        mr.push_back(embed(sigma_minus(), 3 + i, sp));
    }
    ModelSystem sys;
    sys.space = sp;
    Operator hp = (zp[0] * zp[1] + zp[1] * zp[2] + zp[0] * zp[2]) * Complex(-m.j);
    Operator hr = (zr[0] + zr[1] + zr[2]) * Complex(-2.0 * m.j);
    sys.h_static = hp + hr;
    sys.h_x = Operator::zero(sp);
    sys.h_y = Operator::zero(sp);
    for (int i = 0; i < 3; ++i) {
        sys.h_x += xp[i] * xr[i];
        sys.h_y += xp[i] * yr[i];
    }
    for (int i = 0; i < 3; ++i) sys.channels.push_back({"p" + std::to_string(i + 1), xp[i], m.gamma_p});
    for (int i = 0; i < 3; ++i) sys.channels.push_back({"r" + std::to_string(i + 1), mr[i], m.gamma_r});
    return sys;
}

ModelSystem build_vslq(const VslqModel& m) {
    require_positive(m.w, "W");
    require_positive(m.delta, "delta");
    require_positive(m.omega_s, "omega_s");
    require_nonnegative(m.gamma_p, "gamma_p");
    require_nonnegative(m.gamma_s, "gamma_s");
    TensorSpace sp({2, 3, 3, 2});
    const Operator a_sl = embed(ladder(2), kSl, sp);
    const Operator a_l = embed(ladder(3), kL, sp);
    const Operator a_r = embed(ladder(3), kRt, sp);
    const Operator a_sr = embed(ladder(2), kSr, sp);
    const Operator xl = embed(x_tilde(3), kL, sp);
    const Operator xr = embed(x_tilde(3), kRt, sp);

    ModelSystem sys;
    sys.space = sp;
    sys.h_static = (xl * xr) * Complex(-m.w) +
                   (embed(projector(3, 1), kL, sp) + embed(projector(3, 1), kRt, sp)) * Complex(m.delta / 2.0) +
                   (embed(number_op(2), kSl, sp) + embed(number_op(2), kSr, sp)) * Complex(m.omega_s);
    const Operator up = a_l.adjoint() * a_sl.adjoint() + a_r.adjoint() * a_sr.adjoint();
    const Operator down = up.adjoint();
    sys.h_x = up + down;
    sys.h_y = (up - down) * kI;
    sys.channels = {{"sl", a_sl, m.gamma_s}, {"l", a_l, m.gamma_p}, {"r", a_r, m.gamma_p}, {"sr", a_sr, m.gamma_s}};
    return sys;
}

ModelSystem build_model(const ModelSpec& spec) {
    return std::visit(
        [](const auto& m) -> ModelSystem {
            using T = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<T, SingleQubitModel>) return build_single_qubit(m);
            else if constexpr (std::is_same_v<T, ThreeQubitModel>) return build_three_qubit(m);
            else return build_vslq(m);
        },
        spec);
}

std::string model_kind(const ModelSpec& spec) {
    switch (spec.index()) {
        case 0: return "single_qubit";
        case 1: return "three_qubit";
        default: return "vslq";
    }
}

std::vector<std::string> validity_warnings(const ModelSpec& spec, double peak_omega) {
    std::vector<std::string> out;
    std::ostringstream msg;
    if (const auto* sq = std::get_if<SingleQubitModel>(&spec)) {
        if (peak_omega > sq->delta / 5.0) {
            msg << "peak coupling " << peak_omega << " rad/ns exceeds delta/5 = " << sq->delta / 5.0;
            out.push_back(msg.str());
        }
    } else if (const auto* v = std::get_if<VslqModel>(&spec)) {
        if (v->delta < 5.0 * v->w) {
            msg << "delta = " << v->delta << " rad/ns is below 5 W = " << 5.0 * v->w;
            out.push_back(msg.str());
            msg.str("");
        }
        if (v->w < 5.0 * peak_omega) {
            msg << "W = " << v->w << " rad/ns is below 5 x peak coupling = " << 5.0 * peak_omega;
            out.push_back(msg.str());
        }
    }
    return out;
}

VslqLogical vslq_logical(const TensorSpace& sp) {
    if (!(sp == TensorSpace({2, 3, 3, 2}))) throw ValidationError("vslq_logical: expected dims [2, 3, 3, 2]");
    VslqLogical lg;
    lg.zero = product_state(sp, {ground(2), plus3(), plus3(), ground(2)});
    lg.one = product_state(sp, {ground(2), minus3(), minus3(), ground(2)});
    lg.x_l = embed(x_tilde(3), kL, sp);
    lg.z_l = embed(z_tilde(3), kL, sp) * embed(z_tilde(3), kRt, sp);
    lg.y_l = (lg.x_l * lg.z_l) * kI;
    // In the {|0_L>, |1_L>} basis X_L = sigma_z and Z_L = sigma_x, so Y_L = -sigma_y.
    lg.y_plus = QuantumState::normalized(sp, lg.zero.vector() - kI * lg.one.vector());
    lg.y_minus = QuantumState::normalized(sp, lg.zero.vector() + kI * lg.one.vector());
    return lg;
}

QuantumState vslq_error_left(const TensorSpace& sp, int sign) {
    return product_state(sp, {ground(2), excited(3), sign > 0 ? plus3() : minus3(), ground(2)});
}

QuantumState vslq_error_right(const TensorSpace& sp, int sign) {
    return product_state(sp, {ground(2), sign > 0 ? plus3() : minus3(), excited(3), ground(2)});
}

ThreeQubitCode three_qubit_code(const TensorSpace& sp) {
    return {basis_state(sp, {0, 0, 0, 0, 0, 0}), basis_state(sp, {1, 1, 1, 0, 0, 0})};
}

int majority_vote(const std::vector<int>& bits) {
    if (bits.size() != 3) throw ValidationError("majority_vote: expected three bits");
    int ones = 0;
    for (int b : bits) {
        if (b != 0 && b != 1) throw ValidationError("majority_vote: bits must be 0 or 1");
        ones += b;
    }
    return ones >= 2 ? 1 : 0;
}

void TargetOperation::validate() const {
    if (pairs.empty()) throw ValidationError("TargetOperation: no pairs");
    double total = 0.0;
    for (const auto& p : pairs) {
        if (p.weight < 0.0) throw ValidationError("TargetOperation: negative weight");
        if (!p.initial.is_pure() || !p.final.is_pure())
            throw ValidationError("TargetOperation: states must be pure");
        if (std::abs(p.initial.vector().squaredNorm() - 1.0) > 1e-10 ||
            std::abs(p.final.vector().squaredNorm() - 1.0) > 1e-10)
            throw ValidationError("TargetOperation: states must have unit norm");
        total += p.weight;
    }
    if (std::abs(total - 1.0) > 1e-12) throw ValidationError("TargetOperation: weights must sum to 1");
}

namespace {

void set_uniform_weights(TargetOperation& op) {
    for (auto& p : op.pairs) p.weight = 1.0 / static_cast<double>(op.pairs.size());
}

std::string bits_label(const std::vector<int>& bits) {
    std::string s;
    for (int b : bits) s += static_cast<char>('0' + b);
    return s;
}

void add_three_qubit_class(TargetOperation& op, const TensorSpace& sp, int logical) {
    const int c = logical;
    const std::vector<int> code{c, c, c};
    op.pairs.push_back({basis_state(sp, {c, c, c, 0, 0, 0}), basis_state(sp, {c, c, c, 0, 0, 0}), 0.0,
                        bits_label(code) + " -> " + bits_label(code)});
    for (int i = 0; i < 3; ++i) {
        std::vector<int> occ{c, c, c, 0, 0, 0};
        occ[i] = 1 - c;
        const std::vector<int> bits(occ.begin(), occ.begin() + 3);
        // The minority qubit flips toward the majority and its own resonator absorbs the excitation.
        std::vector<int> fin{c, c, c, 0, 0, 0};
        fin[3 + i] = 1;
        op.pairs.push_back({basis_state(sp, occ), basis_state(sp, fin), 0.0,
                            bits_label(bits) + "|000 -> " + bits_label(code) + "|" +
                                bits_label(std::vector<int>(fin.begin() + 3, fin.end()))});
    }
}

}  // namespace

TargetOperation target_operation(const ModelSpec& spec, const std::string& label) {
    TargetOperation op;
    if (std::holds_alternative<SingleQubitModel>(spec)) {
        if (label != "excited") throw ValidationError("unknown single-qubit target label '" + label + "'");
        const TensorSpace sp({3, 2});
        op.pairs.push_back({basis_state(sp, {0, 0}), basis_state(sp, {1, 1}), 0.0, "00 -> 11"});
        op.pairs.push_back({basis_state(sp, {1, 0}), basis_state(sp, {1, 0}), 0.0, "10 -> 10"});
    } else if (std::holds_alternative<ThreeQubitModel>(spec)) {
        const TensorSpace sp({2, 2, 2, 2, 2, 2});
        if (label == "0L" || label == "both") add_three_qubit_class(op, sp, 0);
        if (label == "1L" || label == "both") add_three_qubit_class(op, sp, 1);
        if (op.pairs.empty()) throw ValidationError("unknown three-qubit target label '" + label + "'");
    } else {
        if (label != "logical") throw ValidationError("unknown VSLQ target label '" + label + "'");
        const TensorSpace sp({2, 3, 3, 2});
        const auto lg = vslq_logical(sp);
        for (int sign : {+1, -1}) {
            const Vector& lr = sign > 0 ? plus3() : minus3();
            op.pairs.push_back({vslq_error_left(sp, sign), product_state(sp, {excited(2), lr, lr, ground(2)}), 0.0,
                                std::string("Err_l") + (sign > 0 ? "+" : "-")});
            op.pairs.push_back({vslq_error_right(sp, sign), product_state(sp, {ground(2), lr, lr, excited(2)}), 0.0,
                                std::string("Err_r") + (sign > 0 ? "+" : "-")});
        }
        op.pairs.push_back({lg.zero, lg.zero, 0.0, "0_L -> 0_L"});
        op.pairs.push_back({lg.one, lg.one, 0.0, "1_L -> 1_L"});
    }
    set_uniform_weights(op);
    return op;
}

std::string default_target_label(const ModelSpec& spec) {
    switch (spec.index()) {
        case 0: return "excited";
        case 1: return "both";
        default: return "logical";
    }
}

}  // namespace aqec
