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

// Rotating-frame models for dissipative state stabilization:
//
//   single qubit   dims [3, 2]              (q, r)
//   three-qubit    dims [2, 2, 2, 2, 2, 2]  (P1, P2, P3, R1, R2, R3)
//   VSLQ           dims [2, 3, 3, 2]        (Sl, l, r, Sr)
//
// Each builder returns H(t) = h_static + Omega_x(t) h_x + Omega_y(t) h_y plus
// the loss channels at their nominal (always-on) rates.

#pragma once

#include <string>
#include <variant>
#include <vector>

#include "aqec/hilbert.hpp"

namespace aqec {

struct SingleQubitModel {
    double delta = 0.0;    // nonlinearity, rad/ns
    double gamma_q = 0.0;  // primary loss, 1/ns
    double gamma_r = 0.0;  // lossy resonator, 1/ns
};

struct ThreeQubitModel {
    double j = 0.0;        // energy scale, rad/ns
    double gamma_p = 0.0;  // primary bit-flip rate, 1/ns
    double gamma_r = 0.0;  // lossy qubit decay, 1/ns
};

struct VslqModel {
    double w = 0.0;        // rad/ns
    double delta = 0.0;    // rad/ns
    double omega_s = 0.0;  // shadow frequency, rad/ns
    double gamma_p = 0.0;  // primary photon loss, 1/ns
    double gamma_s = 0.0;  // shadow loss, 1/ns

    /// omega_s defaults to W + delta/2.
    static VslqModel with_default_shadow(double w, double delta, double gamma_p, double gamma_s);
};

using ModelSpec = std::variant<SingleQubitModel, ThreeQubitModel, VslqModel>;

struct Channel {
    std::string name;
    Operator op;
    double rate = 0.0;  // 1/ns
};

struct ModelSystem {
    TensorSpace space;
    Operator h_static;
    Operator h_x;
    Operator h_y;
    std::vector<Channel> channels;

    const Channel& channel(const std::string& name) const;
};

ModelSystem build_single_qubit(const SingleQubitModel& m);
ModelSystem build_three_qubit(const ThreeQubitModel& m);
ModelSystem build_vslq(const VslqModel& m);
ModelSystem build_model(const ModelSpec& spec);

std::string model_kind(const ModelSpec& spec);

/// Human-readable notes when a model is outside its validity regime for a
/// coupling of peak amplitude `peak_omega` (rad/ns). Empty when fine.
std::vector<std::string> validity_warnings(const ModelSpec& spec, double peak_omega);

// ---------------------------------------------------------------------------
// Named states and logical operators.

struct VslqLogical {
    QuantumState zero;     // |0_L> = |+>_l |+>_r |0 0>_S
    QuantumState one;      // |1_L> = |->_l |->_r |0 0>_S
    QuantumState y_plus;   // +1 eigenstate of Y_L
    QuantumState y_minus;  // -1 eigenstate of Y_L
    Operator x_l;          // X_L = Xt_l
    Operator z_l;          // Z_L = Zt_l Zt_r
    Operator y_l;          // Y_L = i X_L Z_L
};

VslqLogical vslq_logical(const TensorSpace& space);

/// |1_l> (x) (|0_r> + sign |2_r>)/sqrt2 (x) |0_Sl 0_Sr>, sign = +1 or -1.
QuantumState vslq_error_left(const TensorSpace& space, int sign);
QuantumState vslq_error_right(const TensorSpace& space, int sign);

/// Xt = (a^dag a^dag + a a)/sqrt2 and Zt = P^2 - P^0 on one three-level site.
Matrix x_tilde(int dim);
Matrix z_tilde(int dim);

struct ThreeQubitCode {
    QuantumState zero;  // |000>_P |000>_R
    QuantumState one;   // |111>_P |000>_R
};

ThreeQubitCode three_qubit_code(const TensorSpace& space);

/// Majority vote over primary bits: 0 for 0_L, 1 for 1_L.
int majority_vote(const std::vector<int>& bits);

// ---------------------------------------------------------------------------
// Target operations: weighted (initial -> final) state pairs.

struct TargetPair {
    QuantumState initial;
    QuantumState final;
    double weight = 0.0;
    std::string label;
};

struct TargetOperation {
    std::vector<TargetPair> pairs;

    void validate() const;
};

/// Labels:
///   single qubit: "excited"    {|00> -> |11>, |10> -> |10>}
///   three-qubit:  "0L", "1L"   code state plus its three single flips
///                 "both"       all eight
///   VSLQ:         "logical"    both error branches on each side, plus |0_L>, |1_L>
/// Weights are uniform. Throws ValidationError for an unknown label.
TargetOperation target_operation(const ModelSpec& spec, const std::string& label);

std::string default_target_label(const ModelSpec& spec);

}  // namespace aqec
