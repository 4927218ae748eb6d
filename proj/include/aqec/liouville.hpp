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

// Superoperator form of the Lindblad generator restricted to the matrix
// elements (j, k) reachable from an initial density matrix. Used for
// long-time sampling: one-period transfer maps raised to large powers replace
// millisecond-scale integration.

#pragma once

#include <Eigen/Sparse>
#include <vector>

#include "aqec/models.hpp"
#include "aqec/pulse.hpp"

namespace aqec {

using SparseSuper = Eigen::SparseMatrix<Complex, Eigen::ColMajor>;

class SectorLiouvillian {
   public:
    /// `seeds` are density matrices whose nonzero entries start the closure.
    SectorLiouvillian(const ModelSystem& sys, const std::vector<Matrix>& seeds);

    int size() const { return static_cast<int>(pairs_.size()); }
    int full_dim() const { return full_dim_; }

    /// L = L_static + cx L_x + cy L_y + sum_k rate_k D_k, rates in channel order.
    SparseSuper generator(CouplingValue c, const std::vector<double>& rates) const;

    Vector vec(const Matrix& rho) const;
    Matrix unvec(const Vector& v) const;
    /// Row r with <op> = r . v.
    Eigen::RowVectorXcd observable_row(const Operator& op) const;

    /// exp(L dt) for constant coupling and rates.
    Matrix constant_map(CouplingValue c, const std::vector<double>& rates, double dt) const;
    /// Propagator of the pulse phase [0, t_end] with constant rates; t_end < 0 means t_p.
    Matrix pulse_map(const PulseShape& pulse, const std::vector<double>& rates, double rtol,
                     double t_end = -1.0) const;
    /// Normalized null vector of `l` (trace fixed to one).
    Vector steady_state(const SparseSuper& l) const;
    /// Row r with Tr(rho) = r . v.
    Eigen::RowVectorXcd trace_row() const;
    /// Reset-after-pulse map for one full cycle.
    Matrix cycle_map(const PulseShape& pulse, const CycleSchedule& schedule, const ModelSystem& sys,
                     double rtol) const;

   private:
    int full_dim_ = 0;
    std::vector<std::pair<int, int>> pairs_;
    std::vector<int> index_;  // j * n + k -> sector index or -1
    SparseSuper l_static_, l_x_, l_y_;
    std::vector<SparseSuper> dissipators_;
};

/// M^n by repeated squaring.
Matrix matrix_power(const Matrix& m, long n);

}  // namespace aqec
