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

#include "aqec/liouville.hpp"

#include <deque>
#include <unsupported/Eigen/MatrixFunctions>

#include "aqec/errors.hpp"
#include "aqec/integrator.hpp"

namespace aqec {

namespace {

using Triplets = std::vector<Eigen::Triplet<Complex>>;

bool nz(Complex z) { return z != Complex(0.0); }

}  // namespace

SectorLiouvillian::SectorLiouvillian(const ModelSystem& sys, const std::vector<Matrix>& seeds) {
    const int n = sys.space.total_dim();
    full_dim_ = n;
    if (seeds.empty()) throw ValidationError("SectorLiouvillian: need at least one seed");

    std::vector<Matrix> ls;
    Matrix pattern = sys.h_static.matrix().cwiseAbs().cast<Complex>() +
                     sys.h_x.matrix().cwiseAbs().cast<Complex>() + sys.h_y.matrix().cwiseAbs().cast<Complex>();
    for (const auto& ch : sys.channels) {
        ls.push_back(ch.op.matrix());
        pattern += (ch.op.matrix().adjoint() * ch.op.matrix()).cwiseAbs().cast<Complex>();
    }

    index_.assign(static_cast<size_t>(n) * n, -1);
    std::deque<std::pair<int, int>> queue;
    auto visit = [&](int j, int k) {
        int& slot = index_[static_cast<size_t>(j) * n + k];
        if (slot >= 0) return;
        slot = static_cast<int>(pairs_.size());
        pairs_.push_back({j, k});
        queue.push_back({j, k});
    };
    for (const auto& s : seeds) {
        if (s.rows() != n || s.cols() != n) throw ValidationError("SectorLiouvillian: seed has wrong size");
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k)
                if (nz(s(j, k))) visit(j, k);
    }
    while (!queue.empty()) {
        const auto [a, b] = queue.front();
        queue.pop_front();
        for (int j = 0; j < n; ++j)
            if (nz(pattern(j, a))) visit(j, b);
        for (int k = 0; k < n; ++k)
            if (nz(pattern(b, k))) visit(a, k);
        for (const auto& l : ls)
            for (int j = 0; j < n; ++j) {
                if (!nz(l(j, a))) continue;
                for (int k = 0; k < n; ++k)
                    if (nz(l(k, b))) visit(j, k);
            }
    }

    const int m = size();
    // Commutator term -i[H, .] as a sector superoperator.
    auto commutator = [&](const Matrix& h) {
        Triplets t;
        for (int s = 0; s < m; ++s) {
            const auto [l, k] = pairs_[s];
            for (int j = 0; j < n; ++j)
                if (nz(h(j, l))) t.emplace_back(index_[static_cast<size_t>(j) * n + k], s, Complex(0, -1) * h(j, l));
            const auto [j, l2] = pairs_[s];
            for (int k2 = 0; k2 < n; ++k2)
                if (nz(h(l2, k2)))
                    t.emplace_back(index_[static_cast<size_t>(j) * n + k2], s, Complex(0, 1) * h(l2, k2));
        }
        SparseSuper out(m, m);
        out.setFromTriplets(t.begin(), t.end());
        return out;
    };
    l_static_ = commutator(sys.h_static.matrix());
    l_x_ = commutator(sys.h_x.matrix());
    l_y_ = commutator(sys.h_y.matrix());

    for (const auto& l : ls) {
        const Matrix ldl = l.adjoint() * l;
        Triplets t;
        for (int s = 0; s < m; ++s) {
            const auto [a, b] = pairs_[s];
            for (int j = 0; j < n; ++j) {
                if (!nz(l(j, a))) continue;
                for (int k = 0; k < n; ++k)
                    if (nz(l(k, b)))
                        t.emplace_back(index_[static_cast<size_t>(j) * n + k], s, l(j, a) * std::conj(l(k, b)));
            }
            for (int j = 0; j < n; ++j)
                if (nz(ldl(j, a))) t.emplace_back(index_[static_cast<size_t>(j) * n + b], s, -0.5 * ldl(j, a));
            for (int k = 0; k < n; ++k)
                if (nz(ldl(b, k))) t.emplace_back(index_[static_cast<size_t>(a) * n + k], s, -0.5 * ldl(b, k));
        }
        SparseSuper d(m, m);
        d.setFromTriplets(t.begin(), t.end());
        dissipators_.push_back(std::move(d));
    }
}

SparseSuper SectorLiouvillian::generator(CouplingValue c, const std::vector<double>& rates) const {
    if (rates.size() != dissipators_.size()) throw ValidationError("SectorLiouvillian: wrong number of rates");
    SparseSuper l = l_static_;
    if (c.x != 0.0) l += Complex(c.x) * l_x_;
    if (c.y != 0.0) l += Complex(c.y) * l_y_;
    for (size_t k = 0; k < rates.size(); ++k)
        if (rates[k] != 0.0) l += Complex(rates[k]) * dissipators_[k];
    return l;
}

Vector SectorLiouvillian::vec(const Matrix& rho) const {
    const int n = full_dim_;
    if (rho.rows() != n || rho.cols() != n) throw ValidationError("SectorLiouvillian::vec: wrong size");
    for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k)
            if (nz(rho(j, k)) && index_[static_cast<size_t>(j) * n + k] < 0)
                throw ValidationError("SectorLiouvillian::vec: state has weight outside the sector");
    Vector v(size());
    for (int s = 0; s < size(); ++s) v(s) = rho(pairs_[s].first, pairs_[s].second);
    return v;
}

Matrix SectorLiouvillian::unvec(const Vector& v) const {
    Matrix rho = Matrix::Zero(full_dim_, full_dim_);
    for (int s = 0; s < size(); ++s) rho(pairs_[s].first, pairs_[s].second) = v(s);
    return rho;
}

Eigen::RowVectorXcd SectorLiouvillian::observable_row(const Operator& op) const {
    Eigen::RowVectorXcd r(size());
    for (int s = 0; s < size(); ++s) r(s) = op.matrix()(pairs_[s].second, pairs_[s].first);
    return r;
}

Matrix SectorLiouvillian::constant_map(CouplingValue c, const std::vector<double>& rates, double dt) const {
    const Matrix l = Matrix(generator(c, rates)) * Complex(dt);
    return l.exp();
}

Matrix SectorLiouvillian::pulse_map(const PulseShape& pulse, const std::vector<double>& rates, double rtol,
                                    double t_end) const {
    if (t_end < 0.0) t_end = pulse.t_p();
    if (t_end > pulse.t_p()) throw ValidationError("pulse_map: t_end beyond the pulse");
    const SparseSuper l0 = generator({}, rates);
    auto rhs = [&](double t, const Matrix& m, Matrix& dm) {
        const auto c = pulse.evaluate(std::clamp(t, 0.0, pulse.t_p()));
        dm = l0 * m;
        if (c.x != 0.0) dm += Complex(c.x) * (l_x_ * m);
        if (c.y != 0.0) dm += Complex(c.y) * (l_y_ * m);
    };
    Matrix m = Matrix::Identity(size(), size());
    OdeOptions opt;
    opt.rtol = rtol;
    opt.atol = 1e-3 * rtol;
    double h = 0.0;
    if (t_end > 0.0) dopri5(rhs, 0.0, t_end, m, opt, h);
    return m;
}

Eigen::RowVectorXcd SectorLiouvillian::trace_row() const {
    Eigen::RowVectorXcd r = Eigen::RowVectorXcd::Zero(size());
    for (int s = 0; s < size(); ++s)
        if (pairs_[s].first == pairs_[s].second) r(s) = 1.0;
    return r;
}

Vector SectorLiouvillian::steady_state(const SparseSuper& l) const {
    if (l.rows() != size() || l.cols() != size()) throw ValidationError("steady_state: generator has the wrong size");
    // Replace one row of L v = 0 by the trace condition.
    Matrix a = Matrix(l);
    const auto tr = trace_row();
    int pick = -1;
    for (int s = 0; s < size() && pick < 0; ++s)
        if (tr(s) != Complex(0.0)) pick = s;
    if (pick < 0) throw ValidationError("steady_state: sector holds no diagonal element");
    a.row(pick) = tr;
    Vector b = Vector::Zero(size());
    b(pick) = 1.0;
    Vector v = a.fullPivLu().solve(b);
    if (!v.allFinite()) throw IntegrityError("steady_state: singular system", 0.0);
    return v;
}

Matrix SectorLiouvillian::cycle_map(const PulseShape& pulse, const CycleSchedule& schedule, const ModelSystem& sys,
                                    double rtol) const {
    schedule.validate();
    std::vector<double> rp, rr;
    for (const auto& ch : sys.channels) {
        rp.push_back(schedule.rate_pulse.at(ch.name));
        rr.push_back(schedule.rate_reset.at(ch.name));
    }
    Matrix m = pulse_map(pulse, rp, rtol);
    if (schedule.t_r > 0.0) m = constant_map({}, rr, schedule.t_r) * m;
    return m;
}

Matrix matrix_power(const Matrix& m, long n) {
    if (n < 0) throw ValidationError("matrix_power: negative exponent");
    Matrix result = Matrix::Identity(m.rows(), m.cols());
    Matrix base = m;
    while (n > 0) {
        if (n & 1) result = result * base;
        n >>= 1;
        if (n) base = base * base;
    }
    return result;
}

}  // namespace aqec
