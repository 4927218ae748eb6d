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

#include "aqec/hilbert.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <string>

#include "aqec/errors.hpp"

namespace aqec {

namespace {

void require_same_space(const TensorSpace& a, const TensorSpace& b, const char* what) {
    if (!(a == b)) throw ValidationError(std::string(what) + ": tensor spaces differ");
}

Matrix kron(const Matrix& a, const Matrix& b) {
    Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

}  // namespace

TensorSpace::TensorSpace(std::vector<int> dims) : dims_(std::move(dims)) {
    if (dims_.empty()) throw ValidationError("TensorSpace needs at least one subsystem");
    total_ = 1;
    for (int d : dims_) {
        if (d < 2) throw ValidationError("TensorSpace: every subsystem dimension must be >= 2");
        total_ *= d;
    }
}

int TensorSpace::dim(int site) const {
    if (site < 0 || site >= num_sites()) throw ValidationError("TensorSpace: site out of range");
    return dims_[site];
}

int TensorSpace::flat_index(std::span<const int> occupations) const {
    if (static_cast<int>(occupations.size()) != num_sites())
        throw ValidationError("flat_index: occupation count does not match subsystem count");
    int idx = 0;
    for (int s = 0; s < num_sites(); ++s) {
        if (occupations[s] < 0 || occupations[s] >= dims_[s])
            throw ValidationError("flat_index: occupation " + std::to_string(occupations[s]) +
                                  " out of range at site " + std::to_string(s));
        idx = idx * dims_[s] + occupations[s];
    }
    return idx;
}

std::vector<int> TensorSpace::occupations(int flat) const {
    if (flat < 0 || flat >= total_) throw ValidationError("occupations: index out of range");
    std::vector<int> occ(dims_.size());
    for (int s = num_sites() - 1; s >= 0; --s) {
        occ[s] = flat % dims_[s];
        flat /= dims_[s];
    }
    return occ;
}

Operator::Operator(TensorSpace space, Matrix matrix) : space_(std::move(space)), matrix_(std::move(matrix)) {
    const int n = space_.total_dim();
    if (matrix_.rows() != n || matrix_.cols() != n)
        throw ValidationError("Operator: matrix side " + std::to_string(matrix_.rows()) + "x" +
                              std::to_string(matrix_.cols()) + " does not match space dimension " +
                              std::to_string(n));
}

Operator Operator::zero(const TensorSpace& space) {
    return Operator(space, Matrix::Zero(space.total_dim(), space.total_dim()));
}

Operator Operator::identity(const TensorSpace& space) {
    return Operator(space, Matrix::Identity(space.total_dim(), space.total_dim()));
}

Operator Operator::adjoint() const { return Operator(space_, matrix_.adjoint()); }

bool Operator::is_hermitian(double tol) const {
    return (matrix_ - matrix_.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

Operator& Operator::operator+=(const Operator& rhs) {
    require_same_space(space_, rhs.space_, "Operator +");
    matrix_ += rhs.matrix_;
    return *this;
}

Operator& Operator::operator-=(const Operator& rhs) {
    require_same_space(space_, rhs.space_, "Operator -");
    matrix_ -= rhs.matrix_;
    return *this;
}

Operator& Operator::operator*=(Complex s) {
    matrix_ *= s;
    return *this;
}

Operator operator*(const Operator& lhs, const Operator& rhs) {
    require_same_space(lhs.space(), rhs.space(), "Operator *");
    return Operator(lhs.space(), lhs.matrix() * rhs.matrix());
}

QuantumState QuantumState::pure(TensorSpace space, Vector psi) {
    if (psi.size() != space.total_dim()) throw ValidationError("QuantumState: vector length mismatch");
    const double n2 = psi.squaredNorm();
    if (std::abs(n2 - 1.0) > 1e-10)
        throw ValidationError("QuantumState: pure state norm^2 = " + std::to_string(n2) + ", expected 1");
    return QuantumState(std::move(space), std::move(psi));
}

QuantumState QuantumState::normalized(TensorSpace space, Vector psi) {
    const double n = psi.norm();
    if (n == 0.0) throw ValidationError("QuantumState: cannot normalize the zero vector");
    psi /= n;
    return pure(std::move(space), std::move(psi));
}

QuantumState QuantumState::density(TensorSpace space, Matrix rho) {
    const int n = space.total_dim();
    if (rho.rows() != n || rho.cols() != n) throw ValidationError("QuantumState: density matrix side mismatch");
    const Complex tr = rho.trace();
    if (std::abs(tr - 1.0) > 1e-10)
        throw ValidationError("QuantumState: density trace = " + std::to_string(tr.real()));
    if ((rho - rho.adjoint()).cwiseAbs().maxCoeff() > 1e-12)
        throw ValidationError("QuantumState: density matrix is not Hermitian");
    Eigen::SelfAdjointEigenSolver<Matrix> es(rho, Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() < -1e-9)
        throw ValidationError("QuantumState: density matrix has eigenvalue " +
                              std::to_string(es.eigenvalues().minCoeff()));
    return QuantumState(std::move(space), std::move(rho));
}

QuantumState QuantumState::density_unchecked(TensorSpace space, Matrix rho) {
    return QuantumState(std::move(space), std::move(rho));
}

QuantumState QuantumState::pure_unchecked(TensorSpace space, Vector psi) {
    return QuantumState(std::move(space), std::move(psi));
}

const Vector& QuantumState::vector() const {
    if (!is_pure()) throw ValidationError("QuantumState: state is a density matrix, not a vector");
    return std::get<Vector>(repr_);
}

Matrix QuantumState::density_matrix() const {
    if (is_pure()) {
        const auto& v = std::get<Vector>(repr_);
        return v * v.adjoint();
    }
    return std::get<Matrix>(repr_);
}

QuantumState QuantumState::to_density() const {
    return QuantumState(space_, density_matrix());
}

Matrix ladder(int dim) {
    if (dim < 2) throw ValidationError("ladder: dim must be >= 2");
    Matrix a = Matrix::Zero(dim, dim);
    for (int n = 1; n < dim; ++n) a(n - 1, n) = std::sqrt(static_cast<double>(n));
    return a;
}

Matrix number_op(int dim) {
    if (dim < 2) throw ValidationError("number_op: dim must be >= 2");
    Matrix n = Matrix::Zero(dim, dim);
    for (int k = 0; k < dim; ++k) n(k, k) = k;
    return n;
}

Matrix projector(int dim, int level) {
    if (level < 0 || level >= dim) throw ValidationError("projector: level out of range");
    Matrix p = Matrix::Zero(dim, dim);
    p(level, level) = 1.0;
    return p;
}

Matrix identity_op(int dim) { return Matrix::Identity(dim, dim); }

Matrix pauli_x() {
    Matrix m(2, 2);
    m << 0, 1, 1, 0;
    return m;
}

Matrix pauli_y() {
    Matrix m(2, 2);
    m << 0, -kI, kI, 0;
    return m;
}

Matrix pauli_z() {
    Matrix m(2, 2);
    m << 1, 0, 0, -1;
    return m;
}

Matrix sigma_minus() { return ladder(2); }

Operator embed(const Matrix& local_op, int site, const TensorSpace& space) {
    const int d = space.dim(site);
    if (local_op.rows() != d || local_op.cols() != d)
        throw ValidationError("embed: local operator side " + std::to_string(local_op.rows()) +
                              " does not match dims[" + std::to_string(site) + "] = " + std::to_string(d));
    int left = 1;
    for (int s = 0; s < site; ++s) left *= space.dims()[s];
    const int right = space.total_dim() / (left * d);
    Matrix out = kron(kron(Matrix::Identity(left, left), local_op), Matrix::Identity(right, right));
    return Operator(space, std::move(out));
}

QuantumState basis_state(const TensorSpace& space, std::span<const int> occupations) {
    Vector psi = Vector::Zero(space.total_dim());
    psi(space.flat_index(occupations)) = 1.0;
    return QuantumState::pure(space, std::move(psi));
}

QuantumState basis_state(const TensorSpace& space, std::initializer_list<int> occupations) {
    return basis_state(space, std::span<const int>(occupations.begin(), occupations.size()));
}

QuantumState product_state(const TensorSpace& space, const std::vector<Vector>& factors) {
    if (static_cast<int>(factors.size()) != space.num_sites())
        throw ValidationError("product_state: factor count does not match subsystem count");
    Matrix acc = Matrix::Ones(1, 1);
    for (int s = 0; s < space.num_sites(); ++s) {
        if (factors[s].size() != space.dims()[s]) throw ValidationError("product_state: factor length mismatch");
        acc = kron(acc, Matrix(factors[s]));
    }
    return QuantumState::normalized(space, Vector(acc.col(0)));
}

double expectation(const Operator& op, const QuantumState& state) {
    require_same_space(op.space(), state.space(), "expectation");
    if (!op.is_hermitian(1e-9)) throw ValidationError("expectation: operator is not Hermitian");
    Complex val;
    if (state.is_pure()) {
        const Vector& v = state.vector();
        val = v.dot(op.matrix() * v);
    } else {
        val = (op.matrix() * state.density_matrix()).trace();
    }
    if (std::abs(val.imag()) > 1e-9)
        throw ValidationError("expectation: imaginary part " + std::to_string(val.imag()));
    return val.real();
}

double population(const QuantumState& state, const QuantumState& target) {
    require_same_space(state.space(), target.space(), "population");
    const Vector& t = target.vector();
    if (state.is_pure()) return std::norm(t.dot(state.vector()));
    return t.dot(state.density_matrix() * t).real();
}

double overlap_sq(const QuantumState& a, const QuantumState& b) {
    require_same_space(a.space(), b.space(), "overlap_sq");
    return std::norm(a.vector().dot(b.vector()));
}

Matrix reduce_to_site(const Operator& op, int site) {
    const TensorSpace& sp = op.space();
    const int d = sp.dim(site);
    const int n = sp.total_dim();
    Matrix local = Matrix::Zero(d, d);
    // Sum over all basis pairs that agree outside `site`.
    for (int i = 0; i < n; ++i) {
        auto occ = sp.occupations(i);
        const int a = occ[site];
        for (int b = 0; b < d; ++b) {
            occ[site] = b;
            local(a, b) += op.matrix()(i, sp.flat_index(occ));
        }
    }
    return local / static_cast<double>(n / d);
}

bool acts_only_on(const Operator& op, int site, double tol) {
    const Operator lifted = embed(reduce_to_site(op, site), site, op.space());
    return (lifted.matrix() - op.matrix()).cwiseAbs().maxCoeff() <= tol;
}

}  // namespace aqec
