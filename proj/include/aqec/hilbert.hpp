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

// Composite Hilbert spaces over small dense complex matrices.
//
// Basis ordering: subsystems are flattened left to right, the first listed
// subsystem being the slowest-varying index. For dims [3, 2] the basis is
// |0 0>, |0 1>, |1 0>, |1 1>, |2 0>, |2 1>.
//
// Units used throughout the library: angular frequencies in rad/ns, times in
// ns, rates in 1/ns. Spin convention: sigma_z |0> = +|0>.

#pragma once

#include <Eigen/Dense>
#include <complex>
#include <span>
#include <variant>
#include <vector>

namespace aqec {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

inline constexpr Complex kI{0.0, 1.0};

class TensorSpace {
   public:
    TensorSpace() = default;
    explicit TensorSpace(std::vector<int> dims);

    const std::vector<int>& dims() const { return dims_; }
    int num_sites() const { return static_cast<int>(dims_.size()); }
    int dim(int site) const;
    int total_dim() const { return total_; }

    int flat_index(std::span<const int> occupations) const;
    std::vector<int> occupations(int flat) const;

    bool operator==(const TensorSpace& other) const { return dims_ == other.dims_; }

   private:
    std::vector<int> dims_;
    int total_ = 0;
};

class Operator {
   public:
    Operator() = default;
    Operator(TensorSpace space, Matrix matrix);

    static Operator zero(const TensorSpace& space);
    static Operator identity(const TensorSpace& space);

    const TensorSpace& space() const { return space_; }
    const Matrix& matrix() const { return matrix_; }
    int dim() const { return static_cast<int>(matrix_.rows()); }

    Operator adjoint() const;
    bool is_hermitian(double tol = 1e-12) const;

    Operator& operator+=(const Operator& rhs);
    Operator& operator-=(const Operator& rhs);
    Operator& operator*=(Complex s);

    friend Operator operator+(Operator lhs, const Operator& rhs) { return lhs += rhs; }
    friend Operator operator-(Operator lhs, const Operator& rhs) { return lhs -= rhs; }
    friend Operator operator*(Operator lhs, Complex s) { return lhs *= s; }
    friend Operator operator*(Complex s, Operator rhs) { return rhs *= s; }
    friend Operator operator*(const Operator& lhs, const Operator& rhs);

   private:
    TensorSpace space_;
    Matrix matrix_;
};

/// Pure vector or density matrix on a TensorSpace.
class QuantumState {
   public:
    QuantumState() = default;

    /// Throws ValidationError unless |psi|^2 = 1 within 1e-10.
    static QuantumState pure(TensorSpace space, Vector psi);
    /// Rescales psi to unit norm; psi must be nonzero.
    static QuantumState normalized(TensorSpace space, Vector psi);
    /// Throws ValidationError unless trace 1 (1e-10), Hermitian (1e-12) and
    /// eigenvalues >= -1e-9.
    static QuantumState density(TensorSpace space, Matrix rho);
    /// Same as density() without the positivity and Hermiticity checks; used for
    /// integrator output that has already been checked.
    static QuantumState density_unchecked(TensorSpace space, Matrix rho);
    /// For integrator output whose drift is policed by the caller.
    static QuantumState pure_unchecked(TensorSpace space, Vector psi);

    const TensorSpace& space() const { return space_; }
    bool is_pure() const { return std::holds_alternative<Vector>(repr_); }
    const Vector& vector() const;
    Matrix density_matrix() const;
    QuantumState to_density() const;

   private:
    QuantumState(TensorSpace space, std::variant<Vector, Matrix> repr)
        : space_(std::move(space)), repr_(std::move(repr)) {}

    TensorSpace space_;
    std::variant<Vector, Matrix> repr_;
};

// Local operators. All are plain matrices; use embed() to lift them.
Matrix ladder(int dim);
Matrix number_op(int dim);
Matrix projector(int dim, int level);
Matrix identity_op(int dim);
Matrix pauli_x();
Matrix pauli_y();
Matrix pauli_z();
Matrix sigma_minus();

/// I (x) ... (x) local_op (x) ... (x) I with local_op at `site`.
Operator embed(const Matrix& local_op, int site, const TensorSpace& space);

QuantumState basis_state(const TensorSpace& space, std::span<const int> occupations);
QuantumState basis_state(const TensorSpace& space, std::initializer_list<int> occupations);

/// Product of per-site pure vectors, in site order.
QuantumState product_state(const TensorSpace& space, const std::vector<Vector>& factors);

/// <psi|O|psi> or Tr(O rho). Throws ValidationError on space mismatch, on a
/// non-Hermitian operator (1e-9), or on an imaginary part above 1e-9.
double expectation(const Operator& op, const QuantumState& state);

/// <psi|rho|psi> for a pure target.
double population(const QuantumState& state, const QuantumState& target);

/// |<a|b>|^2 for two pure states.
double overlap_sq(const QuantumState& a, const QuantumState& b);

/// Normalized partial trace of `op` onto `site`; equals the local factor when
/// `op` acts as identity everywhere else.
Matrix reduce_to_site(const Operator& op, int site);

/// True when `op` equals embed(reduce_to_site(op, site), site) within tol.
bool acts_only_on(const Operator& op, int site, double tol = 1e-12);

}  // namespace aqec
