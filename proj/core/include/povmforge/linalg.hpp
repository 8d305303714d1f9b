// Copyright 2026 The povmforge Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace povmforge {

using Complex = std::complex<double>;

/// Dense row-major complex matrix.
class ComplexMatrix {
   public:
    ComplexMatrix() = default;
    ComplexMatrix(size_t rows, size_t cols);

    static ComplexMatrix identity(size_t n);

    size_t rows() const {
        return rows_;
    }
    size_t cols() const {
        return cols_;
    }

    Complex &operator()(size_t i, size_t j) {
        return data_[i * cols_ + j];
    }
    const Complex &operator()(size_t i, size_t j) const {
        return data_[i * cols_ + j];
    }
    std::span<const Complex> data() const {
        return data_;
    }

    ComplexMatrix adjoint() const;
    ComplexMatrix operator*(const ComplexMatrix &other) const;
    ComplexMatrix operator+(const ComplexMatrix &other) const;
    ComplexMatrix operator-(const ComplexMatrix &other) const;
    ComplexMatrix operator*(double scale) const;

    /// Largest entry modulus.
    double max_abs() const;

   private:
    size_t rows_ = 0;
    size_t cols_ = 0;
    std::vector<Complex> data_;
};

/// A normalized vector in C^d.
class UnitVector {
   public:
    /// Throws InvalidArgument unless sum |v_i|^2 = 1 within 1e-12 * d.
    explicit UnitVector(std::vector<Complex> entries);

    /// The standard basis vector e_i (0-based).
    static UnitVector basis(size_t dim, size_t i);

    size_t dim() const {
        return entries_.size();
    }
    std::span<const Complex> entries() const {
        return entries_;
    }
    const Complex &operator[](size_t i) const {
        return entries_[i];
    }

   private:
    std::vector<Complex> entries_;
};

/// <a|b> = sum_i conj(a_i) b_i.
Complex inner_product(std::span<const Complex> a, std::span<const Complex> b);
Complex inner_product(const UnitVector &a, const UnitVector &b);

/// A d x d Hermitian matrix; construction symmetrizes the input as (A + A^H) / 2.
class HermitianOperator {
   public:
    HermitianOperator() = default;
    explicit HermitianOperator(ComplexMatrix matrix);

    static HermitianOperator identity(size_t dim);
    static HermitianOperator zero(size_t dim);

    size_t dim() const {
        return matrix_.rows();
    }
    const ComplexMatrix &matrix() const {
        return matrix_;
    }
    const Complex &operator()(size_t i, size_t j) const {
        return matrix_(i, j);
    }

    /// Sets entry (i, j) and its mirror (j, i) to keep the operator Hermitian.
    void set(size_t i, size_t j, Complex value);

    double trace() const;

    HermitianOperator operator+(const HermitianOperator &other) const;
    HermitianOperator operator-(const HermitianOperator &other) const;
    HermitianOperator operator*(double scale) const;

   private:
    ComplexMatrix matrix_;
};

/// weight |v><v|; throws InvalidArgument for weight <= 0.
HermitianOperator outer_product(const UnitVector &v, double weight);

/// Re Tr(A B), which is the full trace for Hermitian A and B.
double trace_product(const HermitianOperator &a, const HermitianOperator &b);

/// B A B for Hermitian B.
HermitianOperator sandwich(const HermitianOperator &outer, const HermitianOperator &inner);

HermitianOperator sum(std::span<const HermitianOperator> ops);

/// Max-entry distance between two operators of equal dimension.
double max_abs_difference(const HermitianOperator &a, const HermitianOperator &b);

struct EigenDecomposition {
    /// Ascending.
    std::vector<double> values;
    /// Column j is the eigenvector for values[j].
    ComplexMatrix vectors;
    int sweeps = 0;
};

/// Cyclic Jacobi rotations for complex Hermitian matrices. Throws
/// ConvergenceFailure if the off-diagonal mass does not vanish within
/// max_sweeps sweeps.
EigenDecomposition hermitian_eig(const HermitianOperator &a, int max_sweeps = 64);

/// Eigenvalues only, ascending, of a real symmetric n x n matrix (row-major)
/// via Householder tridiagonalization and implicit QL.
std::vector<double> symmetric_eigenvalues(std::vector<double> a, size_t n);

/// U diag(lambda^-1/2) U^H. Throws NotPositiveDefinite when the smallest
/// eigenvalue is at or below 1e-10.
HermitianOperator inverse_sqrt(const HermitianOperator &a);

/// Closed-form inverse square root of the q x q frame operator of the
/// dimension-q construction: 1 at (0, 0); on each mirrored pair (i, q - i)
/// the 2 x 2 block [[a, b], [b, a]] with
///   a = ((1 - 1/q)^-1/2 + (1 + 1/q)^-1/2) / 2,
///   b = ((1 - 1/q)^-1/2 - (1 + 1/q)^-1/2) / 2.
HermitianOperator structured_inverse_sqrt_q(uint64_t q);

/// Closed-form inverse square root of c I - V / (q+1)^2 in dimension q + 1
/// (V the all-ones matrix, c = ((q+1)^2 + 1) / (q+1)^2):
/// c^-1/2 I + (lambda^-1/2 - c^-1/2) / (q + 1) V with lambda = c - 1/(q+1).
HermitianOperator structured_inverse_sqrt_q1(uint64_t q);

struct GramRank {
    size_t rank = 0;
    /// Smallest Gram eigenvalue above the threshold.
    double smallest_retained = 0.0;
    double largest = 0.0;
    double threshold = 0.0;
    /// All Gram eigenvalues, ascending.
    std::vector<double> eigenvalues;
};

/// Numerical rank of the real Gram matrix G_ij = Tr(A_i A_j): the number of
/// eigenvalues above rel_threshold * (largest eigenvalue).
GramRank gram_rank(std::span<const HermitianOperator> ops, double rel_threshold = 1e-8, unsigned workers = 0);

}  // namespace povmforge
