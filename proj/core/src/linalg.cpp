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

#include "povmforge/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "povmforge/error.hpp"
#include "povmforge/parallel.hpp"

namespace povmforge {

namespace {

void require_same_dim(size_t a, size_t b, const char *what) {
    if (a != b) {
        throw PovmError(ErrorCode::kDimensionMismatch,
                        std::string(what) + ": dimensions " + std::to_string(a) + " and " + std::to_string(b));
    }
}

}  // namespace

ComplexMatrix::ComplexMatrix(size_t rows, size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

ComplexMatrix ComplexMatrix::identity(size_t n) {
    ComplexMatrix m(n, n);
    for (size_t i = 0; i < n; ++i) {
        m(i, i) = 1.0;
    }
    return m;
}

ComplexMatrix ComplexMatrix::adjoint() const {
    ComplexMatrix out(cols_, rows_);
    for (size_t i = 0; i < rows_; ++i) {
        for (size_t j = 0; j < cols_; ++j) {
            out(j, i) = std::conj((*this)(i, j));
        }
    }
    return out;
}

ComplexMatrix ComplexMatrix::operator*(const ComplexMatrix &other) const {
    require_same_dim(cols_, other.rows_, "matrix product");
    ComplexMatrix out(rows_, other.cols_);
    for (size_t i = 0; i < rows_; ++i) {
        for (size_t k = 0; k < cols_; ++k) {
            const Complex a = (*this)(i, k);
            if (a == Complex{}) {
                continue;
            }
            for (size_t j = 0; j < other.cols_; ++j) {
                out(i, j) += a * other(k, j);
            }
        }
    }
    return out;
}

ComplexMatrix ComplexMatrix::operator+(const ComplexMatrix &other) const {
    require_same_dim(rows_, other.rows_, "matrix sum");
    require_same_dim(cols_, other.cols_, "matrix sum");
    ComplexMatrix out = *this;
    for (size_t i = 0; i < data_.size(); ++i) {
        out.data_[i] += other.data_[i];
    }
    return out;
}

ComplexMatrix ComplexMatrix::operator-(const ComplexMatrix &other) const {
    return *this + other * -1.0;
}

ComplexMatrix ComplexMatrix::operator*(double scale) const {
    ComplexMatrix out = *this;
    for (auto &x : out.data_) {
        x *= scale;
    }
    return out;
}

double ComplexMatrix::max_abs() const {
    double m = 0.0;
    for (const auto &x : data_) {
        m = std::max(m, std::abs(x));
    }
    return m;
}

UnitVector::UnitVector(std::vector<Complex> entries) : entries_(std::move(entries)) {
    if (entries_.empty()) {
        throw PovmError(ErrorCode::kInvalidArgument, "unit vector must have positive dimension");
    }
    double norm2 = 0.0;
    for (const auto &x : entries_) {
        norm2 += std::norm(x);
    }
    if (std::abs(norm2 - 1.0) > 1e-12 * static_cast<double>(entries_.size())) {
        throw PovmError(ErrorCode::kInvalidArgument, "vector is not normalized (squared norm " + std::to_string(norm2) + ")");
    }
}

UnitVector UnitVector::basis(size_t dim, size_t i) {
    if (i >= dim) {
        throw PovmError(ErrorCode::kInvalidArgument, "basis index out of range");
    }
    std::vector<Complex> e(dim);
    e[i] = 1.0;
    return UnitVector(std::move(e));
}

Complex inner_product(std::span<const Complex> a, std::span<const Complex> b) {
    require_same_dim(a.size(), b.size(), "inner product");
    Complex acc{};
    for (size_t i = 0; i < a.size(); ++i) {
        acc += std::conj(a[i]) * b[i];
    }
    return acc;
}

Complex inner_product(const UnitVector &a, const UnitVector &b) {
    return inner_product(a.entries(), b.entries());
}

HermitianOperator::HermitianOperator(ComplexMatrix matrix) {
    require_same_dim(matrix.rows(), matrix.cols(), "Hermitian operator");
    const size_t n = matrix.rows();
    for (size_t i = 0; i < n; ++i) {
        matrix(i, i) = matrix(i, i).real();
        for (size_t j = i + 1; j < n; ++j) {
            const Complex avg = 0.5 * (matrix(i, j) + std::conj(matrix(j, i)));
            matrix(i, j) = avg;
            matrix(j, i) = std::conj(avg);
        }
    }
    matrix_ = std::move(matrix);
}

HermitianOperator HermitianOperator::identity(size_t dim) {
    return HermitianOperator(ComplexMatrix::identity(dim));
}

HermitianOperator HermitianOperator::zero(size_t dim) {
    return HermitianOperator(ComplexMatrix(dim, dim));
}

void HermitianOperator::set(size_t i, size_t j, Complex value) {
    if (i == j) {
        matrix_(i, i) = value.real();
        return;
    }
    matrix_(i, j) = value;
    matrix_(j, i) = std::conj(value);
}

double HermitianOperator::trace() const {
    double t = 0.0;
    for (size_t i = 0; i < dim(); ++i) {
        t += matrix_(i, i).real();
    }
    return t;
}

HermitianOperator HermitianOperator::operator+(const HermitianOperator &other) const {
    return HermitianOperator(matrix_ + other.matrix_);
}

HermitianOperator HermitianOperator::operator-(const HermitianOperator &other) const {
    return HermitianOperator(matrix_ - other.matrix_);
}

HermitianOperator HermitianOperator::operator*(double scale) const {
    return HermitianOperator(matrix_ * scale);
}

HermitianOperator outer_product(const UnitVector &v, double weight) {
    if (!(weight > 0.0)) {
        throw PovmError(ErrorCode::kInvalidArgument, "outer product weight must be positive");
    }
    const size_t d = v.dim();
    ComplexMatrix m(d, d);
    for (size_t i = 0; i < d; ++i) {
        for (size_t j = 0; j < d; ++j) {
            m(i, j) = weight * v[i] * std::conj(v[j]);
        }
    }
    return HermitianOperator(std::move(m));
}

double trace_product(const HermitianOperator &a, const HermitianOperator &b) {
    require_same_dim(a.dim(), b.dim(), "trace product");
    // Tr(AB) = sum_ij A_ij B_ji = sum_ij A_ij conj(B_ij) for Hermitian B.
    double acc = 0.0;
    const auto da = a.matrix().data();
    const auto db = b.matrix().data();
    for (size_t i = 0; i < da.size(); ++i) {
        acc += da[i].real() * db[i].real() + da[i].imag() * db[i].imag();
    }
    return acc;
}

HermitianOperator sandwich(const HermitianOperator &outer, const HermitianOperator &inner) {
    require_same_dim(outer.dim(), inner.dim(), "sandwich");
    return HermitianOperator(outer.matrix() * inner.matrix() * outer.matrix());
}

HermitianOperator sum(std::span<const HermitianOperator> ops) {
    if (ops.empty()) {
        throw PovmError(ErrorCode::kInvalidArgument, "sum of an empty operator list");
    }
    ComplexMatrix acc(ops[0].dim(), ops[0].dim());
    for (const auto &op : ops) {
        acc = acc + op.matrix();
    }
    return HermitianOperator(std::move(acc));
}

double max_abs_difference(const HermitianOperator &a, const HermitianOperator &b) {
    require_same_dim(a.dim(), b.dim(), "operator difference");
    return (a.matrix() - b.matrix()).max_abs();
}

EigenDecomposition hermitian_eig(const HermitianOperator &input, int max_sweeps) {
    const size_t n = input.dim();
    ComplexMatrix a = input.matrix();
    ComplexMatrix v = ComplexMatrix::identity(n);

    double frob2 = 0.0;
    for (const auto &x : a.data()) {
        frob2 += std::norm(x);
    }
    const double tiny = std::numeric_limits<double>::min();
    auto off_mass = [&] {
        double s = 0.0;
        for (size_t i = 0; i < n; ++i) {
            for (size_t j = i + 1; j < n; ++j) {
                s += std::norm(a(i, j));
            }
        }
        return s;
    };

    int sweep = 0;
    while (true) {
        const double off = off_mass();
        if (off <= 1e-30 * frob2 || off <= tiny) {
            break;
        }
        if (sweep == max_sweeps) {
            throw PovmError(ErrorCode::kConvergenceFailure,
                            "Jacobi iteration did not converge in " + std::to_string(max_sweeps) + " sweeps");
        }
        ++sweep;
        for (size_t p = 0; p + 1 < n; ++p) {
            for (size_t q = p + 1; q < n; ++q) {
                const Complex apq = a(p, q);
                const double mag = std::abs(apq);
                if (mag <= tiny) {
                    continue;
                }
                // diag(1, e^-i phi) makes the 2x2 block real; then a real rotation.
                const Complex phase = std::conj(apq) / mag;  // e^{-i phi}
                const double app = a(p, p).real();
                const double aqq = a(q, q).real();
                const double theta = (aqq - app) / (2.0 * mag);
                const double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                const Complex upp = c;
                const Complex upq = s;
                const Complex uqp = -s * phase;
                const Complex uqq = c * phase;
                for (size_t k = 0; k < n; ++k) {
                    const Complex akp = a(k, p);
                    const Complex akq = a(k, q);
                    a(k, p) = akp * upp + akq * uqp;
                    a(k, q) = akp * upq + akq * uqq;
                }
                for (size_t k = 0; k < n; ++k) {
                    const Complex apk = a(p, k);
                    const Complex aqk = a(q, k);
                    a(p, k) = std::conj(upp) * apk + std::conj(uqp) * aqk;
                    a(q, k) = std::conj(upq) * apk + std::conj(uqq) * aqk;
                }
                a(p, q) = 0.0;
                a(q, p) = 0.0;
                a(p, p) = a(p, p).real();
                a(q, q) = a(q, q).real();
                for (size_t k = 0; k < n; ++k) {
                    const Complex vkp = v(k, p);
                    const Complex vkq = v(k, q);
                    v(k, p) = vkp * upp + vkq * uqp;
                    v(k, q) = vkp * upq + vkq * uqq;
                }
            }
        }
    }

    std::vector<size_t> order(n);
    std::iota(order.begin(), order.end(), size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](size_t x, size_t y) { return a(x, x).real() < a(y, y).real(); });
    EigenDecomposition out;
    out.sweeps = sweep;
    out.values.resize(n);
    out.vectors = ComplexMatrix(n, n);
    for (size_t j = 0; j < n; ++j) {
        out.values[j] = a(order[j], order[j]).real();
        for (size_t k = 0; k < n; ++k) {
            out.vectors(k, j) = v(k, order[j]);
        }
    }
    return out;
}

std::vector<double> symmetric_eigenvalues(std::vector<double> a, size_t n) {
    if (a.size() != n * n) {
        throw PovmError(ErrorCode::kDimensionMismatch, "symmetric matrix storage does not match n * n");
    }
    if (n == 0) {
        return {};
    }
    auto at = [&](size_t i, size_t j) -> double & { return a[i * n + j]; };
    std::vector<double> d(n, 0.0);
    std::vector<double> e(n, 0.0);

    // Householder reduction to tridiagonal form.
    for (size_t i = n - 1; i >= 1; --i) {
        const size_t l = i - 1;
        double h = 0.0;
        if (l > 0) {
            double scale = 0.0;
            for (size_t k = 0; k <= l; ++k) {
                scale += std::abs(at(i, k));
            }
            if (scale == 0.0) {
                e[i] = at(i, l);
            } else {
                for (size_t k = 0; k <= l; ++k) {
                    at(i, k) /= scale;
                    h += at(i, k) * at(i, k);
                }
                double f = at(i, l);
                double g = f >= 0.0 ? -std::sqrt(h) : std::sqrt(h);
                e[i] = scale * g;
                h -= f * g;
                at(i, l) = f - g;
                f = 0.0;
                for (size_t j = 0; j <= l; ++j) {
                    g = 0.0;
                    for (size_t k = 0; k <= j; ++k) {
                        g += at(j, k) * at(i, k);
                    }
                    for (size_t k = j + 1; k <= l; ++k) {
                        g += at(k, j) * at(i, k);
                    }
                    e[j] = g / h;
                    f += e[j] * at(i, j);
                }
                const double hh = f / (h + h);
                for (size_t j = 0; j <= l; ++j) {
                    f = at(i, j);
                    e[j] = g = e[j] - hh * f;
                    for (size_t k = 0; k <= j; ++k) {
                        at(j, k) -= f * e[k] + g * at(i, k);
                    }
                }
            }
        } else {
            e[i] = at(i, l);
        }
        d[i] = h;
    }
    e[0] = 0.0;
    for (size_t i = 0; i < n; ++i) {
        d[i] = at(i, i);
    }

    // Implicit QL on the tridiagonal (d, e).
    for (size_t i = 1; i < n; ++i) {
        e[i - 1] = e[i];
    }
    e[n - 1] = 0.0;
    const double eps = std::numeric_limits<double>::epsilon();
    for (size_t l = 0; l < n; ++l) {
        int iter = 0;
        size_t m;
        do {
            for (m = l; m + 1 < n; ++m) {
                const double dd = std::abs(d[m]) + std::abs(d[m + 1]);
                if (std::abs(e[m]) <= eps * dd) {
                    break;
                }
            }
            if (m != l) {
                if (iter++ == 60) {
                    throw PovmError(ErrorCode::kConvergenceFailure, "tridiagonal QL did not converge");
                }
                double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
                double r = std::hypot(g, 1.0);
                g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
                double s = 1.0;
                double c = 1.0;
                double p = 0.0;
                bool deflated = false;
                for (size_t i = m; i-- > l;) {
                    double f = s * e[i];
                    const double b = c * e[i];
                    e[i + 1] = r = std::hypot(f, g);
                    if (r == 0.0) {
                        d[i + 1] -= p;
                        e[m] = 0.0;
                        deflated = true;
                        break;
                    }
                    s = f / r;
                    c = g / r;
                    g = d[i + 1] - p;
                    r = (d[i] - g) * s + 2.0 * c * b;
                    p = s * r;
                    d[i + 1] = g + p;
                    g = c * r - b;
                }
                if (deflated) {
                    continue;
                }
                d[l] -= p;
                e[l] = g;
                e[m] = 0.0;
            }
        } while (m != l);
    }
    std::sort(d.begin(), d.end());
    return d;
}

HermitianOperator inverse_sqrt(const HermitianOperator &a) {
    const auto eig = hermitian_eig(a);
    if (eig.values.empty() || eig.values.front() <= 1e-10) {
        throw PovmError(ErrorCode::kNotPositiveDefinite,
                        "operator is not positive definite (smallest eigenvalue " +
                            std::to_string(eig.values.empty() ? 0.0 : eig.values.front()) + ")");
    }
    const size_t n = a.dim();
    ComplexMatrix out(n, n);
    for (size_t k = 0; k < n; ++k) {
        const double w = 1.0 / std::sqrt(eig.values[k]);
        for (size_t i = 0; i < n; ++i) {
            const Complex ui = eig.vectors(i, k) * w;
            for (size_t j = 0; j < n; ++j) {
                out(i, j) += ui * std::conj(eig.vectors(j, k));
            }
        }
    }
    return HermitianOperator(std::move(out));
}

HermitianOperator structured_inverse_sqrt_q(uint64_t q) {
    if (q < 3 || q % 2 == 0) {
        throw PovmError(ErrorCode::kInvalidArgument, "structured inverse square root needs odd q >= 3");
    }
    const double inv_q = 1.0 / static_cast<double>(q);
    const double lo = 1.0 / std::sqrt(1.0 - inv_q);
    const double hi = 1.0 / std::sqrt(1.0 + inv_q);
    const double diag = 0.5 * (lo + hi);
    const double off = 0.5 * (lo - hi);
    HermitianOperator out = HermitianOperator::zero(q);
    out.set(0, 0, 1.0);
    for (uint64_t i = 1; i <= (q - 1) / 2; ++i) {
        out.set(i, i, diag);
        out.set(q - i, q - i, diag);
        out.set(i, q - i, off);
    }
    return out;
}

HermitianOperator structured_inverse_sqrt_q1(uint64_t q) {
    if (q < 2) {
        throw PovmError(ErrorCode::kInvalidArgument, "structured inverse square root needs q >= 2");
    }
    const double d = static_cast<double>(q + 1);
    const double c = (d * d + 1.0) / (d * d);
    const double lambda = c - 1.0 / d;
    const double base = 1.0 / std::sqrt(c);
    const double rank_one = (1.0 / std::sqrt(lambda) - base) / d;
    const size_t n = q + 1;
    HermitianOperator out = HermitianOperator::zero(n);
    for (size_t i = 0; i < n; ++i) {
        for (size_t j = i; j < n; ++j) {
            out.set(i, j, (i == j ? base : 0.0) + rank_one);
        }
    }
    return out;
}

GramRank gram_rank(std::span<const HermitianOperator> ops, double rel_threshold, unsigned workers) {
    GramRank out;
    const size_t m = ops.size();
    if (m == 0) {
        return out;
    }
    const size_t d = ops[0].dim();
    for (const auto &op : ops) {
        require_same_dim(op.dim(), d, "Gram matrix");
    }
    // Each operator as a real vector (Re, Im) so Tr(A_i A_j) is a dot product.
    const size_t len = 2 * d * d;
    std::vector<double> flat(m * len);
    for (size_t i = 0; i < m; ++i) {
        const auto data = ops[i].matrix().data();
        for (size_t k = 0; k < data.size(); ++k) {
            flat[i * len + 2 * k] = data[k].real();
            flat[i * len + 2 * k + 1] = data[k].imag();
        }
    }
    std::vector<double> gram(m * m);
    parallel_for(m, workers, [&](size_t begin, size_t end, unsigned) {
        for (size_t i = begin; i < end; ++i) {
            const double *xi = &flat[i * len];
            for (size_t j = 0; j <= i; ++j) {
                const double *xj = &flat[j * len];
                double acc = 0.0;
                for (size_t k = 0; k < len; ++k) {
                    acc += xi[k] * xj[k];
                }
                gram[i * m + j] = acc;
                gram[j * m + i] = acc;
            }
        }
    });
    out.eigenvalues = symmetric_eigenvalues(std::move(gram), m);
    out.largest = out.eigenvalues.back();
    out.threshold = rel_threshold * std::max(out.largest, 0.0);
    for (double lambda : out.eigenvalues) {
        if (lambda > out.threshold) {
            if (out.rank == 0) {
                out.smallest_retained = lambda;
            }
            ++out.rank;
        }
    }
    return out;
}

}  // namespace povmforge
