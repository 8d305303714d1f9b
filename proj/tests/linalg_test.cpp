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
#include <random>

#include "gtest/gtest.h"
#include "oracles.hpp"
#include "povmforge/error.hpp"

using namespace povmforge;

namespace {

HermitianOperator random_hermitian(size_t d, uint32_t seed) {
    std::mt19937 rng(seed);
    std::normal_distribution<double> n(0.0, 1.0);
    ComplexMatrix m(d, d);
    for (size_t i = 0; i < d; ++i) {
        for (size_t j = 0; j < d; ++j) {
            m(i, j) = {n(rng), n(rng)};
        }
    }
    return HermitianOperator(m);
}

double max_entry(const ComplexMatrix &m) {
    return m.max_abs();
}

// E for the dimension-(q+1) construction: c on the diagonal, -1/(q+1)^2 off it.
HermitianOperator frame_q1(uint64_t q) {
    const double d = static_cast<double>(q + 1);
    ComplexMatrix m(q + 1, q + 1);
    for (size_t i = 0; i <= q; ++i) {
        for (size_t j = 0; j <= q; ++j) {
            m(i, j) = i == j ? 1.0 : -1.0 / (d * d);
        }
    }
    return HermitianOperator(m);
}

// E for the dimension-q construction: identity plus -1/q on (i, q - i), i >= 1.
HermitianOperator frame_q(uint64_t q) {
    ComplexMatrix m = ComplexMatrix::identity(q);
    for (size_t i = 1; i < q; ++i) {
        m(i, q - i) = -1.0 / static_cast<double>(q);
    }
    return HermitianOperator(m);
}

}  // namespace

TEST(linalg, outer_product_examples) {
    const auto e1 = UnitVector::basis(3, 0);
    const auto op = outer_product(e1, 1.0 / 3.0);
    EXPECT_NEAR(op(0, 0).real(), 1.0 / 3.0, 1e-15);
    EXPECT_EQ(max_abs_difference(op, HermitianOperator::identity(3) * 0.0 + op), 0.0);
    for (size_t i = 0; i < 3; ++i) {
        for (size_t j = 0; j < 3; ++j) {
            if (i != 0 || j != 0) {
                EXPECT_EQ(op(i, j), Complex(0.0));
            }
        }
    }
}

TEST(linalg, outer_product_is_scaled_idempotent) {
    const double s = 1.0 / std::sqrt(2.0);
    const UnitVector v({Complex(s, 0.0), Complex(0.0, s)});
    const double w = 0.37;
    const auto a = outer_product(v, w);
    EXPECT_NEAR(a.trace(), w, 1e-15);
    const ComplexMatrix sq = a.matrix() * a.matrix();
    EXPECT_LT(max_entry(sq - a.matrix() * w), 1e-15);
    EXPECT_THROW(outer_product(v, 0.0), PovmError);
}

TEST(linalg, unit_vector_normalisation_is_enforced) {
    EXPECT_THROW(UnitVector({Complex(1.0), Complex(1.0)}), PovmError);
    EXPECT_THROW(UnitVector::basis(3, 3), PovmError);
    EXPECT_NO_THROW(UnitVector({Complex(0.6), Complex(0.0, 0.8)}));
}

TEST(linalg, hermitian_operator_symmetrises) {
    ComplexMatrix m(2, 2);
    m(0, 1) = {1.0, 2.0};
    m(1, 0) = {3.0, 0.0};
    const HermitianOperator h(m);
    EXPECT_EQ(h(0, 1), std::conj(h(1, 0)));
    EXPECT_EQ(h(0, 1), Complex(2.0, 1.0));
    HermitianOperator g = HermitianOperator::zero(2);
    g.set(0, 1, {0.0, 1.0});
    EXPECT_EQ(g(1, 0), Complex(0.0, -1.0));
}

TEST(linalg, eig_examples) {
    const auto id = hermitian_eig(HermitianOperator::identity(4));
    for (double v : id.values) {
        EXPECT_NEAR(v, 1.0, 1e-14);
    }

    for (uint64_t q : {3u, 5u, 7u}) {
        ComplexMatrix m(2, 2);
        m(0, 0) = m(1, 1) = 1.0;
        m(0, 1) = m(1, 0) = -1.0 / static_cast<double>(q);
        const auto e = hermitian_eig(HermitianOperator(m));
        EXPECT_NEAR(e.values[0], 1.0 - 1.0 / static_cast<double>(q), 1e-14);
        EXPECT_NEAR(e.values[1], 1.0 + 1.0 / static_cast<double>(q), 1e-14);
    }

    const size_t n = 5;
    ComplexMatrix ones(n, n);
    for (size_t i = 0; i < n; ++i) {
        for (size_t j = 0; j < n; ++j) {
            ones(i, j) = 1.0;
        }
    }
    const auto e = hermitian_eig(HermitianOperator(ones));
    for (size_t i = 0; i + 1 < n; ++i) {
        EXPECT_NEAR(e.values[i], 0.0, 1e-13);
    }
    EXPECT_NEAR(e.values.back(), static_cast<double>(n), 1e-13);
}

TEST(linalg, eig_reconstructs_random_matrices) {
    for (size_t d : {2u, 5u, 9u, 16u}) {
        const auto a = random_hermitian(d, static_cast<uint32_t>(d));
        const auto e = hermitian_eig(a);
        ComplexMatrix lambda(d, d);
        for (size_t i = 0; i < d; ++i) {
            lambda(i, i) = e.values[i];
        }
        const ComplexMatrix rebuilt = e.vectors * lambda * e.vectors.adjoint();
        const double norm = a.matrix().max_abs();
        EXPECT_LT(max_entry(rebuilt - a.matrix()), 1e-9 * norm) << "d = " << d;
        EXPECT_LT(max_entry(e.vectors.adjoint() * e.vectors - ComplexMatrix::identity(d)), 1e-12);
        EXPECT_TRUE(std::is_sorted(e.values.begin(), e.values.end()));
    }
}

TEST(linalg, jacobi_and_ql_agree_on_real_symmetric_matrices) {
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (size_t n : {1u, 3u, 8u, 20u}) {
        std::vector<double> a(n * n);
        for (size_t i = 0; i < n; ++i) {
            for (size_t j = i; j < n; ++j) {
                a[i * n + j] = a[j * n + i] = u(rng);
            }
        }
        ComplexMatrix m(n, n);
        for (size_t i = 0; i < n * n; ++i) {
            m(i / n, i % n) = a[i];
        }
        const auto jacobi = hermitian_eig(HermitianOperator(m)).values;
        const auto ql = symmetric_eigenvalues(a, n);
        ASSERT_EQ(jacobi.size(), ql.size());
        for (size_t i = 0; i < n; ++i) {
            EXPECT_NEAR(jacobi[i], ql[i], 1e-12);
        }
    }
    EXPECT_THROW(symmetric_eigenvalues({1.0, 2.0}, 2), PovmError);
}

TEST(linalg, inverse_sqrt_examples) {
    const auto id = inverse_sqrt(HermitianOperator::identity(3));
    EXPECT_LT(max_abs_difference(id, HermitianOperator::identity(3)), 1e-14);

    ComplexMatrix four(1, 1);
    four(0, 0) = 4.0;
    EXPECT_NEAR(inverse_sqrt(HermitianOperator(four))(0, 0).real(), 0.5, 1e-15);

    ComplexMatrix singular(2, 2);
    singular(0, 0) = 1.0;
    EXPECT_THROW(inverse_sqrt(HermitianOperator(singular)), PovmError);
}

TEST(linalg, inverse_sqrt_is_the_positive_root_of_the_inverse) {
    for (uint64_t q : {2u, 3u, 4u, 5u, 8u}) {
        const auto e = frame_q1(q);
        const auto b = inverse_sqrt(e);
        const ComplexMatrix bbe = b.matrix() * b.matrix() * e.matrix();
        EXPECT_LT(max_entry(bbe - ComplexMatrix::identity(q + 1)), 1e-9);
        EXPECT_GT(hermitian_eig(b).values.front(), 0.0);
    }
}

TEST(linalg, structured_q_closed_form_values) {
    const auto b = structured_inverse_sqrt_q(3);
    const double a = (std::pow(2.0 / 3.0, -0.5) + std::pow(4.0 / 3.0, -0.5)) / 2.0;
    const double c = (std::pow(2.0 / 3.0, -0.5) - std::pow(4.0 / 3.0, -0.5)) / 2.0;
    EXPECT_NEAR(b(0, 0).real(), 1.0, 1e-15);
    EXPECT_NEAR(b(1, 1).real(), a, 1e-15);
    EXPECT_NEAR(b(2, 2).real(), a, 1e-15);
    EXPECT_NEAR(b(1, 2).real(), c, 1e-15);
    EXPECT_EQ(b(0, 1), Complex(0.0));
    EXPECT_THROW(structured_inverse_sqrt_q(4), PovmError);
    EXPECT_THROW(structured_inverse_sqrt_q(1), PovmError);
}

TEST(linalg, structured_q_matches_generic_path) {
    for (uint64_t q : {3u, 5u, 7u, 9u, 13u, 25u, 27u}) {
        const auto e = frame_q(q);
        const auto closed = structured_inverse_sqrt_q(q);
        EXPECT_LT(max_abs_difference(closed, inverse_sqrt(e)), 1e-9) << "q = " << q;
        const ComplexMatrix bbe = closed.matrix() * closed.matrix() * e.matrix();
        EXPECT_LT(max_entry(bbe - ComplexMatrix::identity(q)), 1e-9);
    }
}

TEST(linalg, frame_q_determinant_of_mirrored_block) {
    // F_{q-1} is E with its first row and column removed.
    for (uint64_t q : {3u, 5u, 7u, 9u}) {
        const auto e = frame_q(q);
        std::vector<std::vector<double>> f(q - 1, std::vector<double>(q - 1));
        for (size_t i = 1; i < q; ++i) {
            for (size_t j = 1; j < q; ++j) {
                f[i - 1][j - 1] = e(i, j).real();
            }
        }
        const double qd = static_cast<double>(q);
        const double expected = std::pow(1.0 - 1.0 / (qd * qd), static_cast<double>(q - 1) / 2.0);
        EXPECT_NEAR(oracle::determinant(f), expected, 1e-12) << "q = " << q;
        // Every leading principal minor is positive.
        for (size_t k = 1; k <= q - 1; ++k) {
            std::vector<std::vector<double>> lead(k, std::vector<double>(k));
            for (size_t i = 0; i < k; ++i) {
                for (size_t j = 0; j < k; ++j) {
                    lead[i][j] = f[i][j];
                }
            }
            EXPECT_GT(oracle::determinant(lead), 0.0);
        }
    }
    const auto e3 = frame_q(3);
    EXPECT_NEAR(oracle::determinant({{e3(1, 1).real(), e3(1, 2).real()}, {e3(2, 1).real(), e3(2, 2).real()}}),
                8.0 / 9.0, 1e-15);
}

TEST(linalg, structured_q1_closed_form_values) {
    // q = 2: c = 10/9, the all-ones direction has eigenvalue 7/9.
    const auto e = frame_q1(2);
    const auto spectrum = hermitian_eig(e).values;
    EXPECT_NEAR(spectrum[0], 7.0 / 9.0, 1e-14);
    EXPECT_NEAR(spectrum[1], 10.0 / 9.0, 1e-14);
    EXPECT_NEAR(spectrum[2], 10.0 / 9.0, 1e-14);

    // B^2 must equal E^-1 = ((q+1)^2 / (q^2+2q+2)) I + ((q+1)^2 / ((q^2+2q+2)(q^2+q+1))) V.
    for (uint64_t q : {2u, 3u, 4u, 5u}) {
        const double qd = static_cast<double>(q);
        const double d2 = (qd + 1.0) * (qd + 1.0);
        const double den = qd * qd + 2.0 * qd + 2.0;
        const double diag = d2 / den;
        const double off = d2 / (den * (qd * qd + qd + 1.0));
        const auto b = structured_inverse_sqrt_q1(q);
        const ComplexMatrix b2 = b.matrix() * b.matrix();
        for (size_t i = 0; i <= q; ++i) {
            for (size_t j = 0; j <= q; ++j) {
                const double expected = (i == j ? diag : 0.0) + off;
                EXPECT_NEAR(b2(i, j).real(), expected, 1e-12) << "q = " << q;
            }
        }
        EXPECT_LT(max_abs_difference(b, inverse_sqrt(frame_q1(q))), 1e-9);
        const ComplexMatrix bbe = b2 * frame_q1(q).matrix();
        EXPECT_LT(max_entry(bbe - ComplexMatrix::identity(q + 1)), 1e-9);
    }
    EXPECT_THROW(structured_inverse_sqrt_q1(1), PovmError);
}

TEST(linalg, frame_q1_spectrum_is_a_shifted_all_ones_spectrum) {
    for (uint64_t q : {2u, 3u, 4u, 5u, 7u}) {
        const double d = static_cast<double>(q + 1);
        const double c = (d * d + 1.0) / (d * d);
        const auto values = hermitian_eig(frame_q1(q)).values;
        EXPECT_NEAR(values.front(), c - 1.0 / d, 1e-13);
        for (size_t i = 1; i < values.size(); ++i) {
            EXPECT_NEAR(values[i], c, 1e-13);
        }
    }
}

TEST(linalg, gram_rank_examples) {
    std::vector<HermitianOperator> diag;
    for (size_t i = 0; i < 3; ++i) {
        diag.push_back(outer_product(UnitVector::basis(3, i), 1.0 / 3.0));
    }
    EXPECT_EQ(gram_rank(diag).rank, 3u);

    diag.push_back(diag.front());
    EXPECT_EQ(gram_rank(diag).rank, 3u);
    EXPECT_LT(gram_rank(diag).rank, diag.size());
}

TEST(linalg, gram_rank_matches_elimination_and_ignores_order) {
    std::vector<HermitianOperator> ops;
    for (uint32_t s = 0; s < 12; ++s) {
        ops.push_back(random_hermitian(3, 100 + s));
    }
    const auto base = gram_rank(ops);
    EXPECT_EQ(base.rank, 9u);

    std::vector<std::vector<double>> flat;
    for (const auto &op : ops) {
        std::vector<double> row;
        for (const auto &z : op.matrix().data()) {
            row.push_back(z.real());
            row.push_back(z.imag());
        }
        flat.push_back(row);
    }
    EXPECT_EQ(oracle::matrix_rank(flat, 1e-10), base.rank);

    std::mt19937 rng(3);
    for (int trial = 0; trial < 5; ++trial) {
        std::shuffle(ops.begin(), ops.end(), rng);
        EXPECT_EQ(gram_rank(ops).rank, base.rank);
        EXPECT_EQ(gram_rank(ops, 1e-8, 3).rank, base.rank);
    }
}

TEST(linalg, trace_product_and_sandwich) {
    const auto a = random_hermitian(4, 1);
    const auto b = random_hermitian(4, 2);
    const ComplexMatrix ab = a.matrix() * b.matrix();
    Complex tr = 0.0;
    for (size_t i = 0; i < 4; ++i) {
        tr += ab(i, i);
    }
    EXPECT_NEAR(trace_product(a, b), tr.real(), 1e-12);
    EXPECT_NEAR(tr.imag(), 0.0, 1e-12);

    const auto s = sandwich(b, a);
    EXPECT_LT(max_entry(s.matrix() - b.matrix() * a.matrix() * b.matrix()), 1e-12);
    const std::vector<HermitianOperator> ops = {a, b};
    EXPECT_LT(max_abs_difference(sum(ops), a + b), 1e-15);
}
