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

#include "povmforge/verify.hpp"

#include <cmath>

#include "gtest/gtest.h"
#include "povmforge/construction_q.hpp"
#include "povmforge/construction_q1.hpp"
#include "povmforge/error.hpp"

using namespace povmforge;

namespace {

PovmEnsemble square_ensemble(uint32_t p, uint32_t k = 1) {
    const auto field = make_field(p, k);
    const uint64_t c[] = {0, 0, 1};
    return build_ensemble_q(field, PolyFunction::from_indices(field, c));
}

std::vector<UnitVector> square_vectors(uint32_t p, uint32_t k = 1) {
    const auto field = make_field(p, k);
    const uint64_t c[] = {0, 0, 1};
    const auto f = PolyFunction::from_indices(field, c);
    return build_vectors_q(field, f, build_f_permutation(f), field->one());
}

std::vector<UnitVector> basis(size_t d) {
    std::vector<UnitVector> out;
    for (size_t i = 0; i < d; ++i) {
        out.push_back(UnitVector::basis(d, i));
    }
    return out;
}

}  // namespace

TEST(verify, both_constructions_pass_all_axioms) {
    const auto q5 = verify_povm_axioms(square_ensemble(5));
    EXPECT_TRUE(q5.completeness.passed);
    EXPECT_TRUE(q5.symmetry_passed());
    EXPECT_TRUE(q5.informational.passed);
    EXPECT_TRUE(q5.positivity.passed);
    EXPECT_EQ(q5.informational.rank, 25u);
    EXPECT_GT(q5.informational.smallest_retained, 0.0);

    const auto q1 = verify_povm_axioms(build_ensemble_q1(make_tower(3, 1)));
    EXPECT_TRUE(q1.passed());
    EXPECT_EQ(q1.informational.rank, 16u);
}

TEST(verify, zeroing_a_member_breaks_completeness_and_rank) {
    auto ens = square_ensemble(5);
    ens.members[3] = HermitianOperator::zero(ens.dim);
    const auto report = verify_povm_axioms(ens);
    EXPECT_FALSE(report.completeness.passed);
    EXPECT_FALSE(report.informational.passed);
    EXPECT_EQ(report.informational.rank, 24u);
    EXPECT_FALSE(report.passed());
}

TEST(verify, perturbing_one_entry_breaks_completeness) {
    auto ens = square_ensemble(5);
    auto m = ens.members[7];
    m.set(0, 1, m(0, 1) + Complex(1e-3, 0.0));
    ens.members[7] = m;
    const auto report = verify_povm_axioms(ens);
    EXPECT_FALSE(report.completeness.passed);
    EXPECT_NEAR(report.completeness.deviation, 1e-3, 1e-9);
}

TEST(verify, negative_direction_breaks_positivity) {
    auto ens = square_ensemble(3);
    auto m = ens.members.back();
    m.set(0, 0, m(0, 0) - Complex(1e-3, 0.0));
    ens.members.back() = m;
    const auto report = verify_povm_axioms(ens);
    EXPECT_FALSE(report.positivity.passed);
    EXPECT_EQ(report.positivity.worst_member, ens.members.size() - 1);
}

TEST(verify, inflated_member_breaks_symmetry) {
    auto ens = build_ensemble_q1(make_tower(2, 1));
    ens.members[0] = ens.members[0] * 1.5;
    const auto report = verify_povm_axioms(ens);
    EXPECT_FALSE(report.symmetry_passed());
    EXPECT_FALSE(report.ledger.find("1").passed);
}

TEST(verify, equality_case_fails_when_value_drops) {
    auto ens = build_ensemble_q1(make_tower(3, 1));
    const size_t last = ens.members.size() - 1;
    ens.members[last] = ens.members[last] * 0.5;
    const auto report = verify_povm_axioms(ens);
    EXPECT_FALSE(report.ledger.find("3").passed);
}

TEST(verify, tolerances_scale_with_dimension) {
    const auto ens = square_ensemble(7);
    const auto c = check_completeness(ens, 1e-9);
    EXPECT_DOUBLE_EQ(c.tolerance, 7e-9);
    EXPECT_TRUE(c.passed);
}

TEST(verify, frame_span_examples) {
    EXPECT_TRUE(frame_span_check(basis(4)));
    EXPECT_TRUE(frame_span_check(square_vectors(3)));
    const std::vector<UnitVector> copies(3, UnitVector::basis(3, 1));
    EXPECT_FALSE(frame_span_check(copies));
    EXPECT_FALSE(frame_span_check({}));
}

TEST(verify, orthonormal_basis_is_one_angular) {
    const auto profile = frame_angles(basis(5));
    ASSERT_EQ(profile.angles.size(), 1u);
    EXPECT_NEAR(profile.angles[0], 0.0, 1e-15);
    EXPECT_EQ(profile.multiplicities[0], 20u);
}

TEST(verify, dimension_q_vectors_are_biangular) {
    for (const auto &[p, k] : std::vector<std::pair<uint32_t, uint32_t>>{{3, 1}, {5, 1}, {7, 1}, {3, 2}, {13, 1}}) {
        const auto vectors = square_vectors(p, k);
        const auto profile = frame_angles(vectors);
        const double q = std::pow(static_cast<double>(p), k);
        ASSERT_EQ(profile.angles.size(), 2u) << "q = " << q;
        EXPECT_NEAR(profile.angles[0], 0.0, 1e-7);
        EXPECT_NEAR(profile.angles[1], 1.0 / std::sqrt(q), 1e-7);
        size_t total = 0;
        for (auto m : profile.multiplicities) {
            total += m;
        }
        EXPECT_EQ(total, vectors.size() * (vectors.size() - 1));
    }
}

TEST(verify, cluster_angles_uses_neighbour_distance) {
    const auto p = cluster_angles({0.3, 0.0, 0.1, 0.3 + 5e-8, 1e-8}, 1e-7);
    ASSERT_EQ(p.angles.size(), 3u);
    EXPECT_EQ(p.multiplicities, (std::vector<size_t>{2, 1, 2}));
}

TEST(verify, dimension_q1_codebook_angles_are_bounded) {
    const auto vectors = build_vectors_q1(build_s_set(make_tower(3, 1)));
    const auto profile = frame_angles(vectors);
    EXPECT_NEAR(profile.angles.back(), 0.5, 1e-9);
    for (double a : profile.angles) {
        EXPECT_LE(a, 0.5 + 1e-9);
    }
}

TEST(verify, codebook_metrics_q3) {
    const auto m = codebook_metrics(build_vectors_q1(build_s_set(make_tower(3, 1))));
    EXPECT_EQ(m.n, 16u);
    EXPECT_EQ(m.k, 4u);
    EXPECT_NEAR(m.welch, std::sqrt(12.0 / 60.0), 1e-12);
    EXPECT_NEAR(m.i_max, 0.5, 1e-12);
    EXPECT_NEAR(m.ratio, std::sqrt(5.0 / 4.0), 1e-12);
}

TEST(verify, codebook_ratio_decreases_toward_one) {
    double previous = 2.0;
    for (const auto &[p, k] : std::vector<std::pair<uint32_t, uint32_t>>{
             {2, 1}, {3, 1}, {2, 2}, {5, 1}, {7, 1}, {2, 3}, {3, 2}}) {
        const auto m = codebook_metrics(build_vectors_q1(build_s_set(make_tower(p, k))));
        const double q = static_cast<double>(m.k - 1);
        EXPECT_NEAR(m.i_max, 1.0 / std::sqrt(q + 1.0), 1e-9);
        EXPECT_NEAR(m.ratio, std::sqrt((q + 2.0) / (q + 1.0)), 1e-9);
        EXPECT_LT(m.ratio, previous);
        EXPECT_GT(m.ratio, 1.0);
        previous = m.ratio;
    }
}

TEST(verify, codebook_degenerate_cases) {
    const auto m = codebook_metrics(basis(4));
    EXPECT_EQ(m.welch, 0.0);
    EXPECT_EQ(m.i_max, 0.0);
    EXPECT_EQ(m.ratio, 1.0);
    const std::vector<UnitVector> two = {UnitVector::basis(3, 0), UnitVector::basis(3, 1)};
    EXPECT_THROW(codebook_metrics(two), PovmError);
    EXPECT_THROW(welch_bound(2, 3), PovmError);
}
