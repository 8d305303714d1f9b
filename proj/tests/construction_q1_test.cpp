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

#include "povmforge/construction_q1.hpp"

#include <cmath>
#include <set>

#include "gtest/gtest.h"
#include "povmforge/construction_q.hpp"
#include "povmforge/error.hpp"
#include "povmforge/verify.hpp"

using namespace povmforge;

namespace {

const std::vector<std::pair<uint32_t, uint32_t>> kGrid = {{2, 1}, {3, 1}, {2, 2}, {5, 1}, {7, 1}, {2, 3}, {3, 2}};

struct ReferenceCase {
    double bound;
    double epsilon;
};

ReferenceCase reference_case(int which, double q) {
    const double s = std::sqrt(q);
    const double a = q * q + 2.0 * q + 2.0;
    const double b = q * q + q + 1.0;
    const double h = q * q + q + s + 1.0;
    const double den2 = a * a * b * b;
    switch (which) {
        case 0: {
            const double amp = s * (q + 1.0) * h / (a * b);
            return {amp * amp, (q * std::pow(q + 1.0, 3.0) * h * h - den2) / den2};
        }
        case 1: {
            const double amp = std::pow(q + 1.0, 1.5) * h / (a * b);
            return {amp * amp, (std::pow(q + 1.0, 4.0) * h * h - den2) / den2};
        }
        default:
            return {std::pow(q + 1.0, 4.0) / den2,
                    (std::pow(q + 1.0, 5.0) + 2.0 * std::pow(q + 1.0, 2.5) * a * b) / den2};
    }
}

}  // namespace

TEST(construction_q1, s_set_q2) {
    const auto tower = make_tower(2, 1);
    const auto s = build_s_set(tower);
    ASSERT_EQ(s.elements.size(), 3u);
    const auto &alpha = tower.alpha();
    EXPECT_EQ(s.elements[0], alpha);
    EXPECT_EQ(s.elements[1], alpha + tower.ext()->one());
    EXPECT_TRUE(s.elements[2].is_one());
}

TEST(construction_q1, s_set_is_distinct_and_inside_n) {
    for (const auto &[p, k] : kGrid) {
        const auto tower = make_tower(p, k);
        const auto s = build_s_set(tower);
        ASSERT_EQ(s.elements.size(), tower.q() + 1);
        std::set<uint64_t> seen;
        for (size_t i = 0; i < s.elements.size(); ++i) {
            seen.insert(s.elements[i].index());
            EXPECT_TRUE(norm_to_base(s.elements[i], tower).is_one());
            EXPECT_EQ(s.group->generator().pow(s.logs[i]), s.elements[i]);
        }
        EXPECT_EQ(seen.size(), s.elements.size()) << "q = " << tower.q();
    }
}

TEST(construction_q1, quotient_set_is_n_minus_identity) {
    for (const auto &[p, k] : kGrid) {
        const auto tower = make_tower(p, k);
        const auto s = build_s_set(tower);
        std::set<uint64_t> quotients;
        for (size_t i = 0; i < s.elements.size(); ++i) {
            for (size_t j = 0; j < s.elements.size(); ++j) {
                if (i != j) {
                    quotients.insert((s.elements[i] * s.elements[j].inverse()).index());
                }
            }
        }
        std::set<uint64_t> n_minus_one;
        for (const auto &x : norm_one_subgroup(tower)) {
            if (!x.is_one()) {
                n_minus_one.insert(x.index());
            }
        }
        const uint64_t q = tower.q();
        EXPECT_EQ(quotients.size(), q * q + q);
        EXPECT_EQ(quotients, n_minus_one) << "q = " << q;
        EXPECT_EQ(quotients.count(tower.ext()->one().index()), 0u);

        const auto report = verify_difference_structure(s);
        EXPECT_TRUE(report.passed);
        EXPECT_EQ(report.distinct, q * q + q);
        EXPECT_EQ(report.quotients, (q + 1) * q);
        EXPECT_FALSE(report.contains_one);
        EXPECT_TRUE(report.collisions.empty());
    }
}

TEST(construction_q1, difference_report_flags_a_duplicate) {
    auto s = build_s_set(make_tower(3, 1));
    s.elements[1] = s.elements[0];
    const auto report = verify_difference_structure(s);
    EXPECT_FALSE(report.passed);
    EXPECT_TRUE(report.contains_one);
}

TEST(construction_q1, li_bound_over_the_grid) {
    for (const auto &[p, k] : kGrid) {
        const auto s = build_s_set(make_tower(p, k));
        const auto report = li_bound_report(s);
        const uint64_t q = s.group->tower().q();
        ASSERT_EQ(report.moduli.size(), q * q + q);
        EXPECT_TRUE(report.passed);
        EXPECT_LE(report.max_modulus, std::sqrt(static_cast<double>(q)) + 1e-9);
        for (uint64_t m = 1; m <= q * q + q; ++m) {
            const auto sum = character_sum_over(s.elements, NSubgroupCharacter{m, s.group});
            EXPECT_NEAR(std::abs(sum.value), report.moduli[m - 1], 1e-9);
        }
        EXPECT_NO_THROW(verify_li_bound(s));
    }
}

TEST(construction_q1, li_bound_examples) {
    EXPECT_LE(li_bound_report(build_s_set(make_tower(2, 1))).max_modulus, std::sqrt(2.0) + 1e-9);
    EXPECT_LE(li_bound_report(build_s_set(make_tower(2, 2))).max_modulus, 2.0 + 1e-9);
    const auto s = build_s_set(make_tower(3, 1));
    const auto trivial = character_sum_over(s.elements, NSubgroupCharacter{0, s.group});
    EXPECT_NEAR(std::abs(trivial.value), 4.0, 1e-12);
    EXPECT_GT(std::abs(trivial.value), std::sqrt(3.0));
}

TEST(construction_q1, li_bound_violation_is_reported) {
    auto s = build_s_set(make_tower(3, 1));
    // Four copies of 1 sum to 4 under every character.
    for (auto &x : s.elements) {
        x = s.group->tower().ext()->one();
    }
    EXPECT_FALSE(li_bound_report(s).passed);
    try {
        verify_li_bound(s);
        FAIL() << "expected LiBoundViolated";
    } catch (const PovmError &e) {
        EXPECT_EQ(e.code(), ErrorCode::kLiBoundViolated);
    }
}

TEST(construction_q1, ensemble_q2) {
    const auto ens = build_ensemble_q1(make_tower(2, 1));
    EXPECT_EQ(ens.dim, 3u);
    ASSERT_EQ(ens.members.size(), 9u);
    EXPECT_LT(max_abs_difference(sum(ens.members), HermitianOperator::identity(3)), 1e-9);
    EXPECT_EQ(ens.labels.front().to_string(), "u(1)");
    EXPECT_EQ(ens.labels.back().to_string(), "e(2)");
}

TEST(construction_q1, frame_operator_off_diagonal) {
    for (const auto &[p, k] : kGrid) {
        const auto ens = build_ensemble_q1(make_tower(p, k));
        const double d = static_cast<double>(ens.dim);
        for (size_t i = 0; i < ens.dim; ++i) {
            for (size_t j = 0; j < ens.dim; ++j) {
                const double expected = i == j ? 1.0 : -1.0 / (d * d);
                EXPECT_LT(std::abs(ens.frame_operator(i, j) - Complex(expected)), 1e-12);
            }
        }
        EXPECT_LT(ens.renormalizer_deviation, 1e-9);
    }
}

TEST(construction_q1, informationally_complete_for_small_q) {
    for (const auto &[p, k] : std::vector<std::pair<uint32_t, uint32_t>>{{2, 1}, {3, 1}, {2, 2}, {5, 1}}) {
        const auto ens = build_ensemble_q1(make_tower(p, k));
        EXPECT_EQ(gram_rank(ens.members).rank, ens.dim * ens.dim);
    }
}

TEST(construction_q1, case_formulas_match_theorem) {
    EXPECT_NEAR(case_formulas_q1(2)[2].bound, 81.0 / 4900.0, 1e-15);
    for (uint64_t q : {2u, 3u, 4u, 5u, 7u, 8u, 9u}) {
        const auto formulas = case_formulas_q1(q);
        ASSERT_EQ(formulas.size(), 3u);
        const double qd = static_cast<double>(q);
        for (int c = 0; c < 3; ++c) {
            const auto ref = reference_case(c, qd);
            EXPECT_NEAR(formulas[c].bound, ref.bound, 1e-14);
            EXPECT_NEAR(formulas[c].epsilon, ref.epsilon, 1e-12);
            EXPECT_LE(formulas[c].bound, (1.0 + formulas[c].epsilon) / (qd + 1.0) + 1e-14);
        }
        EXPECT_NEAR(formulas[0].bound, (1.0 + formulas[0].epsilon) / (qd + 1.0), 1e-12);
        EXPECT_NEAR(formulas[1].bound, (1.0 + formulas[1].epsilon) / (qd + 1.0), 1e-12);
        EXPECT_TRUE(formulas[2].equality);
        EXPECT_FALSE(formulas[0].equality);
    }
}

TEST(construction_q1, case_three_is_an_equality) {
    const auto ens = build_ensemble_q1(make_tower(2, 1));
    const auto ledger = compute_ledger_q1(ens);
    const auto &c3 = ledger.find("3");
    EXPECT_NEAR(c3.measured_max, 81.0 / 4900.0, 1e-12);
    EXPECT_NEAR(c3.measured_min, 81.0 / 4900.0, 1e-12);
    EXPECT_TRUE(c3.passed);
}

TEST(construction_q1, inner_products_are_li_sums) {
    const auto s = build_s_set(make_tower(3, 1));
    const auto vectors = build_vectors_q1(s);
    const uint64_t n = s.group->order();
    const double d = 4.0;
    const double bound = std::sqrt(3.0) / d;
    for (uint64_t tau = 1; tau < n; ++tau) {
        for (uint64_t psi = 1; psi < n; ++psi) {
            if (tau == psi) {
                continue;
            }
            const auto ip = inner_product(vectors[tau - 1], vectors[psi - 1]);
            const auto li = character_sum_over(s.elements, NSubgroupCharacter{(psi + n - tau) % n, s.group});
            EXPECT_LT(std::abs(ip - li.value / d), 1e-12);
            EXPECT_LE(std::abs(ip), bound + 1e-12);
        }
        // Against a basis vector the overlap is a single character value.
        for (size_t j = 0; j < s.elements.size(); ++j) {
            EXPECT_NEAR(std::abs(inner_product(vectors[tau - 1], UnitVector::basis(4, j))), 0.5, 1e-12);
        }
        const auto conj_sum = character_sum_over(s.elements, NSubgroupCharacter{n - tau, s.group});
        EXPECT_LE(std::abs(conj_sum.value), std::sqrt(3.0) + 1e-9);
    }
}

TEST(construction_q1, ledgers_pass_over_the_grid) {
    for (const auto &[p, k] : kGrid) {
        const auto ens = build_ensemble_q1(make_tower(p, k));
        const auto ledger = compute_ledger_q1(ens);
        const uint64_t q = ens.q;
        EXPECT_EQ(ledger.find("1").pairs, (q * q + q) * (q * q + q - 1) / 2);
        EXPECT_EQ(ledger.find("2").pairs, (q * q + q) * (q + 1));
        EXPECT_EQ(ledger.find("3").pairs, (q + 1) * q / 2);
        EXPECT_LE(ledger.find("1").overlap_max, std::sqrt(static_cast<double>(q)) / static_cast<double>(q + 1) + 1e-12);
        for (const auto &c : ledger.cases) {
            EXPECT_TRUE(c.passed) << "q = " << q << " case " << c.formula.id;
            EXPECT_GE(c.margin, -1e-9);
        }
        EXPECT_NO_THROW(epsilon_ledger_q1(ens));
    }
}

TEST(construction_q1, wrong_construction_is_rejected) {
    const auto ens = build_ensemble_q1(make_tower(2, 1));
    EXPECT_THROW(compute_ledger_q(ens), PovmError);
}
