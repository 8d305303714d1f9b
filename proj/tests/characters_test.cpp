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

#include "povmforge/characters.hpp"

#include <cmath>
#include <numbers>

#include "gtest/gtest.h"
#include "oracles.hpp"
#include "povmforge/construction_q1.hpp"
#include "povmforge/error.hpp"
#include "povmforge/functions.hpp"

using namespace povmforge;

namespace {

constexpr double kTight = 1e-12;

std::complex<double> zeta(uint64_t j, uint64_t n) {
    const double angle = 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(n);
    return {std::cos(angle), std::sin(angle)};
}

}  // namespace

TEST(characters, additive_examples) {
    const auto gf3 = make_field(3, 1);
    const AdditiveCharacter chi1{gf3->one()};
    EXPECT_LT(std::abs(eval_additive(chi1, gf3->one()) - zeta(1, 3)), kTight);

    const AdditiveCharacter chi0{gf3->zero()};
    for (const auto &b : gf3->elements()) {
        EXPECT_LT(std::abs(eval_additive(chi0, b) - 1.0), kTight);
    }

    const auto gf9 = make_field(3, 2);
    for (const auto &a : gf9->nonzero_elements()) {
        std::complex<double> total = 0.0;
        for (const auto &b : gf9->elements()) {
            total += eval_additive(AdditiveCharacter{a}, b);
        }
        EXPECT_LT(std::abs(total), 1e-12) << "a = " << a;
    }
}

TEST(characters, geometric_sums) {
    const auto gf3 = make_field(3, 1);
    std::complex<double> s = 0.0;
    for (const auto &b : gf3->elements()) {
        s += eval_additive(AdditiveCharacter{gf3->one()}, b);
    }
    EXPECT_LT(std::abs(s), kTight);

    const auto gf5 = make_field(5, 1);
    std::complex<double> t = 0.0;
    for (const auto &b : gf5->elements()) {
        t += eval_additive(AdditiveCharacter{gf5->zero()}, b);
    }
    EXPECT_LT(std::abs(t - 5.0), kTight);
}

TEST(characters, orthogonality_report_gf9) {
    const auto report = orthogonality_check(make_field(3, 2));
    EXPECT_TRUE(report.passed);
    EXPECT_EQ(report.sums_checked, 18u);
    EXPECT_LT(report.max_deviation, 1e-12);
}

TEST(characters, additive_characters_are_homomorphisms) {
    for (const auto &[p, k] : std::vector<std::pair<uint32_t, uint32_t>>{{3, 1}, {5, 1}, {7, 1}, {3, 2}, {2, 3}}) {
        const auto field = make_field(p, k);
        const auto elems = field->elements();
        for (const auto &a : elems) {
            const AdditiveCharacter chi{a};
            for (const auto &b : elems) {
                for (const auto &c : elems) {
                    ASSERT_EQ(additive_exponent(chi, b + c), (additive_exponent(chi, b) + additive_exponent(chi, c)) % p);
                }
            }
        }
    }
}

TEST(characters, n_character_examples_and_dft_table_q2) {
    auto group = std::make_shared<const NormOneGroup>(make_tower(2, 1));
    ASSERT_EQ(group->order(), 7u);
    const NSubgroupCharacter trivial{0, group};
    EXPECT_TRUE(trivial.trivial());
    for (const auto &x : group->elements()) {
        EXPECT_LT(std::abs(eval_n_character(trivial, x) - 1.0), kTight);
    }

    const auto g = group->tower().alpha().pow(group->tower().q() - 1);
    EXPECT_EQ(g, group->generator());
    EXPECT_LT(std::abs(eval_n_character(NSubgroupCharacter{1, group}, g) - zeta(1, 7)), kTight);

    const auto dft = oracle::dft_matrix(7);
    for (uint64_t m = 0; m < 7; ++m) {
        for (uint64_t j = 0; j < 7; ++j) {
            const auto value = eval_n_character(NSubgroupCharacter{m, group}, g.pow(j));
            EXPECT_LT(std::abs(value - dft[m][j]), 1e-12) << "m = " << m << ", j = " << j;
        }
    }
}

TEST(characters, n_characters_are_multiplicative) {
    for (const auto &[p, k] : std::vector<std::pair<uint32_t, uint32_t>>{{2, 1}, {3, 1}, {2, 2}, {5, 1}}) {
        auto group = std::make_shared<const NormOneGroup>(make_tower(p, k));
        const auto &elems = group->elements();
        for (uint64_t m = 0; m < group->order(); ++m) {
            const NSubgroupCharacter psi{m, group};
            EXPECT_EQ(psi.trivial(), m == 0);
            for (const auto &x : elems) {
                for (const auto &y : elems) {
                    ASSERT_EQ(n_character_exponent(psi, x * y),
                              (n_character_exponent(psi, x) + n_character_exponent(psi, y)) % group->order());
                }
            }
        }
    }
}

TEST(characters, discrete_log_rejects_elements_outside_n) {
    auto group = std::make_shared<const NormOneGroup>(make_tower(3, 1));
    size_t outside = 0;
    for (const auto &x : group->tower().ext()->nonzero_elements()) {
        if (!group->contains(x)) {
            ++outside;
            EXPECT_THROW(n_character_exponent(NSubgroupCharacter{1, group}, x), PovmError);
        }
    }
    EXPECT_EQ(outside, 26u - 13u);
}

TEST(characters, square_sum_over_gf3) {
    const auto field = make_field(3, 1);
    const uint64_t sq[] = {0, 0, 1};
    const auto f = PolyFunction::from_indices(field, sq);
    std::vector<FieldElement> values;
    for (const auto &x : field->elements()) {
        values.push_back(f(x));
    }
    const auto sum = character_sum_over(values, AdditiveCharacter{field->one()});
    EXPECT_LT(std::abs(sum.value - (1.0 + 2.0 * zeta(1, 3))), kTight);
    EXPECT_NEAR(sum.histogram.squared_modulus(), 3.0, kTight);
    EXPECT_EQ(sum.histogram.total(), 3);

    const auto empty = character_sum_over(std::span<const FieldElement>{}, AdditiveCharacter{field->one()});
    EXPECT_EQ(empty.value, std::complex<double>(0.0));
    EXPECT_EQ(empty.histogram.squared_modulus(), 0.0);
}

TEST(characters, histogram_matches_floating_accumulation) {
    RootOfUnityHistogram h(13);
    std::complex<double> direct = 0.0;
    int64_t weight = 0;
    for (uint64_t j = 0; j < 40; ++j) {
        const uint64_t e = (j * j * 7 + 3) % 13;
        const int64_t mult = static_cast<int64_t>(j % 3) - 1;
        h.add(e, mult);
        direct += static_cast<double>(mult) * zeta(e, 13);
        weight += std::abs(mult);
    }
    EXPECT_LT(std::abs(h.evaluate() - direct), 1e-12 * static_cast<double>(weight));
    EXPECT_NEAR(h.squared_modulus(), std::norm(direct), 1e-9);
}

TEST(characters, li_sums_q2_stay_below_sqrt2) {
    const auto s = build_s_set(make_tower(2, 1));
    for (uint64_t m = 1; m < 7; ++m) {
        const auto sum = character_sum_over(s.elements, NSubgroupCharacter{m, s.group});
        EXPECT_LE(std::abs(sum.value), std::sqrt(2.0) + 1e-9) << "m = " << m;
    }
    const auto trivial = character_sum_over(s.elements, NSubgroupCharacter{0, s.group});
    EXPECT_NEAR(std::abs(trivial.value), 3.0, kTight);
}

TEST(characters, foreign_values_are_rejected) {
    const auto gf5 = make_field(5, 1);
    const auto gf7 = make_field(7, 1);
    const std::vector<FieldElement> values = {gf7->one()};
    EXPECT_THROW(character_sum_over(values, AdditiveCharacter{gf5->one()}), PovmError);
    EXPECT_THROW(root_of_unity(1, 0), PovmError);
}
