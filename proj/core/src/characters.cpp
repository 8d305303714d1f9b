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

#include "povmforge/error.hpp"

namespace povmforge {

std::complex<double> root_of_unity(uint64_t j, uint64_t n) {
    if (n == 0) {
        throw PovmError(ErrorCode::kInvalidArgument, "root-of-unity order must be positive");
    }
    const double angle = 2.0 * std::numbers::pi * static_cast<double>(j % n) / static_cast<double>(n);
    return {std::cos(angle), std::sin(angle)};
}

// ---------------------------------------------------------------------------
// RootOfUnityHistogram

RootOfUnityHistogram::RootOfUnityHistogram(uint64_t order) : counts_(order, 0) {
    if (order == 0) {
        throw PovmError(ErrorCode::kInvalidArgument, "root-of-unity order must be positive");
    }
}

void RootOfUnityHistogram::add(uint64_t exponent, int64_t multiplicity) {
    counts_[exponent % counts_.size()] += multiplicity;
}

int64_t RootOfUnityHistogram::total() const {
    int64_t sum = 0;
    for (int64_t c : counts_) {
        sum += c < 0 ? -c : c;
    }
    return sum;
}

std::complex<double> RootOfUnityHistogram::evaluate() const {
    std::complex<double> sum = 0.0;
    const uint64_t n = counts_.size();
    for (uint64_t j = 0; j < n; ++j) {
        if (counts_[j] != 0) {
            sum += static_cast<double>(counts_[j]) * root_of_unity(j, n);
        }
    }
    return sum;
}

double RootOfUnityHistogram::squared_modulus() const {
    // |S|^2 = sum_k r_k zeta^k with r_k = sum_j c_j c_{j+k}; r_k = r_{n-k}, so
    // the imaginary parts cancel exactly and only cosines remain.
    const uint64_t n = counts_.size();
    double result = 0.0;
    for (uint64_t k = 0; k < n; ++k) {
        int64_t r = 0;
        for (uint64_t j = 0; j < n; ++j) {
            r += counts_[j] * counts_[(j + k) % n];
        }
        if (r != 0) {
            result += static_cast<double>(r) * std::cos(2.0 * std::numbers::pi * static_cast<double>(k) / n);
        }
    }
    return result;
}

// ---------------------------------------------------------------------------
// Additive characters

uint32_t additive_exponent(const AdditiveCharacter &chi, const FieldElement &b) {
    if (!chi.index.valid() || !b.valid() || !chi.index.field()->same_as(*b.field())) {
        throw PovmError(ErrorCode::kFieldMismatch, "additive character evaluated outside its field");
    }
    return trace_to_prime(chi.index * b);
}

std::complex<double> eval_additive(const AdditiveCharacter &chi, const FieldElement &b) {
    return root_of_unity(additive_exponent(chi, b), chi.index.field()->characteristic());
}

OrthogonalityReport orthogonality_check(const FieldRef &field) {
    const auto elements = field->elements();
    const double q = static_cast<double>(field->order());
    OrthogonalityReport report;
    // Row sums over b for each a and column sums over a for each b, from the
    // same character table.
    std::vector<std::complex<double>> column(elements.size(), 0.0);
    for (const auto &a : elements) {
        std::complex<double> row = 0.0;
        for (size_t j = 0; j < elements.size(); ++j) {
            const auto value = eval_additive({a}, elements[j]);
            row += value;
            column[j] += value;
        }
        const double expected = a.is_zero() ? q : 0.0;
        report.max_deviation = std::max(report.max_deviation, std::abs(row - expected));
        ++report.sums_checked;
    }
    for (size_t j = 0; j < elements.size(); ++j) {
        const double expected = elements[j].is_zero() ? q : 0.0;
        report.max_deviation = std::max(report.max_deviation, std::abs(column[j] - expected));
        ++report.sums_checked;
    }
    report.passed = report.max_deviation <= 1e-9 * q;
    return report;
}

// ---------------------------------------------------------------------------
// Norm-one subgroup and its characters

NormOneGroup::NormOneGroup(TowerSpec tower) : tower_(std::move(tower)) {
    const uint64_t q = tower_.q();
    order_ = q * q + q + 1;
    generator_ = tower_.alpha().pow(q - 1);
    elements_ = norm_one_subgroup(tower_);
    log_table_.reserve(order_);
    for (uint64_t m = 1; m <= order_; ++m) {
        const auto [it, inserted] = log_table_.emplace(elements_[m - 1].index(), m % order_);
        if (!inserted) {
            throw PovmError(ErrorCode::kInvalidArgument, "generator of N has order below q^2 + q + 1");
        }
    }
}

std::optional<uint64_t> NormOneGroup::discrete_log(const FieldElement &x) const {
    if (!x.valid() || !x.field()->same_as(*tower_.ext())) {
        return std::nullopt;
    }
    auto it = log_table_.find(x.index());
    if (it == log_table_.end()) {
        return std::nullopt;
    }
    return it->second;
}

bool NormOneGroup::contains(const FieldElement &x) const {
    return discrete_log(x).has_value();
}

uint64_t n_character_exponent(const NSubgroupCharacter &psi, const FieldElement &x) {
    const auto j = psi.group->discrete_log(x);
    if (!j) {
        throw PovmError(ErrorCode::kNotInSubgroup, "element " + x.to_string() + " has norm different from 1");
    }
    const uint64_t n = psi.group->order();
    return (psi.m % n) * *j % n;
}

std::complex<double> eval_n_character(const NSubgroupCharacter &psi, const FieldElement &x) {
    return root_of_unity(n_character_exponent(psi, x), psi.group->order());
}

CharacterSum character_sum_over(std::span<const FieldElement> values, const AdditiveCharacter &chi) {
    const uint32_t p = chi.index.field()->characteristic();
    CharacterSum out{0.0, RootOfUnityHistogram(p)};
    for (const auto &x : values) {
        uint32_t e = 0;
        try {
            e = additive_exponent(chi, x);
        } catch (const PovmError &) {
            throw PovmError(ErrorCode::kDomainMismatch, "value outside the additive character's field");
        }
        out.value += root_of_unity(e, p);
        out.histogram.add(e);
    }
    return out;
}

CharacterSum character_sum_over(std::span<const FieldElement> values, const NSubgroupCharacter &psi) {
    const uint64_t n = psi.group->order();
    CharacterSum out{0.0, RootOfUnityHistogram(n)};
    for (const auto &x : values) {
        uint64_t e = 0;
        try {
            e = n_character_exponent(psi, x);
        } catch (const PovmError &) {
            throw PovmError(ErrorCode::kDomainMismatch, "value outside the norm-one subgroup");
        }
        out.value += root_of_unity(e, n);
        out.histogram.add(e);
    }
    return out;
}

}  // namespace povmforge
