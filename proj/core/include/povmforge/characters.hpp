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
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <unordered_map>
#include <vector>

#include "povmforge/finite_field.hpp"

namespace povmforge {

/// e^(2 pi i j / n) on the principal branch.
std::complex<double> root_of_unity(uint64_t j, uint64_t n);

/// Exact accumulator for sums of n-th roots of unity: counts[j] is the
/// multiplicity of e^(2 pi i j / n).
class RootOfUnityHistogram {
   public:
    explicit RootOfUnityHistogram(uint64_t order);

    uint64_t order() const {
        return counts_.size();
    }
    std::span<const int64_t> counts() const {
        return counts_;
    }

    void add(uint64_t exponent, int64_t multiplicity = 1);

    /// Sum of |counts|, i.e. the number of terms accumulated.
    int64_t total() const;

    /// Complex value, accumulated once per exponent class.
    std::complex<double> evaluate() const;

    /// |sum|^2 from the integer autocorrelation of the histogram; this is
    /// real by construction and independent of accumulation order.
    double squared_modulus() const;

   private:
    std::vector<int64_t> counts_;
};

/// chi_a(b) = zeta_p^tr(a b).
struct AdditiveCharacter {
    FieldElement index;
};

/// tr(a b) in [0, p). Throws FieldMismatch when a and b live in different fields.
uint32_t additive_exponent(const AdditiveCharacter &chi, const FieldElement &b);

std::complex<double> eval_additive(const AdditiveCharacter &chi, const FieldElement &b);

struct OrthogonalityReport {
    /// Largest |sum - expected| over both families of sums.
    double max_deviation = 0.0;
    size_t sums_checked = 0;
    bool passed = false;
};

/// Checks sum_b chi_a(b) = q [a = 0] and sum_a chi_a(b) = q [b = 0] for every
/// a and b, within 1e-9 * q.
OrthogonalityReport orthogonality_check(const FieldRef &field);

/// The norm-one subgroup N of GF(q^3)*, cyclic of order q^2 + q + 1 and
/// generated by alpha^(q-1), with a discrete-log table built once.
class NormOneGroup {
   public:
    explicit NormOneGroup(TowerSpec tower);

    const TowerSpec &tower() const {
        return tower_;
    }
    uint64_t order() const {
        return order_;
    }
    const FieldElement &generator() const {
        return generator_;
    }
    /// generator^m for m = 1, ..., order (the last entry is 1).
    const std::vector<FieldElement> &elements() const {
        return elements_;
    }

    /// j in [0, order) with generator^j = x, or nullopt when x is not in N.
    std::optional<uint64_t> discrete_log(const FieldElement &x) const;
    bool contains(const FieldElement &x) const;

   private:
    TowerSpec tower_;
    uint64_t order_;
    FieldElement generator_;
    std::vector<FieldElement> elements_;
    std::unordered_map<uint64_t, uint64_t> log_table_;
};

/// psi_m(generator^j) = zeta_n^(m j) with n = q^2 + q + 1.
struct NSubgroupCharacter {
    uint64_t m = 0;
    std::shared_ptr<const NormOneGroup> group;

    bool trivial() const {
        return m % group->order() == 0;
    }
};

/// (m j) mod n for x = generator^j. Throws NotInSubgroup if Nr(x) != 1.
uint64_t n_character_exponent(const NSubgroupCharacter &psi, const FieldElement &x);

std::complex<double> eval_n_character(const NSubgroupCharacter &psi, const FieldElement &x);

struct CharacterSum {
    std::complex<double> value;
    RootOfUnityHistogram histogram;
};

/// Sum of chi over the listed values, returned both as a floating sum and as
/// an exact exponent histogram. Throws DomainMismatch for foreign values.
CharacterSum character_sum_over(std::span<const FieldElement> values, const AdditiveCharacter &chi);
CharacterSum character_sum_over(std::span<const FieldElement> values, const NSubgroupCharacter &psi);

}  // namespace povmforge
