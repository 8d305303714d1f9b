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

#include <cstdint>
#include <memory>
#include <utility>
#include <vector>

#include "povmforge/characters.hpp"
#include "povmforge/ensemble.hpp"
#include "povmforge/finite_field.hpp"

namespace povmforge {

/// S = {d_1, ..., d_q, d_(q+1)} with d_i = (alpha - b_i)^(q-1) for the
/// elements b_i of GF(q) in enumeration order, and d_(q+1) = 1.
struct SSet {
    std::shared_ptr<const NormOneGroup> group;
    std::vector<FieldElement> elements;
    /// Discrete logs of the elements base alpha^(q-1).
    std::vector<uint64_t> logs;
};

/// Throws NotInN if some d_i falls outside the norm-one subgroup.
SSet build_s_set(std::shared_ptr<const NormOneGroup> group);
SSet build_s_set(const TowerSpec &tower);

struct DifferenceReport {
    /// Number of ordered pairs (i, j), i != j.
    size_t quotients = 0;
    size_t distinct = 0;
    /// q^2 + q.
    size_t expected = 0;
    bool contains_one = false;
    /// Quotient set equals {alpha^(m(q-1)) : m = 1, ..., q^2 + q}.
    bool equals_n_minus_one = false;
    /// Pairs of index pairs with equal quotients.
    std::vector<std::pair<std::pair<size_t, size_t>, std::pair<size_t, size_t>>> collisions;
    bool passed = false;
};

/// Computes every quotient d_i / d_j (i != j) by field arithmetic and
/// compares against powers of alpha computed directly.
DifferenceReport verify_difference_structure(const SSet &s);

struct LiBoundReport {
    uint64_t q = 0;
    double sqrt_q = 0.0;
    /// |sum_s psi_m(s)| for m = 1, ..., q^2 + q (index m - 1).
    std::vector<double> moduli;
    double max_modulus = 0.0;
    uint64_t argmax_m = 0;
    bool passed = false;
};

/// Evaluates every nontrivial character sum through exact histograms.
LiBoundReport li_bound_report(const SSet &s, double tolerance = 1e-9);

/// As li_bound_report, throwing LiBoundViolated when the bound fails.
LiBoundReport verify_li_bound(const SSet &s, double tolerance = 1e-9);

/// Vectors u_m = (psi_m(d_1), ..., psi_m(d_(q+1))) / sqrt(q+1) for
/// m = 1, ..., q^2 + q, then e_1, ..., e_(q+1).
std::vector<UnitVector> build_vectors_q1(const SSet &s);

std::vector<MemberLabel> labels_q1(uint64_t q);

/// E = c I - V / (q+1)^2, checked entrywise within 1e-9 (ClosedFormMismatch).
HermitianOperator build_frame_operator_q1(std::span<const UnitVector> vectors);

PovmEnsemble build_ensemble_q1(const SSet &s);
PovmEnsemble build_ensemble_q1(const TowerSpec &tower);

/// Cases 1 (two characters), 2 (character vs basis) and 3 (basis vs basis,
/// an equality).
std::vector<CaseFormula> case_formulas_q1(uint64_t q);

int classify_pair_q1(const PovmEnsemble &ensemble, size_t i, size_t j);

EpsilonLedger compute_ledger_q1(const PovmEnsemble &ensemble, double tolerance = 1e-9, unsigned workers = 0);

/// Throws BoundViolated with the witness pair when a case fails.
EpsilonLedger epsilon_ledger_q1(const PovmEnsemble &ensemble, double tolerance = 1e-9, unsigned workers = 0);

}  // namespace povmforge
