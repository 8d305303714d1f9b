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
#include <vector>

#include "povmforge/ensemble.hpp"
#include "povmforge/finite_field.hpp"
#include "povmforge/functions.hpp"
#include "povmforge/linalg.hpp"

namespace povmforge {

/// The q(q-1) vectors v_(a,b) = (chi(a f(a_i) + b a_i))_i / sqrt(q) for
/// a in GF(q), b in GF(q)* (both in enumeration order, a outermost),
/// followed by e_1, ..., e_q. chi is the additive character chi_c for
/// c = chi_index.
///
/// Throws EvenQ ("odd q required"), NotTwoToOnePN, InvalidPermutation,
/// TrivialCharacter or FieldMismatch.
std::vector<UnitVector> build_vectors_q(const FieldRef &field, const PolyFunction &f, const FPermutation &perm,
                                        const FieldElement &chi_index);

/// Labels matching the order of build_vectors_q.
std::vector<MemberLabel> labels_q(const FieldRef &field);

/// E = sum_v |v><v| / q, checked against its closed form: ones on the
/// diagonal, -1/q at the mirrored positions (i, q - i) for i >= 1 (0-based),
/// zero elsewhere. Throws ClosedFormMismatch beyond 1e-9.
HermitianOperator build_frame_operator_q(std::span<const UnitVector> vectors);

/// Full pipeline. Members are built with the closed-form E^-1/2 after it is
/// compared with the eigendecomposition path (ClosedFormMismatch beyond
/// 1e-9).
PovmEnsemble build_ensemble_q(const FieldRef &field, const PolyFunction &f, const FPermutation &perm,
                              const FieldElement &chi_index);

/// Convenience: f-permutation derived from f and chi = chi_1.
PovmEnsemble build_ensemble_q(const FieldRef &field, const PolyFunction &f);

/// Case formulas 1.1 (a != c), 1.2 (a = c, b != d), 2 (character vs basis)
/// and 3 (basis vs basis) at q.
std::vector<CaseFormula> case_formulas_q(uint64_t q);

/// Case index of a member pair of a dimension-q ensemble.
int classify_pair_q(const PovmEnsemble &ensemble, size_t i, size_t j);

/// Measures every case without throwing.
EpsilonLedger compute_ledger_q(const PovmEnsemble &ensemble, double tolerance = 1e-9, unsigned workers = 0);

/// As compute_ledger_q, then throws BoundViolated on any failing case.
EpsilonLedger epsilon_ledger_q(const PovmEnsemble &ensemble, double tolerance = 1e-9, unsigned workers = 0);

}  // namespace povmforge
