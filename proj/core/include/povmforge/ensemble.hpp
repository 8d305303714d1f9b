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

#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "povmforge/linalg.hpp"

namespace povmforge {

enum class Construction {
    /// Dimension q from a 2-to-1 PN function (odd q).
    kTheorem210,
    /// Dimension q + 1 from the norm-one subgroup of GF(q^3).
    kTheorem35,
};

/// "theorem_2_10" or "theorem_3_5".
std::string_view construction_name(Construction c);

struct MemberLabel {
    enum class Kind { kCharacter, kNCharacter, kBasis };

    Kind kind = Kind::kBasis;
    /// (a, b) enumeration indices for kCharacter.
    uint64_t a = 0;
    uint64_t b = 0;
    /// psi index for kNCharacter.
    uint64_t m = 0;
    /// 0-based basis index for kBasis.
    uint64_t index = 0;

    /// "v(a,b)", "u(m)" or "e(i)".
    std::string to_string() const;
};

/// Everything needed to replay a construction.
struct EnsembleProvenance {
    uint32_t p = 0;
    uint32_t k = 0;
    std::vector<uint32_t> modulus;
    /// Dimension q only.
    std::vector<uint64_t> f_coeffs;
    std::string f_text;
    uint64_t chi_index = 0;
    std::vector<uint64_t> permutation;
    /// Dimension q + 1 only.
    std::vector<uint32_t> ext_modulus;
    uint64_t alpha_index = 0;
    std::vector<uint64_t> s_set;
};

struct PovmEnsemble {
    size_t dim = 0;
    uint64_t q = 0;
    Construction construction = Construction::kTheorem210;
    /// The unit vectors before renormalization, one per member.
    std::vector<UnitVector> vectors;
    /// E_i = |v_i><v_i| / dim.
    std::vector<HermitianOperator> raw_members;
    /// M_i = E^-1/2 E_i E^-1/2.
    std::vector<HermitianOperator> members;
    std::vector<MemberLabel> labels;
    /// E = sum of raw members.
    HermitianOperator frame_operator;
    /// Closed-form E^-1/2, used to build the members.
    HermitianOperator renormalizer;
    /// E^-1/2 from the eigendecomposition path.
    HermitianOperator renormalizer_generic;
    /// Max-entry distance between the two paths.
    double renormalizer_deviation = 0.0;
    EnsembleProvenance provenance;
};

/// Formula values for one pair class of a construction.
struct CaseFormula {
    std::string id;
    std::string description;
    /// Upper bound (or exact value when equality is set) on d^2 Tr(M_i M_j).
    double bound = 0.0;
    /// Amplitude-level infinitesimal.
    double epsilon_tilde = 0.0;
    /// Probability-level infinitesimal, from its own closed form.
    double epsilon = 0.0;
    /// r in the claimed O(q^-r) for |1/(d+1) - bound|.
    double order = 0.0;
    bool equality = false;
};

struct CaseRecord {
    CaseFormula formula;
    size_t pairs = 0;
    /// (1 + epsilon) / d.
    double epsilon_bound = 0.0;
    double measured_max = 0.0;
    double measured_min = 0.0;
    /// bound - measured_max.
    double margin = 0.0;
    /// Extremes of |<v_i|v_j>| over the raw vectors of the case.
    double overlap_max = 0.0;
    double overlap_min = 0.0;
    /// Pair attaining measured_max (smallest such pair in index order).
    size_t witness_i = 0;
    size_t witness_j = 0;
    /// |1/(d+1) - bound| and its product with q^order.
    double gap = 0.0;
    double scaled_gap = 0.0;
    bool passed = false;
};

struct EpsilonLedger {
    Construction construction = Construction::kTheorem210;
    uint64_t q = 0;
    size_t dim = 0;
    double tolerance = 0.0;
    std::vector<CaseRecord> cases;

    bool passed() const;
    const CaseRecord &find(std::string_view id) const;
};

/// Maps an unordered member pair (i < j) to a case index, or -1 to skip it.
using PairClassifier = std::function<int(size_t, size_t)>;

/// Fills measured values for every case by scanning all unordered member
/// pairs. d^2 Tr(M_i M_j) is taken from the member matrices themselves.
/// Verdicts: measured_max <= bound + tol, and for equality cases both
/// extremes within tol of the bound.
EpsilonLedger scan_ledger(const PovmEnsemble &ensemble, std::vector<CaseFormula> formulas,
                          const PairClassifier &classify, double tolerance, unsigned workers);

/// Throws BoundViolated naming the first failing case and its witness pair.
void require_ledger(const EpsilonLedger &ledger, const PovmEnsemble &ensemble);

}  // namespace povmforge
