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

#include "povmforge/construction_q.hpp"

#include <cmath>
#include <sstream>

#include "povmforge/characters.hpp"
#include "povmforge/error.hpp"

namespace povmforge {

namespace {

constexpr double kClosedFormTolerance = 1e-9;

void check_inputs(const FieldRef &field, const PolyFunction &f, const FPermutation &perm,
                  const FieldElement &chi_index) {
    if (field->order() % 2 == 0) {
        throw PovmError(ErrorCode::kEvenQ, "odd q required, got q = " + std::to_string(field->order()));
    }
    if (!f.field()->same_as(*field) || !chi_index.valid() || !chi_index.field()->same_as(*field)) {
        throw PovmError(ErrorCode::kFieldMismatch, "function, character and field must share " + field->describe());
    }
    if (!is_two_to_one(f).two_to_one || !is_pn(f)) {
        throw PovmError(ErrorCode::kNotTwoToOnePN, f.to_string() + " is not a 2-to-1 PN function over " +
                                                       field->describe());
    }
    if (!is_f_permutation(perm, f)) {
        throw PovmError(ErrorCode::kInvalidPermutation, "ordering is not an f-permutation for " + f.to_string());
    }
    if (chi_index.is_zero()) {
        throw PovmError(ErrorCode::kTrivialCharacter, "the additive character must be nontrivial");
    }
}

}  // namespace

std::vector<UnitVector> build_vectors_q(const FieldRef &field, const PolyFunction &f, const FPermutation &perm,
                                        const FieldElement &chi_index) {
    check_inputs(field, f, perm, chi_index);
    const uint64_t q = field->order();
    const uint32_t p = field->characteristic();
    const AdditiveCharacter chi{chi_index};
    const double scale = 1.0 / std::sqrt(static_cast<double>(q));

    std::vector<FieldElement> f_values;
    f_values.reserve(q);
    for (const auto &x : perm.order) {
        f_values.push_back(f(x));
    }

    std::vector<UnitVector> out;
    out.reserve(q * q);
    const auto elements = field->elements();
    for (const auto &a : elements) {
        for (uint64_t bi = 1; bi < q; ++bi) {
            const FieldElement &b = elements[bi];
            std::vector<Complex> v(q);
            for (uint64_t i = 0; i < q; ++i) {
                const uint32_t e = additive_exponent(chi, a * f_values[i] + b * perm.order[i]);
                v[i] = root_of_unity(e, p) * scale;
            }
            out.emplace_back(std::move(v));
        }
    }
    for (uint64_t i = 0; i < q; ++i) {
        out.push_back(UnitVector::basis(q, i));
    }
    return out;
}

std::vector<MemberLabel> labels_q(const FieldRef &field) {
    const uint64_t q = field->order();
    std::vector<MemberLabel> labels;
    labels.reserve(q * q);
    for (uint64_t a = 0; a < q; ++a) {
        for (uint64_t b = 1; b < q; ++b) {
            MemberLabel l;
            l.kind = MemberLabel::Kind::kCharacter;
            l.a = a;
            l.b = b;
            labels.push_back(l);
        }
    }
    for (uint64_t i = 0; i < q; ++i) {
        MemberLabel l;
        l.kind = MemberLabel::Kind::kBasis;
        l.index = i;
        labels.push_back(l);
    }
    return labels;
}

HermitianOperator build_frame_operator_q(std::span<const UnitVector> vectors) {
    if (vectors.empty()) {
        throw PovmError(ErrorCode::kInvalidArgument, "no vectors");
    }
    const size_t q = vectors[0].dim();
    if (vectors.size() != q * q) {
        throw PovmError(ErrorCode::kDimensionMismatch, "expected q^2 vectors");
    }
    ComplexMatrix e(q, q);
    const double w = 1.0 / static_cast<double>(q);
    for (const auto &v : vectors) {
        if (v.dim() != q) {
            throw PovmError(ErrorCode::kDimensionMismatch, "vectors differ in dimension");
        }
        for (size_t i = 0; i < q; ++i) {
            for (size_t j = 0; j < q; ++j) {
                e(i, j) += w * v[i] * std::conj(v[j]);
            }
        }
    }
    HermitianOperator frame(std::move(e));

    for (size_t i = 0; i < q; ++i) {
        for (size_t j = 0; j < q; ++j) {
            double expected = 0.0;
            if (i == j) {
                expected = 1.0;
            } else if (i >= 1 && j == q - i) {
                expected = -w;
            }
            const double dev = std::abs(frame(i, j) - Complex(expected));
            if (dev > kClosedFormTolerance) {
                std::ostringstream os;
                os << "frame operator entry (" << i << "," << j << ") = " << frame(i, j) << ", expected " << expected;
                throw PovmError(ErrorCode::kClosedFormMismatch, os.str());
            }
        }
    }
    return frame;
}

PovmEnsemble build_ensemble_q(const FieldRef &field, const PolyFunction &f, const FPermutation &perm,
                              const FieldElement &chi_index) {
    PovmEnsemble ens;
    ens.q = field->order();
    ens.dim = ens.q;
    ens.construction = Construction::kTheorem210;
    ens.vectors = build_vectors_q(field, f, perm, chi_index);
    ens.labels = labels_q(field);
    ens.frame_operator = build_frame_operator_q(ens.vectors);
    ens.renormalizer = structured_inverse_sqrt_q(ens.q);
    ens.renormalizer_generic = inverse_sqrt(ens.frame_operator);
    ens.renormalizer_deviation = max_abs_difference(ens.renormalizer, ens.renormalizer_generic);
    if (ens.renormalizer_deviation > kClosedFormTolerance) {
        throw PovmError(ErrorCode::kClosedFormMismatch,
                        "closed-form and generic E^-1/2 differ by " + std::to_string(ens.renormalizer_deviation));
    }
    const double w = 1.0 / static_cast<double>(ens.dim);
    ens.raw_members.reserve(ens.vectors.size());
    ens.members.reserve(ens.vectors.size());
    for (const auto &v : ens.vectors) {
        ens.raw_members.push_back(outer_product(v, w));
        ens.members.push_back(sandwich(ens.renormalizer, ens.raw_members.back()));
    }

    auto &prov = ens.provenance;
    prov.p = field->characteristic();
    prov.k = field->degree();
    prov.modulus.assign(field->modulus().begin(), field->modulus().end());
    for (const auto &c : f.coeffs()) {
        prov.f_coeffs.push_back(c.index());
    }
    prov.f_text = f.to_string();
    prov.chi_index = chi_index.index();
    for (const auto &a : perm.order) {
        prov.permutation.push_back(a.index());
    }
    return ens;
}

PovmEnsemble build_ensemble_q(const FieldRef &field, const PolyFunction &f) {
    if (field->order() % 2 == 0) {
        throw PovmError(ErrorCode::kEvenQ, "odd q required, got q = " + std::to_string(field->order()));
    }
    return build_ensemble_q(field, f, build_f_permutation(f), field->one());
}

std::vector<CaseFormula> case_formulas_q(uint64_t q_int) {
    const double q = static_cast<double>(q_int);
    const double s = std::sqrt(q);
    const double q2 = q * q;
    const double den = q2 - 1.0;
    std::vector<CaseFormula> out;

    {
        CaseFormula c;
        c.id = "1.1";
        c.description = "character pair, a != c";
        const double amp = (q2 * s + q2 - q + 1.0) / (den * q);
        c.bound = amp * amp;
        c.epsilon_tilde = (q2 - q + s + 1.0) / (s * den);
        c.epsilon = (q2 - q + s + 1.0) * (2.0 * q2 * s + q2 - q - s + 1.0) / (q * den * den);
        c.order = 1.5;
        out.push_back(c);
    }
    {
        CaseFormula c;
        c.id = "1.2";
        c.description = "character pair, a = c, b != d";
        const double amp = (q2 - q + 1.0) / (den * q);
        c.bound = amp * amp;
        c.epsilon_tilde = (q2 - q + 1.0) / (s * den);
        c.epsilon = (q2 - q + 1.0) * (2.0 * q2 * s + q2 - q - 2.0 * s + 1.0) / (q * den * den);
        c.order = 1.0;
        out.push_back(c);
    }
    {
        CaseFormula c;
        c.id = "2";
        c.description = "character vs basis";
        const double amp = (q2 + q + 1.0) / (den * s);
        c.bound = amp * amp;
        c.epsilon_tilde = (q + 2.0) / den;
        c.epsilon = q * (q + 2.0) * (2.0 * q + 1.0) / (den * den);
        c.order = 2.0;
        out.push_back(c);
    }
    {
        CaseFormula c;
        c.id = "3";
        c.description = "basis vs basis";
        const double amp = q / den;
        c.bound = amp * amp;
        c.epsilon_tilde = q * s / den;
        c.epsilon = q * s * (2.0 * q2 + q * s - 2.0) / (den * den);
        c.order = 1.0;
        out.push_back(c);
    }
    return out;
}

int classify_pair_q(const PovmEnsemble &ensemble, size_t i, size_t j) {
    const auto &li = ensemble.labels[i];
    const auto &lj = ensemble.labels[j];
    const bool ci = li.kind == MemberLabel::Kind::kCharacter;
    const bool cj = lj.kind == MemberLabel::Kind::kCharacter;
    if (ci && cj) {
        return li.a != lj.a ? 0 : 1;
    }
    if (ci != cj) {
        return 2;
    }
    return 3;
}

EpsilonLedger compute_ledger_q(const PovmEnsemble &ensemble, double tolerance, unsigned workers) {
    if (ensemble.construction != Construction::kTheorem210) {
        throw PovmError(ErrorCode::kInvalidArgument, "ledger expects a dimension-q ensemble");
    }
    if (ensemble.labels.size() != ensemble.members.size()) {
        throw PovmError(ErrorCode::kDimensionMismatch, "labels and members differ in count");
    }
    return scan_ledger(
        ensemble, case_formulas_q(ensemble.q),
        [&ensemble](size_t i, size_t j) { return classify_pair_q(ensemble, i, j); }, tolerance, workers);
}

EpsilonLedger epsilon_ledger_q(const PovmEnsemble &ensemble, double tolerance, unsigned workers) {
    auto ledger = compute_ledger_q(ensemble, tolerance, workers);
    require_ledger(ledger, ensemble);
    return ledger;
}

}  // namespace povmforge
