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
#include <map>
#include <set>
#include <sstream>

#include "povmforge/error.hpp"
#include "povmforge/linalg.hpp"

namespace povmforge {

namespace {

constexpr double kClosedFormTolerance = 1e-9;

}  // namespace

SSet build_s_set(std::shared_ptr<const NormOneGroup> group) {
    const auto &tower = group->tower();
    const uint64_t q = tower.q();
    SSet s;
    s.group = group;
    for (const auto &b : tower.base()->elements()) {
        s.elements.push_back((tower.alpha() - tower.embed(b)).pow(q - 1));
    }
    s.elements.push_back(tower.ext()->one());
    for (size_t i = 0; i < s.elements.size(); ++i) {
        const auto log = group->discrete_log(s.elements[i]);
        if (!log) {
            throw PovmError(ErrorCode::kNotInN, "d_" + std::to_string(i + 1) + " = " + s.elements[i].to_string() +
                                                    " is outside the norm-one subgroup");
        }
        s.logs.push_back(*log);
    }
    return s;
}

SSet build_s_set(const TowerSpec &tower) {
    return build_s_set(std::make_shared<const NormOneGroup>(tower));
}

DifferenceReport verify_difference_structure(const SSet &s) {
    DifferenceReport report;
    const auto &tower = s.group->tower();
    const uint64_t q = tower.q();
    report.expected = q * q + q;

    std::map<uint64_t, std::pair<size_t, size_t>> seen;
    for (size_t i = 0; i < s.elements.size(); ++i) {
        for (size_t j = 0; j < s.elements.size(); ++j) {
            if (i == j) {
                continue;
            }
            ++report.quotients;
            const FieldElement quotient = s.elements[i] / s.elements[j];
            if (quotient.is_one()) {
                report.contains_one = true;
            }
            const auto [it, inserted] = seen.emplace(quotient.index(), std::make_pair(i, j));
            if (!inserted) {
                report.collisions.push_back({it->second, {i, j}});
            }
        }
    }
    report.distinct = seen.size();

    std::set<uint64_t> target;
    const FieldElement step = tower.alpha().pow(q - 1);
    for (uint64_t m = 1; m <= report.expected; ++m) {
        target.insert(step.pow(m).index());
    }
    std::set<uint64_t> got;
    for (const auto &[idx, where] : seen) {
        got.insert(idx);
    }
    report.equals_n_minus_one = got == target;
    report.passed = report.collisions.empty() && !report.contains_one && report.distinct == report.expected &&
                    report.equals_n_minus_one;
    return report;
}

LiBoundReport li_bound_report(const SSet &s, double tolerance) {
    LiBoundReport report;
    const uint64_t q = s.group->tower().q();
    const uint64_t n = s.group->order();
    report.q = q;
    report.sqrt_q = std::sqrt(static_cast<double>(q));
    report.moduli.reserve(n - 1);
    for (uint64_t m = 1; m < n; ++m) {
        const NSubgroupCharacter psi{m, s.group};
        const auto sum = character_sum_over(s.elements, psi);
        const double modulus = std::sqrt(std::max(0.0, sum.histogram.squared_modulus()));
        report.moduli.push_back(modulus);
        if (modulus > report.max_modulus || report.argmax_m == 0) {
            report.max_modulus = modulus;
            report.argmax_m = m;
        }
    }
    report.passed = report.max_modulus <= report.sqrt_q + tolerance;
    return report;
}

LiBoundReport verify_li_bound(const SSet &s, double tolerance) {
    auto report = li_bound_report(s, tolerance);
    if (!report.passed) {
        std::ostringstream os;
        os.precision(17);
        os << "character sum for psi_" << report.argmax_m << " has modulus " << report.max_modulus << " > sqrt(q) = "
           << report.sqrt_q;
        throw PovmError(ErrorCode::kLiBoundViolated, os.str());
    }
    return report;
}

std::vector<UnitVector> build_vectors_q1(const SSet &s) {
    const uint64_t n = s.group->order();
    const size_t dim = s.elements.size();
    const double scale = 1.0 / std::sqrt(static_cast<double>(dim));
    std::vector<UnitVector> out;
    out.reserve(dim * dim);
    for (uint64_t m = 1; m < n; ++m) {
        std::vector<Complex> v(dim);
        for (size_t i = 0; i < dim; ++i) {
            v[i] = root_of_unity(m * s.logs[i] % n, n) * scale;
        }
        out.emplace_back(std::move(v));
    }
    for (size_t i = 0; i < dim; ++i) {
        out.push_back(UnitVector::basis(dim, i));
    }
    return out;
}

std::vector<MemberLabel> labels_q1(uint64_t q) {
    std::vector<MemberLabel> labels;
    const uint64_t n = q * q + q + 1;
    for (uint64_t m = 1; m < n; ++m) {
        MemberLabel l;
        l.kind = MemberLabel::Kind::kNCharacter;
        l.m = m;
        labels.push_back(l);
    }
    for (uint64_t i = 0; i <= q; ++i) {
        MemberLabel l;
        l.kind = MemberLabel::Kind::kBasis;
        l.index = i;
        labels.push_back(l);
    }
    return labels;
}

HermitianOperator build_frame_operator_q1(std::span<const UnitVector> vectors) {
    if (vectors.empty()) {
        throw PovmError(ErrorCode::kInvalidArgument, "no vectors");
    }
    const size_t d = vectors[0].dim();
    if (vectors.size() != d * d) {
        throw PovmError(ErrorCode::kDimensionMismatch, "expected (q+1)^2 vectors");
    }
    ComplexMatrix e(d, d);
    const double w = 1.0 / static_cast<double>(d);
    for (const auto &v : vectors) {
        if (v.dim() != d) {
            throw PovmError(ErrorCode::kDimensionMismatch, "vectors differ in dimension");
        }
        for (size_t i = 0; i < d; ++i) {
            for (size_t j = 0; j < d; ++j) {
                e(i, j) += w * v[i] * std::conj(v[j]);
            }
        }
    }
    HermitianOperator frame(std::move(e));
    const double off = -1.0 / static_cast<double>(d * d);
    for (size_t i = 0; i < d; ++i) {
        for (size_t j = 0; j < d; ++j) {
            const double expected = i == j ? 1.0 : off;
            if (std::abs(frame(i, j) - Complex(expected)) > kClosedFormTolerance) {
                std::ostringstream os;
                os << "frame operator entry (" << i << "," << j << ") = " << frame(i, j) << ", expected " << expected;
                throw PovmError(ErrorCode::kClosedFormMismatch, os.str());
            }
        }
    }
    return frame;
}

PovmEnsemble build_ensemble_q1(const SSet &s) {
    const auto &tower = s.group->tower();
    PovmEnsemble ens;
    ens.q = tower.q();
    ens.dim = ens.q + 1;
    ens.construction = Construction::kTheorem35;
    ens.vectors = build_vectors_q1(s);
    ens.labels = labels_q1(ens.q);
    ens.frame_operator = build_frame_operator_q1(ens.vectors);
    ens.renormalizer = structured_inverse_sqrt_q1(ens.q);
    ens.renormalizer_generic = inverse_sqrt(ens.frame_operator);
    ens.renormalizer_deviation = max_abs_difference(ens.renormalizer, ens.renormalizer_generic);
    if (ens.renormalizer_deviation > kClosedFormTolerance) {
        throw PovmError(ErrorCode::kClosedFormMismatch,
                        "closed-form and generic E^-1/2 differ by " + std::to_string(ens.renormalizer_deviation));
    }
    const double w = 1.0 / static_cast<double>(ens.dim);
    for (const auto &v : ens.vectors) {
        ens.raw_members.push_back(outer_product(v, w));
        ens.members.push_back(sandwich(ens.renormalizer, ens.raw_members.back()));
    }

    auto &prov = ens.provenance;
    const auto &base = tower.base();
    prov.p = base->characteristic();
    prov.k = base->degree();
    prov.modulus.assign(base->modulus().begin(), base->modulus().end());
    prov.ext_modulus.assign(tower.ext()->modulus().begin(), tower.ext()->modulus().end());
    prov.alpha_index = tower.alpha().index();
    for (const auto &d : s.elements) {
        prov.s_set.push_back(d.index());
    }
    return ens;
}

PovmEnsemble build_ensemble_q1(const TowerSpec &tower) {
    return build_ensemble_q1(build_s_set(tower));
}

std::vector<CaseFormula> case_formulas_q1(uint64_t q_int) {
    const double q = static_cast<double>(q_int);
    const double s = std::sqrt(q);
    const double d = q + 1.0;
    const double den = (q * q + 2.0 * q + 2.0) * (q * q + q + 1.0);
    const double h = q * q + q + s + 1.0;
    std::vector<CaseFormula> out;
    {
        CaseFormula c;
        c.id = "1";
        c.description = "character pair";
        const double amp = s * d * h / den;
        c.bound = amp * amp;
        c.epsilon_tilde = (s * std::pow(d, 1.5) * h - den) / den;
        c.epsilon = (q * d * d * d * h * h - den * den) / (den * den);
        c.order = 2.5;
        out.push_back(c);
    }
    {
        CaseFormula c;
        c.id = "2";
        c.description = "character vs basis";
        const double amp = std::pow(d, 1.5) * h / den;
        c.bound = amp * amp;
        c.epsilon_tilde = (d * d * h - den) / den;
        c.epsilon = (d * d * d * d * h * h - den * den) / (den * den);
        c.order = 2.0;
        out.push_back(c);
    }
    {
        CaseFormula c;
        c.id = "3";
        c.description = "basis vs basis";
        c.bound = d * d * d * d / (den * den);
        c.epsilon_tilde = std::pow(d, 2.5) / den;
        c.epsilon = (std::pow(d, 5.0) + 2.0 * std::pow(d, 2.5) * den) / (den * den);
        c.order = 1.0;
        c.equality = true;
        out.push_back(c);
    }
    return out;
}

int classify_pair_q1(const PovmEnsemble &ensemble, size_t i, size_t j) {
    const bool ci = ensemble.labels[i].kind == MemberLabel::Kind::kNCharacter;
    const bool cj = ensemble.labels[j].kind == MemberLabel::Kind::kNCharacter;
    if (ci && cj) {
        return 0;
    }
    return ci != cj ? 1 : 2;
}

EpsilonLedger compute_ledger_q1(const PovmEnsemble &ensemble, double tolerance, unsigned workers) {
    if (ensemble.construction != Construction::kTheorem35) {
        throw PovmError(ErrorCode::kInvalidArgument, "ledger expects a dimension-(q+1) ensemble");
    }
    if (ensemble.labels.size() != ensemble.members.size()) {
        throw PovmError(ErrorCode::kDimensionMismatch, "labels and members differ in count");
    }
    return scan_ledger(
        ensemble, case_formulas_q1(ensemble.q),
        [&ensemble](size_t i, size_t j) { return classify_pair_q1(ensemble, i, j); }, tolerance, workers);
}

EpsilonLedger epsilon_ledger_q1(const PovmEnsemble &ensemble, double tolerance, unsigned workers) {
    auto ledger = compute_ledger_q1(ensemble, tolerance, workers);
    require_ledger(ledger, ensemble);
    return ledger;
}

}  // namespace povmforge
