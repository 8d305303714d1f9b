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

#include <algorithm>
#include <cmath>
#include <limits>

#include "povmforge/construction_q.hpp"
#include "povmforge/construction_q1.hpp"
#include "povmforge/error.hpp"
#include "povmforge/parallel.hpp"

namespace povmforge {

CompletenessCheck check_completeness(const PovmEnsemble &ensemble, double tolerance) {
    CompletenessCheck out;
    out.tolerance = tolerance * static_cast<double>(ensemble.dim);
    if (ensemble.members.empty()) {
        out.deviation = std::numeric_limits<double>::infinity();
        return out;
    }
    const auto total = sum(ensemble.members);
    out.deviation = max_abs_difference(total, HermitianOperator::identity(ensemble.dim));
    out.passed = out.deviation <= out.tolerance;
    return out;
}

RankCheck check_informational(const PovmEnsemble &ensemble, double rel_threshold, unsigned workers) {
    RankCheck out;
    out.expected = ensemble.dim * ensemble.dim;
    const auto g = gram_rank(ensemble.members, rel_threshold, workers);
    out.rank = g.rank;
    out.smallest_retained = g.smallest_retained;
    out.largest = g.largest;
    out.passed = out.rank == out.expected && ensemble.members.size() == out.expected;
    return out;
}

PositivityCheck check_positivity(const PovmEnsemble &ensemble, double tolerance) {
    PositivityCheck out;
    out.min_eigenvalue = std::numeric_limits<double>::infinity();
    for (size_t i = 0; i < ensemble.members.size(); ++i) {
        const auto eig = hermitian_eig(ensemble.members[i]);
        if (eig.values.front() < out.min_eigenvalue) {
            out.min_eigenvalue = eig.values.front();
            out.worst_member = i;
        }
    }
    out.passed = !ensemble.members.empty() && out.min_eigenvalue >= -tolerance;
    return out;
}

VerificationReport verify_povm_axioms(const PovmEnsemble &ensemble, const Tolerances &tol, unsigned workers) {
    VerificationReport report;
    report.completeness = check_completeness(ensemble, tol.completeness);
    report.ledger = ensemble.construction == Construction::kTheorem210
                        ? compute_ledger_q(ensemble, tol.bound, workers)
                        : compute_ledger_q1(ensemble, tol.bound, workers);
    report.informational = check_informational(ensemble, tol.rank, workers);
    report.positivity = check_positivity(ensemble, tol.positivity);
    report.renormalizer_deviation = ensemble.renormalizer_deviation;
    return report;
}

bool frame_span_check(std::span<const UnitVector> vectors) {
    if (vectors.empty()) {
        return false;
    }
    const size_t d = vectors[0].dim();
    ComplexMatrix s(d, d);
    for (const auto &v : vectors) {
        if (v.dim() != d) {
            throw PovmError(ErrorCode::kDimensionMismatch, "frame vectors differ in dimension");
        }
        for (size_t i = 0; i < d; ++i) {
            for (size_t j = 0; j < d; ++j) {
                s(i, j) += v[i] * std::conj(v[j]);
            }
        }
    }
    const auto eig = hermitian_eig(HermitianOperator(std::move(s)));
    const double largest = eig.values.back();
    return largest > 0.0 && eig.values.front() > 1e-8 * largest;
}

FrameAngleProfile cluster_angles(std::vector<double> values, double tol) {
    FrameAngleProfile out;
    std::sort(values.begin(), values.end());
    double sum = 0.0;
    size_t count = 0;
    for (size_t i = 0; i < values.size(); ++i) {
        if (count > 0 && values[i] - values[i - 1] > tol) {
            out.angles.push_back(sum / static_cast<double>(count));
            out.multiplicities.push_back(count);
            sum = 0.0;
            count = 0;
        }
        sum += values[i];
        ++count;
    }
    if (count > 0) {
        out.angles.push_back(sum / static_cast<double>(count));
        out.multiplicities.push_back(count);
    }
    return out;
}

FrameAngleProfile frame_angles(std::span<const UnitVector> vectors, double tol) {
    std::vector<double> values;
    const size_t n = vectors.size();
    values.reserve(n * (n > 0 ? n - 1 : 0));
    for (size_t i = 0; i < n; ++i) {
        for (size_t j = 0; j < n; ++j) {
            if (i != j) {
                values.push_back(std::abs(inner_product(vectors[i], vectors[j])));
            }
        }
    }
    return cluster_angles(std::move(values), tol);
}

double welch_bound(size_t n, size_t k) {
    if (n < k || k == 0) {
        throw PovmError(ErrorCode::kTooFewVectors, "Welch bound needs n >= k >= 1");
    }
    if (n == 1) {
        return 0.0;
    }
    const double nd = static_cast<double>(n);
    const double kd = static_cast<double>(k);
    return std::sqrt((nd - kd) / ((nd - 1.0) * kd));
}

CodebookMetrics codebook_metrics(std::span<const UnitVector> vectors) {
    CodebookMetrics out;
    out.n = vectors.size();
    out.k = vectors.empty() ? 0 : vectors[0].dim();
    if (vectors.empty() || out.n < out.k) {
        throw PovmError(ErrorCode::kTooFewVectors, "codebook needs at least as many vectors as its dimension");
    }
    for (size_t i = 0; i < out.n; ++i) {
        if (vectors[i].dim() != out.k) {
            throw PovmError(ErrorCode::kDimensionMismatch, "codebook vectors differ in dimension");
        }
        for (size_t j = i + 1; j < out.n; ++j) {
            out.i_max = std::max(out.i_max, std::abs(inner_product(vectors[i], vectors[j])));
        }
    }
    out.welch = welch_bound(out.n, out.k);
    out.ratio = out.n == out.k ? 1.0 : out.i_max / out.welch;
    return out;
}

}  // namespace povmforge
