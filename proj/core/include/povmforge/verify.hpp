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
#include <span>
#include <vector>

#include "povmforge/ensemble.hpp"
#include "povmforge/linalg.hpp"

namespace povmforge {

struct Tolerances {
    /// Completeness: ||sum M_i - I||_max <= completeness * dim.
    double completeness = 1e-9;
    /// Slack added to every case bound.
    double bound = 1e-9;
    /// Members count as positive semidefinite above -positivity.
    double positivity = 1e-10;
    /// Relative Gram eigenvalue threshold.
    double rank = 1e-8;
    /// Frame-angle merge distance.
    double angle = 1e-7;
};

struct CompletenessCheck {
    double deviation = 0.0;
    double tolerance = 0.0;
    bool passed = false;
};

struct RankCheck {
    size_t rank = 0;
    size_t expected = 0;
    double smallest_retained = 0.0;
    double largest = 0.0;
    bool passed = false;
};

struct PositivityCheck {
    double min_eigenvalue = 0.0;
    size_t worst_member = 0;
    bool passed = false;
};

struct VerificationReport {
    CompletenessCheck completeness;
    EpsilonLedger ledger;
    RankCheck informational;
    PositivityCheck positivity;
    double renormalizer_deviation = 0.0;

    bool symmetry_passed() const {
        return ledger.passed();
    }
    bool passed() const {
        return completeness.passed && symmetry_passed() && informational.passed && positivity.passed;
    }
};

CompletenessCheck check_completeness(const PovmEnsemble &ensemble, double tolerance);
RankCheck check_informational(const PovmEnsemble &ensemble, double rel_threshold, unsigned workers = 0);
PositivityCheck check_positivity(const PovmEnsemble &ensemble, double tolerance);

/// Runs every axiom plus the ledger of the ensemble's construction. Never
/// throws for a failing verdict; the report carries it.
VerificationReport verify_povm_axioms(const PovmEnsemble &ensemble, const Tolerances &tol = {},
                                      unsigned workers = 0);

/// True iff the vectors span C^d (the frame operator has full numerical rank
/// at relative threshold 1e-8).
bool frame_span_check(std::span<const UnitVector> vectors);

struct FrameAngleProfile {
    /// Cluster means, ascending.
    std::vector<double> angles;
    /// Ordered-pair count per cluster.
    std::vector<size_t> multiplicities;
};

/// Clusters the values of |<f_i|f_j>| over ordered pairs i != j. A value
/// joins the current cluster when within tol of the previous sorted value.
FrameAngleProfile frame_angles(std::span<const UnitVector> vectors, double tol = 1e-7);

/// Re-clusters a list of values with the same rule.
FrameAngleProfile cluster_angles(std::vector<double> values, double tol = 1e-7);

struct CodebookMetrics {
    size_t n = 0;
    size_t k = 0;
    double i_max = 0.0;
    double welch = 0.0;
    /// i_max / welch, or 1 when n == k.
    double ratio = 0.0;
};

/// Throws TooFewVectors when n < k, DimensionMismatch on mixed dimensions.
CodebookMetrics codebook_metrics(std::span<const UnitVector> vectors);

/// sqrt((n - k) / ((n - 1) k)).
double welch_bound(size_t n, size_t k);

}  // namespace povmforge
