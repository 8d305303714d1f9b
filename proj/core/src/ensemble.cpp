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

#include "povmforge/ensemble.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "povmforge/error.hpp"
#include "povmforge/parallel.hpp"

namespace povmforge {

std::string_view construction_name(Construction c) {
    switch (c) {
        case Construction::kTheorem210:
            return "theorem_2_10";
        case Construction::kTheorem35:
            return "theorem_3_5";
    }
    return "unknown";
}

std::string MemberLabel::to_string() const {
    std::ostringstream os;
    switch (kind) {
        case Kind::kCharacter:
            os << "v(" << a << "," << b << ")";
            break;
        case Kind::kNCharacter:
            os << "u(" << m << ")";
            break;
        case Kind::kBasis:
            os << "e(" << index << ")";
            break;
    }
    return os.str();
}

bool EpsilonLedger::passed() const {
    return !cases.empty() && std::all_of(cases.begin(), cases.end(), [](const CaseRecord &c) { return c.passed; });
}

const CaseRecord &EpsilonLedger::find(std::string_view id) const {
    for (const auto &c : cases) {
        if (c.formula.id == id) {
            return c;
        }
    }
    throw PovmError(ErrorCode::kInvalidArgument, "no ledger case " + std::string(id));
}

namespace {

struct Accumulator {
    size_t pairs = 0;
    double max = -std::numeric_limits<double>::infinity();
    double min = std::numeric_limits<double>::infinity();
    double overlap_max = -std::numeric_limits<double>::infinity();
    double overlap_min = std::numeric_limits<double>::infinity();
    size_t wi = 0;
    size_t wj = 0;

    void add(double value, double overlap, size_t i, size_t j) {
        ++pairs;
        if (value > max) {
            max = value;
            wi = i;
            wj = j;
        }
        min = std::min(min, value);
        overlap_max = std::max(overlap_max, overlap);
        overlap_min = std::min(overlap_min, overlap);
    }

    // Chunks are merged in worker order, so the witness stays the smallest
    // maximizing pair.
    void merge(const Accumulator &other) {
        pairs += other.pairs;
        if (other.max > max) {
            max = other.max;
            wi = other.wi;
            wj = other.wj;
        }
        min = std::min(min, other.min);
        overlap_max = std::max(overlap_max, other.overlap_max);
        overlap_min = std::min(overlap_min, other.overlap_min);
    }
};

}  // namespace

EpsilonLedger scan_ledger(const PovmEnsemble &ensemble, std::vector<CaseFormula> formulas,
                          const PairClassifier &classify, double tolerance, unsigned workers) {
    const size_t n = ensemble.members.size();
    const size_t d = ensemble.dim;
    if (ensemble.vectors.size() != n) {
        throw PovmError(ErrorCode::kDimensionMismatch, "ensemble vectors and members differ in count");
    }
    const size_t len = 2 * d * d;
    std::vector<double> flat(n * len);
    for (size_t i = 0; i < n; ++i) {
        const auto data = ensemble.members[i].matrix().data();
        for (size_t k = 0; k < data.size(); ++k) {
            flat[i * len + 2 * k] = data[k].real();
            flat[i * len + 2 * k + 1] = data[k].imag();
        }
    }
    const double d2 = static_cast<double>(d * d);

    if (workers == 0) {
        workers = default_workers();
    }
    workers = std::max(1u, workers);
    std::vector<std::vector<Accumulator>> partial(workers, std::vector<Accumulator>(formulas.size()));
    parallel_for(n, workers, [&](size_t begin, size_t end, unsigned w) {
        auto &acc = partial[w];
        for (size_t i = begin; i < end; ++i) {
            const double *xi = &flat[i * len];
            for (size_t j = i + 1; j < n; ++j) {
                const int c = classify(i, j);
                if (c < 0) {
                    continue;
                }
                const double *xj = &flat[j * len];
                double tr = 0.0;
                for (size_t k = 0; k < len; ++k) {
                    tr += xi[k] * xj[k];
                }
                const double overlap = std::abs(inner_product(ensemble.vectors[i], ensemble.vectors[j]));
                acc[static_cast<size_t>(c)].add(d2 * tr, overlap, i, j);
            }
        }
    });

    EpsilonLedger ledger;
    ledger.construction = ensemble.construction;
    ledger.q = ensemble.q;
    ledger.dim = d;
    ledger.tolerance = tolerance;
    const double qd = static_cast<double>(ensemble.q);
    for (size_t c = 0; c < formulas.size(); ++c) {
        Accumulator total;
        for (const auto &part : partial) {
            total.merge(part[c]);
        }
        CaseRecord rec;
        rec.formula = std::move(formulas[c]);
        rec.pairs = total.pairs;
        rec.epsilon_bound = (1.0 + rec.formula.epsilon) / static_cast<double>(d);
        if (total.pairs > 0) {
            rec.measured_max = total.max;
            rec.measured_min = total.min;
            rec.overlap_max = total.overlap_max;
            rec.overlap_min = total.overlap_min;
            rec.witness_i = total.wi;
            rec.witness_j = total.wj;
        }
        rec.margin = rec.formula.bound - rec.measured_max;
        rec.gap = std::abs(1.0 / static_cast<double>(d + 1) - rec.formula.bound);
        rec.scaled_gap = rec.gap * std::pow(qd, rec.formula.order);
        if (rec.formula.equality) {
            rec.passed = total.pairs > 0 && std::abs(rec.measured_max - rec.formula.bound) <= tolerance &&
                         std::abs(rec.measured_min - rec.formula.bound) <= tolerance;
        } else {
            rec.passed = total.pairs > 0 && rec.measured_max <= rec.formula.bound + tolerance;
        }
        ledger.cases.push_back(std::move(rec));
    }
    return ledger;
}

void require_ledger(const EpsilonLedger &ledger, const PovmEnsemble &ensemble) {
    for (const auto &c : ledger.cases) {
        if (c.passed) {
            continue;
        }
        std::ostringstream os;
        os.precision(17);
        os << construction_name(ledger.construction) << " q=" << ledger.q << " case " << c.formula.id << ": measured "
           << c.measured_max << (c.formula.equality ? " (min " + std::to_string(c.measured_min) + ")" : "")
           << " against bound " << c.formula.bound << " at pair ";
        if (c.witness_i < ensemble.labels.size() && c.witness_j < ensemble.labels.size()) {
            os << ensemble.labels[c.witness_i].to_string() << ", " << ensemble.labels[c.witness_j].to_string();
        } else {
            os << c.witness_i << ", " << c.witness_j;
        }
        if (c.pairs == 0) {
            os << " (no pairs in case)";
        }
        throw PovmError(ErrorCode::kBoundViolated, os.str());
    }
}

}  // namespace povmforge
