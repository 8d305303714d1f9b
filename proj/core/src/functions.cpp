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

#include "povmforge/functions.hpp"

#include <algorithm>
#include <sstream>

#include "povmforge/error.hpp"
#include "povmforge/parallel.hpp"

namespace povmforge {

PolyFunction::PolyFunction(FieldRef field, std::vector<FieldElement> coeffs)
    : field_(std::move(field)), coeffs_(std::move(coeffs)) {
    for (const auto &c : coeffs_) {
        if (!c.valid() || !c.field()->same_as(*field_)) {
            throw PovmError(ErrorCode::kFieldMismatch, "polynomial coefficient outside " + field_->describe());
        }
    }
    while (!coeffs_.empty() && coeffs_.back().is_zero()) {
        coeffs_.pop_back();
    }
}

PolyFunction PolyFunction::from_indices(const FieldRef &field, std::span<const uint64_t> indices) {
    std::vector<FieldElement> coeffs;
    coeffs.reserve(indices.size());
    for (uint64_t idx : indices) {
        coeffs.push_back(field->element(idx));
    }
    return PolyFunction(field, std::move(coeffs));
}

FieldElement PolyFunction::operator()(const FieldElement &x) const {
    FieldElement acc = field_->zero();
    for (size_t i = coeffs_.size(); i-- > 0;) {
        acc = acc * x + coeffs_[i];
    }
    return acc;
}

std::vector<uint64_t> PolyFunction::value_table() const {
    std::vector<uint64_t> table(field_->order());
    for (uint64_t i = 0; i < table.size(); ++i) {
        table[i] = (*this)(field_->element(i)).index();
    }
    return table;
}

PolyFunction PolyFunction::shifted(const FieldElement &d) const {
    std::vector<FieldElement> coeffs = coeffs_;
    if (coeffs.empty()) {
        coeffs.push_back(field_->zero());
    }
    coeffs[0] = coeffs[0] + d;
    return PolyFunction(field_, std::move(coeffs));
}

std::string PolyFunction::to_string() const {
    if (coeffs_.empty()) {
        return "0";
    }
    std::ostringstream os;
    bool first = true;
    for (size_t i = coeffs_.size(); i-- > 0;) {
        if (coeffs_[i].is_zero()) {
            continue;
        }
        if (!first) {
            os << " + ";
        }
        first = false;
        const bool unit = coeffs_[i].is_one();
        if (!unit || i == 0) {
            os << coeffs_[i].to_string();
        }
        if (i >= 1) {
            os << "x";
        }
        if (i >= 2) {
            os << "^" << i;
        }
    }
    return os.str();
}

FiberProfile fiber_profile(std::span<const uint64_t> table) {
    FiberProfile profile;
    for (uint64_t v : table) {
        ++profile.fiber_sizes[v];
    }
    const bool odd = table.size() % 2 == 1;
    size_t singles = 0;
    bool sizes_ok = true;
    for (const auto &[image, count] : profile.fiber_sizes) {
        if (count == 1) {
            ++singles;
            profile.exceptional_image = image;
        } else if (count != 2) {
            sizes_ok = false;
        }
    }
    profile.two_to_one = sizes_ok && (odd ? singles == 1 : singles == 0);
    if (!profile.two_to_one || !odd) {
        profile.exceptional_image.reset();
    }
    return profile;
}

FiberProfile is_two_to_one(const PolyFunction &f) {
    const auto table = f.value_table();
    return fiber_profile(table);
}

bool is_pn(const PolyFunction &f) {
    const auto &field = f.field();
    const auto elements = field->elements();
    const auto table = f.value_table();
    std::vector<char> seen(field->order());
    for (uint64_t ai = 1; ai < field->order(); ++ai) {
        std::fill(seen.begin(), seen.end(), 0);
        for (const auto &x : elements) {
            const uint64_t shifted = (x + elements[ai]).index();
            const uint64_t diff = (field->element(table[shifted]) - field->element(table[x.index()])).index();
            if (seen[diff]) {
                return false;
            }
            seen[diff] = 1;
        }
    }
    return true;
}

FPermutation build_f_permutation(const PolyFunction &f) {
    const auto &field = f.field();
    const uint64_t q = field->order();
    if (q % 2 == 0) {
        throw PovmError(ErrorCode::kEvenQ, "odd q required for an f-permutation");
    }
    const auto table = f.value_table();
    const auto profile = fiber_profile(table);
    if (!profile.two_to_one) {
        throw PovmError(ErrorCode::kNotTwoToOne, f.to_string() + " is not a 2-to-1 mapping over " + field->describe());
    }
    // Fibers in order of their least element; the element loop visits
    // indices ascending, so the first member seen is the representative.
    std::map<uint64_t, std::vector<uint64_t>> fibers;
    std::vector<uint64_t> first_seen;
    for (uint64_t x = 0; x < q; ++x) {
        auto &fiber = fibers[table[x]];
        if (fiber.empty()) {
            first_seen.push_back(table[x]);
        }
        fiber.push_back(x);
    }
    FPermutation perm;
    perm.order.resize(q);
    perm.order[0] = field->element(fibers.at(*profile.exceptional_image).front());
    size_t i = 1;  // 0-based slot of a_2
    for (uint64_t image : first_seen) {
        if (image == *profile.exceptional_image) {
            continue;
        }
        const auto &fiber = fibers.at(image);
        perm.order[i] = field->element(fiber[0]);
        perm.order[q - i] = field->element(fiber[1]);
        ++i;
    }
    return perm;
}

bool is_f_permutation(const FPermutation &perm, const PolyFunction &f) {
    const auto &field = f.field();
    const uint64_t q = field->order();
    if (q % 2 == 0 || perm.order.size() != q) {
        return false;
    }
    std::vector<char> seen(q, 0);
    for (const auto &a : perm.order) {
        if (!a.valid() || !a.field()->same_as(*field) || seen[a.index()]) {
            return false;
        }
        seen[a.index()] = 1;
    }
    // 1-based pairs (i, q + 2 - i) are 0-based (i, q - i).
    const FieldElement first_value = f(perm.order[0]);
    for (uint64_t i = 1; i <= (q - 1) / 2; ++i) {
        const FieldElement value = f(perm.order[i]);
        if (value != f(perm.order[q - i]) || value == first_value) {
            return false;
        }
    }
    return true;
}

bool outside_symmetric_class(const PolyFunction &f) {
    const auto &field = f.field();
    if (!f(field->zero()).is_zero()) {
        return true;
    }
    for (const auto &x : field->nonzero_elements()) {
        if (f(x) != f(-x)) {
            return true;
        }
    }
    return false;
}

std::vector<CatalogueEntry> catalogue_2to1_pn(const FieldRef &field, std::span<const PolyFunction> extra) {
    const uint64_t q = field->order();
    if (field->characteristic() == 2) {
        throw PovmError(ErrorCode::kEvenQ, "the 2-to-1 PN catalogue needs odd characteristic");
    }
    const bool exhaustive = q <= 9;
    const uint64_t s_limit = exhaustive ? q : std::min<uint64_t>(q, 5);
    const uint64_t tw_limit = exhaustive ? q : std::min<uint64_t>(q, 4);

    std::vector<CatalogueEntry> out;
    auto admit = [&](PolyFunction f, const std::string &family) {
        if (!is_two_to_one(f).two_to_one || !is_pn(f)) {
            throw PovmError(ErrorCode::kNotTwoToOnePN, f.to_string() + " is not a 2-to-1 PN function");
        }
        const bool outside = outside_symmetric_class(f);
        out.push_back({std::move(f), family, outside});
    };

    for (uint64_t s = 1; s < s_limit; ++s) {
        for (uint64_t t = 0; t < tw_limit; ++t) {
            for (uint64_t w = 0; w < tw_limit; ++w) {
                const uint64_t coeffs[] = {w, t, s};
                admit(PolyFunction::from_indices(field, coeffs), "quadratic");
            }
        }
    }
    for (const auto &f : extra) {
        if (!f.field()->same_as(*field)) {
            throw PovmError(ErrorCode::kFieldMismatch, "catalogue extra lives in another field");
        }
        admit(f, "extra");
        for (const auto &d : field->nonzero_elements()) {
            admit(f.shifted(d), "shift");
        }
    }
    return out;
}

BigInt count_two_to_one_formula(const FieldSpec &field) {
    auto factorial = [](uint64_t n) {
        BigInt r = 1;
        for (uint64_t i = 2; i <= n; ++i) {
            r *= i;
        }
        return r;
    };
    const uint64_t q = field.order();
    if (field.characteristic() == 2) {
        const uint64_t half = q / 2;
        const BigInt numerator = factorial(q) * factorial(q);
        const BigInt denominator = (BigInt(1) << half) * factorial(half) * factorial(half);
        return numerator / denominator;
    }
    const uint64_t half = (q - 1) / 2;
    const BigInt numerator = BigInt(q) * q * factorial(q - 1) * factorial(q - 1);
    const BigInt denominator = (BigInt(1) << half) * factorial(half) * factorial(half);
    return numerator / denominator;
}

BigInt count_two_to_one_bruteforce(const FieldSpec &field) {
    const uint64_t q = field.order();
    if (q > 5) {
        throw PovmError(ErrorCode::kTooLarge, "brute-force enumeration limited to q <= 5");
    }
    // Partition by the value at x = 0; each worker runs an odometer over the
    // remaining q - 1 positions.
    std::vector<uint64_t> partial(q, 0);
    parallel_for(q, 0, [&](size_t begin, size_t end, unsigned) {
        std::vector<uint64_t> table(q, 0);
        for (size_t head = begin; head < end; ++head) {
            std::fill(table.begin(), table.end(), 0);
            table[0] = head;
            uint64_t count = 0;
            while (true) {
                if (fiber_profile(table).two_to_one) {
                    ++count;
                }
                size_t pos = 1;
                while (pos < q && ++table[pos] == q) {
                    table[pos] = 0;
                    ++pos;
                }
                if (pos >= q) {
                    break;
                }
            }
            partial[head] = count;
        }
    });
    BigInt total = 0;
    for (uint64_t c : partial) {
        total += c;
    }
    return total;
}

}  // namespace povmforge
