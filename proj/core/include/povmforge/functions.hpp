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

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "povmforge/finite_field.hpp"

namespace povmforge {

using BigInt = boost::multiprecision::cpp_int;

/// f(x) = sum_i coeffs[i] x^i over GF(q).
class PolyFunction {
   public:
    PolyFunction(FieldRef field, std::vector<FieldElement> coeffs);

    /// Convenience: coefficients given as enumeration indices.
    static PolyFunction from_indices(const FieldRef &field, std::span<const uint64_t> indices);

    const FieldRef &field() const {
        return field_;
    }
    std::span<const FieldElement> coeffs() const {
        return coeffs_;
    }

    FieldElement operator()(const FieldElement &x) const;

    /// Value table indexed by element index, holding value indices.
    std::vector<uint64_t> value_table() const;

    /// f(x) + d.
    PolyFunction shifted(const FieldElement &d) const;

    std::string to_string() const;

   private:
    FieldRef field_;
    std::vector<FieldElement> coeffs_;
};

struct FiberProfile {
    bool two_to_one = false;
    /// Preimage count per attained image (value index -> count).
    std::map<uint64_t, uint64_t> fiber_sizes;
    /// The image with a single preimage, for odd domain size.
    std::optional<uint64_t> exceptional_image;
};

/// 2-to-1 test on an arbitrary map given by its value table over a set of
/// size table.size().
FiberProfile fiber_profile(std::span<const uint64_t> table);

FiberProfile is_two_to_one(const PolyFunction &f);

/// f is PN iff x -> f(x + a) - f(x) is a bijection for every a != 0.
bool is_pn(const PolyFunction &f);

/// An ordering a_1, ..., a_q of GF(q) with f(a_i) = f(a_{q+2-i}) for
/// i = 2, ..., (q+1)/2 and f(a_1) outside those values.
struct FPermutation {
    std::vector<FieldElement> order;
};

/// Throws EvenQ for even q and NotTwoToOne when f is not 2-to-1.
FPermutation build_f_permutation(const PolyFunction &f);

/// Direct check of the two f-permutation conditions.
bool is_f_permutation(const FPermutation &perm, const PolyFunction &f);

struct CatalogueEntry {
    PolyFunction f;
    /// "quadratic" or "shift" (user-supplied function plus a nonzero constant).
    std::string family;
    /// f(0) != 0 or f(x) != f(-x) for some x.
    bool outside_symmetric_class = false;
};

/// f(0) != 0 or f(x) != f(-x) for some x in GF(q).
bool outside_symmetric_class(const PolyFunction &f);

/// 2-to-1 PN functions over odd-characteristic GF(q): the quadratics
/// s x^2 + t x + w (s != 0), exhaustively for q <= 9 and on a fixed
/// deterministic sample otherwise, then each extra function together with
/// all of its nonzero shifts. Every entry passes is_two_to_one and is_pn;
/// extras that fail are rejected with NotTwoToOnePN.
std::vector<CatalogueEntry> catalogue_2to1_pn(const FieldRef &field, std::span<const PolyFunction> extra = {});

/// Closed-form number of 2-to-1 maps GF(q) -> GF(q).
BigInt count_two_to_one_formula(const FieldSpec &field);

/// Exhaustive count over all q^q maps; throws TooLarge for q > 5.
BigInt count_two_to_one_bruteforce(const FieldSpec &field);

}  // namespace povmforge
