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
#include <iosfwd>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

namespace povmforge {

class FieldSpec;
using FieldRef = std::shared_ptr<const FieldSpec>;

/// An element of GF(p^k) in polynomial-basis coordinates.
///
/// Coefficient i multiplies x^i; every coefficient lies in [0, p). Elements
/// carry a shared reference to their field, and binary operations between
/// elements of different fields throw FieldMismatch.
class FieldElement {
   public:
    FieldElement() = default;

    const FieldRef &field() const {
        return field_;
    }
    std::span<const uint32_t> coeffs() const {
        return coeffs_;
    }

    /// Position in the field's enumeration order: sum of c_i * p^i.
    uint64_t index() const;

    bool is_zero() const;
    bool is_one() const;
    bool valid() const {
        return field_ != nullptr;
    }

    FieldElement operator+(const FieldElement &other) const;
    FieldElement operator-(const FieldElement &other) const;
    FieldElement operator*(const FieldElement &other) const;
    FieldElement operator/(const FieldElement &other) const;
    FieldElement operator-() const;

    FieldElement &operator+=(const FieldElement &other);
    FieldElement &operator*=(const FieldElement &other);

    /// Throws ZeroInput for the zero element.
    FieldElement inverse() const;
    FieldElement pow(uint64_t exponent) const;

    /// Multiplication by an integer (repeated addition).
    FieldElement scaled(uint64_t n) const;

    bool operator==(const FieldElement &other) const;
    bool operator!=(const FieldElement &other) const {
        return !(*this == other);
    }

    std::string to_string() const;

   private:
    friend class FieldSpec;
    FieldElement(FieldRef field, std::vector<uint32_t> coeffs);

    void require_same_field(const FieldElement &other) const;

    FieldRef field_;
    std::vector<uint32_t> coeffs_;
};

std::ostream &operator<<(std::ostream &os, const FieldElement &x);

/// GF(p^k) presented as GF(p)[x] / (modulus).
///
/// Immutable after construction and always held by shared pointer so that
/// elements can refer back to it.
class FieldSpec : public std::enable_shared_from_this<FieldSpec> {
   public:
    /// Validates primality of p and irreducibility of the monic modulus
    /// (coefficients constant-first, length k + 1).
    static FieldRef create(uint32_t p, uint32_t k, std::vector<uint32_t> modulus);

    uint32_t characteristic() const {
        return p_;
    }
    uint32_t degree() const {
        return k_;
    }
    uint64_t order() const {
        return q_;
    }
    std::span<const uint32_t> modulus() const {
        return modulus_;
    }

    FieldElement zero() const;
    FieldElement one() const;
    /// Element with the given enumeration index (constant coefficient fastest).
    FieldElement element(uint64_t index) const;
    FieldElement from_coeffs(std::vector<uint32_t> coeffs) const;
    /// Image of an integer in the prime subfield.
    FieldElement from_integer(int64_t value) const;
    /// The residue class of x itself.
    FieldElement primitive_root_class() const;
    std::vector<FieldElement> elements() const;
    std::vector<FieldElement> nonzero_elements() const;

    /// Structural equality: same p, k and modulus.
    bool same_as(const FieldSpec &other) const;

    std::string describe() const;

    /// Reduces a full-length product into the residue coordinates.
    std::vector<uint32_t> reduce(std::vector<uint64_t> poly) const;

   private:
    FieldSpec(uint32_t p, uint32_t k, std::vector<uint32_t> modulus);

    uint32_t p_;
    uint32_t k_;
    uint64_t q_;
    std::vector<uint32_t> modulus_;
};

bool is_prime(uint64_t n);

/// Distinct prime factors in ascending order, by trial division.
std::vector<uint64_t> prime_factors(uint64_t n);

/// Decomposes a prime power q = p^k; empty if q is not a prime power.
std::optional<std::pair<uint32_t, uint32_t>> prime_power_decomposition(uint64_t q);

/// Irreducibility of a monic polynomial over GF(p) (coefficients constant-first)
/// by trial division with every monic polynomial of degree <= deg/2.
bool is_irreducible(std::span<const uint32_t> poly, uint32_t p);

/// GF(p^k) with the least monic irreducible modulus in enumeration order.
/// Throws NotPrime for composite p and InvalidArgument for k = 0.
FieldRef make_field(uint32_t p, uint32_t k);

/// Absolute trace tr(x) = x + x^p + ... + x^(p^(k-1)) as a residue mod p.
uint32_t trace_to_prime(const FieldElement &x);

/// Multiplicative order of a nonzero element.
uint64_t multiplicative_order(const FieldElement &x);

/// Enumeration-least generator of the multiplicative group.
FieldElement find_generator(const FieldRef &field);

/// GF(q^3) over GF(q), both presented over the prime field, plus the
/// embedding of GF(q) and a fixed generator alpha of GF(q^3)*.
class TowerSpec {
   public:
    const FieldRef &base() const {
        return base_;
    }
    const FieldRef &ext() const {
        return ext_;
    }
    const FieldElement &alpha() const {
        return alpha_;
    }
    /// q = |base|.
    uint64_t q() const {
        return base_->order();
    }

    FieldElement embed(const FieldElement &x) const;
    /// Inverse of the embedding; nullopt if x is not in the image of GF(q).
    std::optional<FieldElement> restrict_to_base(const FieldElement &x) const;

   private:
    friend TowerSpec make_tower(uint32_t p, uint32_t k);

    FieldRef base_;
    FieldRef ext_;
    std::vector<FieldElement> embedding_;
    std::unordered_map<uint64_t, uint64_t> restriction_;
    FieldElement alpha_;
};

/// Builds GF(p^k) and GF(p^(3k)) with deterministic moduli; the embedding
/// sends x to the enumeration-least root of the base modulus in GF(p^(3k)).
TowerSpec make_tower(uint32_t p, uint32_t k);

/// Nr(x) = x^(q^2 + q + 1), returned as an element of GF(q). Throws ZeroInput.
FieldElement norm_to_base(const FieldElement &x, const TowerSpec &tower);

/// alpha^(m(q-1)) for m = 1, ..., q^2 + q + 1 (the last entry is 1).
std::vector<FieldElement> norm_one_subgroup(const TowerSpec &tower);

}  // namespace povmforge
