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

#include "povmforge/finite_field.hpp"

#include <algorithm>
#include <limits>
#include <ostream>
#include <sstream>

#include "povmforge/error.hpp"

namespace povmforge {

namespace {

using Poly = std::vector<uint32_t>;

void trim(Poly &a) {
    while (!a.empty() && a.back() == 0) {
        a.pop_back();
    }
}

uint32_t inverse_mod_p(uint32_t a, uint32_t p) {
    // p is prime, so a^(p-2) is the inverse.
    uint64_t result = 1;
    uint64_t base = a % p;
    uint64_t e = p - 2;
    while (e > 0) {
        if (e & 1) {
            result = result * base % p;
        }
        base = base * base % p;
        e >>= 1;
    }
    return static_cast<uint32_t>(result);
}

/// Remainder of a modulo b over GF(p); b must be nonzero after trimming.
Poly poly_rem(Poly a, Poly b, uint32_t p) {
    trim(a);
    trim(b);
    const uint32_t lead_inv = inverse_mod_p(b.back(), p);
    while (a.size() >= b.size()) {
        const uint64_t factor = static_cast<uint64_t>(a.back()) * lead_inv % p;
        const size_t shift = a.size() - b.size();
        for (size_t i = 0; i < b.size(); ++i) {
            const uint64_t sub = factor * b[i] % p;
            a[shift + i] = static_cast<uint32_t>((a[shift + i] + p - sub) % p);
        }
        trim(a);
    }
    return a;
}

uint64_t checked_pow(uint64_t base, uint32_t exp) {
    uint64_t result = 1;
    for (uint32_t i = 0; i < exp; ++i) {
        if (result > std::numeric_limits<uint64_t>::max() / base) {
            throw PovmError(ErrorCode::kTooLarge, "field order overflows 64 bits");
        }
        result *= base;
    }
    return result;
}

Poly digits_of(uint64_t index, uint32_t p, uint32_t len) {
    Poly out(len, 0);
    for (uint32_t i = 0; i < len; ++i) {
        out[i] = static_cast<uint32_t>(index % p);
        index /= p;
    }
    return out;
}

}  // namespace

// ---------------------------------------------------------------------------
// Number theory helpers

bool is_prime(uint64_t n) {
    if (n < 2) {
        return false;
    }
    for (uint64_t d = 2; d * d <= n; ++d) {
        if (n % d == 0) {
            return false;
        }
    }
    return true;
}

std::vector<uint64_t> prime_factors(uint64_t n) {
    std::vector<uint64_t> out;
    for (uint64_t d = 2; d * d <= n; ++d) {
        if (n % d == 0) {
            out.push_back(d);
            while (n % d == 0) {
                n /= d;
            }
        }
    }
    if (n > 1) {
        out.push_back(n);
    }
    return out;
}

std::optional<std::pair<uint32_t, uint32_t>> prime_power_decomposition(uint64_t q) {
    if (q < 2) {
        return std::nullopt;
    }
    auto factors = prime_factors(q);
    if (factors.size() != 1) {
        return std::nullopt;
    }
    uint32_t k = 0;
    while (q > 1) {
        q /= factors[0];
        ++k;
    }
    return std::make_pair(static_cast<uint32_t>(factors[0]), k);
}

bool is_irreducible(std::span<const uint32_t> poly, uint32_t p) {
    Poly f(poly.begin(), poly.end());
    trim(f);
    if (f.size() < 2) {
        return false;
    }
    const size_t deg = f.size() - 1;
    if (deg == 1) {
        return true;
    }
    for (size_t d = 1; d <= deg / 2; ++d) {
        const uint64_t count = checked_pow(p, static_cast<uint32_t>(d));
        for (uint64_t idx = 0; idx < count; ++idx) {
            Poly g = digits_of(idx, p, static_cast<uint32_t>(d));
            g.push_back(1);
            if (poly_rem(f, g, p).empty()) {
                return false;
            }
        }
    }
    return true;
}

// ---------------------------------------------------------------------------
// FieldSpec

FieldSpec::FieldSpec(uint32_t p, uint32_t k, std::vector<uint32_t> modulus)
    : p_(p), k_(k), q_(checked_pow(p, k)), modulus_(std::move(modulus)) {
}

FieldRef FieldSpec::create(uint32_t p, uint32_t k, std::vector<uint32_t> modulus) {
    if (!is_prime(p)) {
        throw PovmError(ErrorCode::kNotPrime, "characteristic " + std::to_string(p) + " is not prime");
    }
    if (k == 0) {
        throw PovmError(ErrorCode::kInvalidArgument, "extension degree must be at least 1");
    }
    if (modulus.size() != static_cast<size_t>(k) + 1 || modulus.back() != 1) {
        throw PovmError(ErrorCode::kInvalidArgument, "modulus must be monic of degree k");
    }
    for (uint32_t c : modulus) {
        if (c >= p) {
            throw PovmError(ErrorCode::kInvalidArgument, "modulus coefficient out of range");
        }
    }
    if (!is_irreducible(modulus, p)) {
        throw PovmError(ErrorCode::kInvalidArgument, "modulus is reducible over GF(p)");
    }
    return FieldRef(new FieldSpec(p, k, std::move(modulus)));
}

std::vector<uint32_t> FieldSpec::reduce(std::vector<uint64_t> poly) const {
    // The modulus is monic, so each leading term is eliminated directly.
    for (size_t top = poly.size(); top-- > k_;) {
        const uint64_t c = poly[top] % p_;
        if (c == 0) {
            continue;
        }
        const size_t shift = top - k_;
        for (uint32_t i = 0; i < k_; ++i) {
            poly[shift + i] += (p_ - c) * modulus_[i];
        }
        poly[top] = 0;
    }
    std::vector<uint32_t> out(k_, 0);
    for (uint32_t i = 0; i < k_ && i < poly.size(); ++i) {
        out[i] = static_cast<uint32_t>(poly[i] % p_);
    }
    return out;
}

FieldElement FieldSpec::zero() const {
    return FieldElement(shared_from_this(), std::vector<uint32_t>(k_, 0));
}

FieldElement FieldSpec::one() const {
    std::vector<uint32_t> c(k_, 0);
    c[0] = 1;
    return FieldElement(shared_from_this(), std::move(c));
}

FieldElement FieldSpec::element(uint64_t index) const {
    if (index >= q_) {
        throw PovmError(ErrorCode::kInvalidArgument,
                        "element index " + std::to_string(index) + " out of range for " + describe());
    }
    return FieldElement(shared_from_this(), digits_of(index, p_, k_));
}

FieldElement FieldSpec::from_coeffs(std::vector<uint32_t> coeffs) const {
    if (coeffs.size() > k_) {
        throw PovmError(ErrorCode::kInvalidArgument, "too many coordinates for " + describe());
    }
    coeffs.resize(k_, 0);
    for (uint32_t c : coeffs) {
        if (c >= p_) {
            throw PovmError(ErrorCode::kInvalidArgument, "coordinate out of range for " + describe());
        }
    }
    return FieldElement(shared_from_this(), std::move(coeffs));
}

FieldElement FieldSpec::from_integer(int64_t value) const {
    int64_t r = value % static_cast<int64_t>(p_);
    if (r < 0) {
        r += p_;
    }
    std::vector<uint32_t> c(k_, 0);
    c[0] = static_cast<uint32_t>(r);
    return FieldElement(shared_from_this(), std::move(c));
}

FieldElement FieldSpec::primitive_root_class() const {
    std::vector<uint64_t> poly(2, 0);
    poly[1] = 1;
    return FieldElement(shared_from_this(), reduce(std::move(poly)));
}

std::vector<FieldElement> FieldSpec::elements() const {
    std::vector<FieldElement> out;
    out.reserve(q_);
    for (uint64_t i = 0; i < q_; ++i) {
        out.push_back(element(i));
    }
    return out;
}

std::vector<FieldElement> FieldSpec::nonzero_elements() const {
    std::vector<FieldElement> out;
    out.reserve(q_ - 1);
    for (uint64_t i = 1; i < q_; ++i) {
        out.push_back(element(i));
    }
    return out;
}

bool FieldSpec::same_as(const FieldSpec &other) const {
    return p_ == other.p_ && k_ == other.k_ && modulus_ == other.modulus_;
}

std::string FieldSpec::describe() const {
    std::ostringstream os;
    os << "GF(" << p_;
    if (k_ > 1) {
        os << "^" << k_;
    }
    os << ")";
    return os.str();
}

// ---------------------------------------------------------------------------
// FieldElement

FieldElement::FieldElement(FieldRef field, std::vector<uint32_t> coeffs)
    : field_(std::move(field)), coeffs_(std::move(coeffs)) {
}

void FieldElement::require_same_field(const FieldElement &other) const {
    if (!field_ || !other.field_) {
        throw PovmError(ErrorCode::kInvalidArgument, "operation on an uninitialised field element");
    }
    if (field_ != other.field_ && !field_->same_as(*other.field_)) {
        throw PovmError(ErrorCode::kFieldMismatch,
                        "elements of " + field_->describe() + " and " + other.field_->describe() + " mixed");
    }
}

uint64_t FieldElement::index() const {
    uint64_t idx = 0;
    const uint64_t p = field_->characteristic();
    for (size_t i = coeffs_.size(); i-- > 0;) {
        idx = idx * p + coeffs_[i];
    }
    return idx;
}

bool FieldElement::is_zero() const {
    return std::all_of(coeffs_.begin(), coeffs_.end(), [](uint32_t c) { return c == 0; });
}

bool FieldElement::is_one() const {
    if (coeffs_.empty() || coeffs_[0] != 1) {
        return false;
    }
    return std::all_of(coeffs_.begin() + 1, coeffs_.end(), [](uint32_t c) { return c == 0; });
}

FieldElement FieldElement::operator+(const FieldElement &other) const {
    require_same_field(other);
    const uint32_t p = field_->characteristic();
    std::vector<uint32_t> out(coeffs_.size());
    for (size_t i = 0; i < out.size(); ++i) {
        out[i] = (coeffs_[i] + other.coeffs_[i]) % p;
    }
    return FieldElement(field_, std::move(out));
}

FieldElement FieldElement::operator-(const FieldElement &other) const {
    require_same_field(other);
    const uint32_t p = field_->characteristic();
    std::vector<uint32_t> out(coeffs_.size());
    for (size_t i = 0; i < out.size(); ++i) {
        out[i] = (coeffs_[i] + p - other.coeffs_[i]) % p;
    }
    return FieldElement(field_, std::move(out));
}

FieldElement FieldElement::operator-() const {
    const uint32_t p = field_->characteristic();
    std::vector<uint32_t> out(coeffs_.size());
    for (size_t i = 0; i < out.size(); ++i) {
        out[i] = (p - coeffs_[i]) % p;
    }
    return FieldElement(field_, std::move(out));
}

FieldElement FieldElement::operator*(const FieldElement &other) const {
    require_same_field(other);
    const size_t k = coeffs_.size();
    const uint64_t p = field_->characteristic();
    std::vector<uint64_t> prod(2 * k - 1, 0);
    for (size_t i = 0; i < k; ++i) {
        if (coeffs_[i] == 0) {
            continue;
        }
        for (size_t j = 0; j < k; ++j) {
            prod[i + j] = (prod[i + j] + static_cast<uint64_t>(coeffs_[i]) * other.coeffs_[j]) % p;
        }
    }
    return FieldElement(field_, field_->reduce(std::move(prod)));
}

FieldElement FieldElement::operator/(const FieldElement &other) const {
    return *this * other.inverse();
}

FieldElement &FieldElement::operator+=(const FieldElement &other) {
    *this = *this + other;
    return *this;
}

FieldElement &FieldElement::operator*=(const FieldElement &other) {
    *this = *this * other;
    return *this;
}

FieldElement FieldElement::inverse() const {
    if (is_zero()) {
        throw PovmError(ErrorCode::kZeroInput, "zero has no multiplicative inverse");
    }
    return pow(field_->order() - 2);
}

FieldElement FieldElement::pow(uint64_t exponent) const {
    FieldElement result = field_->one();
    FieldElement base = *this;
    while (exponent > 0) {
        if (exponent & 1) {
            result = result * base;
        }
        exponent >>= 1;
        if (exponent > 0) {
            base = base * base;
        }
    }
    return result;
}

FieldElement FieldElement::scaled(uint64_t n) const {
    const uint64_t p = field_->characteristic();
    const uint64_t r = n % p;
    std::vector<uint32_t> out(coeffs_.size());
    for (size_t i = 0; i < out.size(); ++i) {
        out[i] = static_cast<uint32_t>(coeffs_[i] * r % p);
    }
    return FieldElement(field_, std::move(out));
}

bool FieldElement::operator==(const FieldElement &other) const {
    if (!field_ || !other.field_) {
        return field_ == other.field_;
    }
    if (field_ != other.field_ && !field_->same_as(*other.field_)) {
        return false;
    }
    return coeffs_ == other.coeffs_;
}

std::string FieldElement::to_string() const {
    if (!field_) {
        return "<invalid>";
    }
    if (coeffs_.size() == 1) {
        return std::to_string(coeffs_[0]);
    }
    std::ostringstream os;
    os << "[";
    for (size_t i = 0; i < coeffs_.size(); ++i) {
        os << (i ? "," : "") << coeffs_[i];
    }
    os << "]";
    return os.str();
}

std::ostream &operator<<(std::ostream &os, const FieldElement &x) {
    return os << x.to_string();
}

// ---------------------------------------------------------------------------
// Field construction and maps

FieldRef make_field(uint32_t p, uint32_t k) {
    if (!is_prime(p)) {
        throw PovmError(ErrorCode::kNotPrime, "characteristic " + std::to_string(p) + " is not prime");
    }
    if (k == 0) {
        throw PovmError(ErrorCode::kInvalidArgument, "extension degree must be at least 1");
    }
    const uint64_t candidates = checked_pow(p, k);
    for (uint64_t idx = 0; idx < candidates; ++idx) {
        Poly modulus = digits_of(idx, p, k);
        modulus.push_back(1);
        if (is_irreducible(modulus, p)) {
            return FieldSpec::create(p, k, std::move(modulus));
        }
    }
    throw PovmError(ErrorCode::kNoModulusFound,
                    "no irreducible polynomial of degree " + std::to_string(k) + " over GF(" + std::to_string(p) + ")");
}

uint32_t trace_to_prime(const FieldElement &x) {
    const auto &field = x.field();
    FieldElement term = x;
    FieldElement sum = x;
    for (uint32_t i = 1; i < field->degree(); ++i) {
        term = term.pow(field->characteristic());
        sum = sum + term;
    }
    // The trace lands in the prime subfield.
    for (size_t i = 1; i < sum.coeffs().size(); ++i) {
        if (sum.coeffs()[i] != 0) {
            throw PovmError(ErrorCode::kInvalidArgument, "trace left the prime subfield; field arithmetic is broken");
        }
    }
    return sum.coeffs()[0];
}

uint64_t multiplicative_order(const FieldElement &x) {
    if (x.is_zero()) {
        throw PovmError(ErrorCode::kZeroInput, "zero has no multiplicative order");
    }
    uint64_t order = x.field()->order() - 1;
    for (uint64_t r : prime_factors(order)) {
        while (order % r == 0 && x.pow(order / r).is_one()) {
            order /= r;
        }
    }
    return order;
}

FieldElement find_generator(const FieldRef &field) {
    const uint64_t group_order = field->order() - 1;
    const auto factors = prime_factors(group_order);
    for (uint64_t idx = 1; idx < field->order(); ++idx) {
        FieldElement g = field->element(idx);
        const bool generates = std::all_of(factors.begin(), factors.end(),
                                           [&](uint64_t r) { return !g.pow(group_order / r).is_one(); });
        if (generates) {
            return g;
        }
    }
    // GF(2) has the single nonzero element 1, which generates its trivial group.
    return field->one();
}

FieldElement TowerSpec::embed(const FieldElement &x) const {
    if (!x.field()->same_as(*base_)) {
        throw PovmError(ErrorCode::kFieldMismatch, "embedding expects an element of " + base_->describe());
    }
    return embedding_.at(x.index());
}

std::optional<FieldElement> TowerSpec::restrict_to_base(const FieldElement &x) const {
    auto it = restriction_.find(x.index());
    if (it == restriction_.end()) {
        return std::nullopt;
    }
    return base_->element(it->second);
}

TowerSpec make_tower(uint32_t p, uint32_t k) {
    TowerSpec tower;
    tower.base_ = make_field(p, k);
    tower.ext_ = make_field(p, 3 * k);

    // Root of the base modulus inside the extension.
    const auto base_mod = tower.base_->modulus();
    std::optional<FieldElement> root;
    for (uint64_t idx = 0; idx < tower.ext_->order() && !root; ++idx) {
        FieldElement candidate = tower.ext_->element(idx);
        FieldElement value = tower.ext_->zero();
        for (size_t i = base_mod.size(); i-- > 0;) {
            value = value * candidate + tower.ext_->from_integer(base_mod[i]);
        }
        if (value.is_zero()) {
            root = candidate;
        }
    }
    if (!root) {
        throw PovmError(ErrorCode::kNoModulusFound, "base modulus has no root in the cubic extension");
    }

    const uint64_t q = tower.base_->order();
    tower.embedding_.reserve(q);
    for (uint64_t idx = 0; idx < q; ++idx) {
        const FieldElement b = tower.base_->element(idx);
        FieldElement image = tower.ext_->zero();
        for (size_t i = b.coeffs().size(); i-- > 0;) {
            image = image * *root + tower.ext_->from_integer(b.coeffs()[i]);
        }
        tower.restriction_.emplace(image.index(), idx);
        tower.embedding_.push_back(std::move(image));
    }
    if (tower.restriction_.size() != q) {
        throw PovmError(ErrorCode::kInvalidArgument, "embedding of the base field is not injective");
    }
    tower.alpha_ = find_generator(tower.ext_);
    return tower;
}

FieldElement norm_to_base(const FieldElement &x, const TowerSpec &tower) {
    if (!x.field()->same_as(*tower.ext())) {
        throw PovmError(ErrorCode::kFieldMismatch, "norm expects an element of " + tower.ext()->describe());
    }
    if (x.is_zero()) {
        throw PovmError(ErrorCode::kZeroInput, "norm of zero is undefined on the multiplicative group");
    }
    const uint64_t q = tower.q();
    const FieldElement image = x.pow(q * q + q + 1);
    auto base = tower.restrict_to_base(image);
    if (!base) {
        throw PovmError(ErrorCode::kInvalidArgument, "norm value is not in the base field");
    }
    return *base;
}

std::vector<FieldElement> norm_one_subgroup(const TowerSpec &tower) {
    const uint64_t q = tower.q();
    const uint64_t n = q * q + q + 1;
    const FieldElement step = tower.alpha().pow(q - 1);
    std::vector<FieldElement> out;
    out.reserve(n);
    FieldElement current = step;
    for (uint64_t m = 1; m <= n; ++m) {
        out.push_back(current);
        current = current * step;
    }
    return out;
}

}  // namespace povmforge
