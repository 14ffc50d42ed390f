#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace arclab {

/// An element of GF(p^r) by canonical index: the residue for r = 1,
/// otherwise the base-p digit vector of the polynomial representative
/// (coefficient of x^i is digit i).
struct FieldElement {
    std::uint32_t index = 0;

    friend constexpr bool operator==(FieldElement a, FieldElement b) { return a.index == b.index; }
    friend constexpr auto operator<=>(FieldElement a, FieldElement b) { return a.index <=> b.index; }
};

bool is_prime(std::uint64_t n);

/// Returns (p, r) with q = p^r, or nullopt if q is not a prime power.
std::optional<std::pair<std::uint32_t, std::uint32_t>> prime_power(std::uint64_t q);

/// Coefficients low-to-high; a degree-r modulus has r + 1 entries.
using Polynomial = std::vector<std::uint32_t>;

bool is_irreducible(const Polynomial& poly, std::uint32_t p);

/// Lexicographically least monic irreducible polynomial of degree r over
/// GF(p): candidates are ordered by (c_{r-1}, ..., c_0).
Polynomial least_irreducible(std::uint32_t p, std::uint32_t r);

/// GF(p^r) with dense operation tables. Immutable after construction.
class FieldSpec {
public:
    static constexpr std::uint32_t kMaxOrder = 1024;

    /// Throws std::invalid_argument on a non-prime p, r = 0, an oversized
    /// field, or a modulus that is reducible or of the wrong degree.
    static FieldSpec build(std::uint32_t p, std::uint32_t r, std::optional<Polynomial> modulus = std::nullopt);
    static FieldSpec of_order(std::uint64_t q);

    std::uint32_t p() const { return p_; }
    std::uint32_t r() const { return r_; }
    std::uint32_t q() const { return q_; }
    /// Empty for prime fields.
    const Polynomial& modulus() const { return modulus_; }

    FieldElement zero() const { return {0}; }
    FieldElement one() const { return {1}; }
    FieldElement element(std::uint32_t index) const;

    FieldElement add(FieldElement a, FieldElement b) const { return {add_[a.index * q_ + b.index]}; }
    FieldElement mul(FieldElement a, FieldElement b) const { return {mul_[a.index * q_ + b.index]}; }
    FieldElement neg(FieldElement a) const { return {neg_[a.index]}; }
    FieldElement sub(FieldElement a, FieldElement b) const { return add(a, neg(b)); }
    /// Throws std::domain_error for a = 0.
    FieldElement inv(FieldElement a) const;
    FieldElement pow(FieldElement a, std::uint64_t e) const;

    /// "p=3 r=2 modulus=1,0,1"
    std::string describe() const;
    std::string modulus_string() const;

    bool operator==(const FieldSpec& o) const { return p_ == o.p_ && r_ == o.r_ && modulus_ == o.modulus_; }

private:
    FieldSpec() = default;

    std::uint32_t p_ = 0, r_ = 0, q_ = 0;
    Polynomial modulus_;
    std::vector<std::uint16_t> add_, mul_, neg_, inv_;
};

}  // namespace arclab
