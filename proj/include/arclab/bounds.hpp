#pragma once

#include "arclab/exact.hpp"

#include <cstdint>
#include <optional>

namespace arclab {

/// 2^(q + 2 q^(4/5 + 2δ)).
struct ArcCountBound {
    std::uint64_t q = 0;
    Rational delta = 0;
    TermSum exponent;
    /// floor of the value, when it can be certified (exponent below ~300).
    std::optional<BigInt> floor_value;
};

ArcCountBound arc_count_bound(std::uint64_t q, const Rational& delta);

/// binom(ceil((1 + 2γ) q), k) with γ = q^(2/5 - 3t/5 + δ) and k = q^t.
struct SizedArcsBound {
    std::uint64_t q = 0;
    std::uint64_t k = 0;
    Rational delta = 0;
    Term gamma;
    TermSum size;          // (1 + 2γ) q
    BigInt size_ceil = 0;
    BigInt value = 0;
    bool hypothesis = false;  // 2/3 + 2δ < t <= 1, i.e. q^(2/3+2δ) < k <= q
};

SizedArcsBound sized_arcs_bound(std::uint64_t q, std::uint64_t k, const Rational& delta);
/// Same with k = q^t; throws std::invalid_argument unless q^t is an integer.
SizedArcsBound sized_arcs_bound_t(std::uint64_t q, const Rational& t, const Rational& delta);

/// binom(q^2, k) e^(-c k^3 / q): the small-k curve, with the unknown
/// absolute constant set to c.
struct SmallKCurve {
    std::uint64_t q = 0;
    std::uint64_t k = 0;
    BigInt binom_q2_k = 0;
    double value = 0;
    bool in_range = false;    // k < q^(1/2)
};

SmallKCurve small_k_curve(std::uint64_t q, std::uint64_t k, double c = 1.0);

}  // namespace arclab
