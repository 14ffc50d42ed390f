#include "arclab/bounds.hpp"

#include "arclab/containers.hpp"

#include <boost/multiprecision/cpp_bin_float.hpp>

#include <cmath>
#include <stdexcept>

namespace arclab {

namespace mp = boost::multiprecision;
using Float = mp::cpp_bin_float_100;

namespace {

Float to_float(const Rational& r) { return Float(mp::numerator(r)) / Float(mp::denominator(r)); }

}  // namespace

ArcCountBound arc_count_bound(std::uint64_t q, const Rational& delta) {
    ArcCountBound b;
    b.q = q;
    b.delta = delta;
    const Rational qr{BigInt(q)};
    b.exponent = TermSum(Term(qr)) + TermSum(Term(2) * Term::power(qr, Rational(4, 5) + 2 * delta));
    auto [lo, hi] = b.exponent.enclose(256);
    if (hi < 300) {
        const Float slack("1e-90");
        const Float v_lo = mp::exp2(to_float(lo)) * (1 - slack);
        const Float v_hi = mp::exp2(to_float(hi)) * (1 + slack);
        const BigInt f_lo = static_cast<BigInt>(mp::floor(v_lo));
        const BigInt f_hi = static_cast<BigInt>(mp::floor(v_hi));
        if (f_lo == f_hi) b.floor_value = f_lo;
    }
    return b;
}

SizedArcsBound sized_arcs_bound(std::uint64_t q, std::uint64_t k, const Rational& delta) {
    SizedArcsBound b;
    b.q = q;
    b.k = k;
    b.delta = delta;
    b.gamma = gamma_for_arc_size(q, k, delta);
    const Rational qr{BigInt(q)};
    b.size = TermSum(Term(qr)) + TermSum(Term(2 * qr) * b.gamma);
    b.size_ceil = ceil_of(b.size);
    b.value = binomial(b.size_ceil, k);
    const Term lower = Term::power(qr, Rational(2, 3) + 2 * delta);
    b.hypothesis = less(TermSum(lower), TermSum(Term(Rational(BigInt(k))))) && k <= q;
    return b;
}

SizedArcsBound sized_arcs_bound_t(std::uint64_t q, const Rational& t, const Rational& delta) {
    const Term k = Term::power(Rational(BigInt(q)), t);
    if (!k.is_rational() || mp::denominator(k.coefficient()) != 1)
        throw std::invalid_argument("sized_arcs_bound_t: q^t is not an integer");
    SizedArcsBound b = sized_arcs_bound(q, static_cast<std::uint64_t>(mp::numerator(k.coefficient())), delta);
    return b;
}

SmallKCurve small_k_curve(std::uint64_t q, std::uint64_t k, double c) {
    SmallKCurve s;
    s.q = q;
    s.k = k;
    s.binom_q2_k = binomial(q * q, k);
    const double kd = static_cast<double>(k);
    s.value = static_cast<double>(s.binom_q2_k) * std::exp(-c * kd * kd * kd / static_cast<double>(q));
    s.in_range = k * k < q;
    return s;
}

}  // namespace arclab
