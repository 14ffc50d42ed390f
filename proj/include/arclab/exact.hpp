#pragma once

// Exact arithmetic helpers: big integers, rationals, and "radical terms"
// c * prod p_i^(e_i) with rational exponents, which is enough to represent
// every parameter of the form K * q^(a + b*delta) exactly.

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace arclab {

using BigInt = boost::multiprecision::number<boost::multiprecision::cpp_int_backend<>, boost::multiprecision::et_off>;
using Rational = boost::multiprecision::number<
    boost::multiprecision::rational_adaptor<boost::multiprecision::cpp_int_backend<>>, boost::multiprecision::et_off>;

/// Parses "3", "-1/4", "0.3", "1e-2" into an exact rational.
Rational parse_rational(const std::string& text);

std::string to_string(const BigInt& v);
std::string to_string(const Rational& v);
double to_double(const Rational& v);

BigInt binomial(std::uint64_t n, std::uint64_t k);
BigInt binomial(const BigInt& n, std::uint64_t k);

BigInt floor_of(const Rational& v);
BigInt ceil_of(const Rational& v);

/// floor(x^(1/n)) for x >= 0, n >= 1.
BigInt floor_root(const BigInt& x, unsigned n);

/// Integer power of a rational (negative exponents allowed for nonzero bases).
Rational pow_rational(const Rational& base, long exponent);

/// A positive-or-signed real of the form coeff * prod_p p^(e_p), p prime,
/// with every e_p a rational strictly between 0 and 1 (integer parts are
/// folded into coeff). The representation is canonical, so equality and
/// rationality tests are exact.
class Term {
public:
    Term() = default;
    Term(const Rational& value);  // NOLINT(google-explicit-constructor)
    Term(long value) : Term(Rational(value)) {}  // NOLINT

    /// base^exponent for a positive rational base.
    static Term power(const Rational& base, const Rational& exponent);

    const Rational& coefficient() const { return coeff_; }
    const std::map<std::uint64_t, Rational>& radicals() const { return radicals_; }

    bool is_rational() const { return radicals_.empty(); }
    bool is_zero() const { return coeff_ == 0; }
    int sign() const;

    Term operator*(const Term& o) const;
    Term operator/(const Term& o) const;
    Term operator-() const;
    Term& operator*=(const Term& o) { return *this = *this * o; }

    /// this^exponent; requires a positive value unless exponent is an integer.
    Term pow(const Rational& exponent) const;

    /// Certified enclosure lo <= value <= hi with hi - lo <= |coeff| * 2^-bits-ish.
    std::pair<Rational, Rational> enclose(unsigned bits) const;

    double approx() const;

    /// Human readable form, e.g. "100*2^(1/2)*3^(7/10)".
    std::string str() const;

    bool same_radical(const Term& o) const { return radicals_ == o.radicals_; }

    friend bool operator==(const Term& a, const Term& b) {
        return a.coeff_ == b.coeff_ && a.radicals_ == b.radicals_;
    }

private:
    void normalize();

    Rational coeff_{0};
    std::map<std::uint64_t, Rational> radicals_;
};

/// A finite sum of terms with like radicals merged.
class TermSum {
public:
    TermSum() = default;
    TermSum(const Term& t) { add(t); }  // NOLINT(google-explicit-constructor)

    TermSum& add(const Term& t);
    TermSum& sub(const Term& t) { return add(-t); }
    TermSum operator+(const TermSum& o) const;
    TermSum operator-(const TermSum& o) const;
    TermSum operator*(const Term& t) const;

    const std::vector<Term>& terms() const { return terms_; }
    bool is_rational() const;
    std::pair<Rational, Rational> enclose(unsigned bits) const;
    double approx() const;
    std::string str() const;

private:
    std::vector<Term> terms_;
};

/// Exact three-way comparison (-1, 0, 1). Distinct canonical radicals are
/// linearly independent over Q, so refinement always terminates.
int compare(const TermSum& a, const TermSum& b);

inline bool less_equal(const TermSum& a, const TermSum& b) { return compare(a, b) <= 0; }
inline bool less(const TermSum& a, const TermSum& b) { return compare(a, b) < 0; }

BigInt floor_of(const TermSum& v);
BigInt ceil_of(const TermSum& v);

/// Decimal rendering with the given number of significant digits.
std::string to_decimal(const TermSum& v, int digits = 12);

}  // namespace arclab
