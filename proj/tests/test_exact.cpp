#include "doctest.h"

#include <cmath>
#include <stdexcept>

#include "arclab/exact.hpp"

using namespace arclab;

TEST_CASE("parse_rational accepts fractions, decimals and exponents") {
    CHECK(parse_rational("3") == Rational(3));
    CHECK(parse_rational("-1/4") == Rational(-1, 4));
    CHECK(parse_rational("0.3") == Rational(3, 10));
    CHECK(parse_rational("1e-2") == Rational(1, 100));
    CHECK(parse_rational("-.25") == Rational(-1, 4));
    CHECK_THROWS_AS(parse_rational("abc"), std::invalid_argument);
    CHECK_THROWS_AS(parse_rational("1/0"), std::invalid_argument);
    CHECK_THROWS_AS(parse_rational(""), std::invalid_argument);
}

TEST_CASE("floor_root is exact on perfect powers and their neighbours") {
    for (unsigned n = 1; n <= 7; ++n) {
        for (int b = 0; b < 40; ++b) {
            BigInt x = boost::multiprecision::pow(BigInt(b), n);
            CHECK(floor_root(x, n) == b);
            if (b > 1) CHECK(floor_root(x - 1, n) == b - 1);
            CHECK(floor_root(x + 1, n) == (n == 1 ? BigInt(x + 1) : BigInt(b == 0 ? 1 : b)));
        }
    }
}

TEST_CASE("binomial matches Pascal's rule") {
    for (std::uint64_t n = 1; n < 40; ++n)
        for (std::uint64_t k = 1; k < n; ++k) CHECK(binomial(n, k) == binomial(n - 1, k - 1) + binomial(n - 1, k));
    CHECK(binomial(5, 7) == 0);
    CHECK(binomial(100, 50) == BigInt("100891344545564193334812497256"));
}

TEST_CASE("Term canonical form folds perfect powers") {
    // 1024^(-1/5) = 1/4
    Term eps = Term::power(1024, Rational(-1, 5));
    CHECK(eps.is_rational());
    CHECK(eps.coefficient() == Rational(1, 4));

    Term r2 = Term::power(2, Rational(1, 2));
    Term r8 = Term::power(8, Rational(1, 2));
    CHECK_FALSE(r2.is_rational());
    Term prod = r2 * r8;  // sqrt(16)
    CHECK(prod.is_rational());
    CHECK(prod.coefficient() == 4);
    CHECK(r8 == Term(2) * r2);
    CHECK(Term::power(Rational(9, 4), Rational(1, 2)).coefficient() == Rational(3, 2));
    CHECK(Term::power(12, Rational(3, 2)).pow(Rational(2, 3)) == Term(12));
}

TEST_CASE("exact comparisons of radical sums") {
    Term r2 = Term::power(2, Rational(1, 2));
    Term r3 = Term::power(3, Rational(1, 2));
    CHECK(compare(TermSum(r2) + TermSum(r3), TermSum(Term(Rational(314, 100)))) == 1);   // 3.146...
    CHECK(compare(TermSum(r2) + TermSum(r3), TermSum(Term(Rational(315, 100)))) == -1);
    CHECK(compare(TermSum(r2 * r2), TermSum(Term(2))) == 0);
    CHECK(compare(TermSum(Term::power(8, Rational(1, 2))), TermSum(Term(2) * r2)) == 0);
}

TEST_CASE("floor and ceil of irrational terms") {
    Term r2 = Term::power(2, Rational(1, 2));
    CHECK(floor_of(TermSum(r2)) == 1);
    CHECK(ceil_of(TermSum(r2)) == 2);
    CHECK(floor_of(TermSum(-r2)) == -2);
    CHECK(ceil_of(TermSum(Term(1000) * r2)) == 1415);
    CHECK(ceil_of(TermSum(Term(Rational(7, 2)))) == 4);
    CHECK(floor_of(TermSum(Term(3))) == 3);
}

TEST_CASE("enclosures bracket the value") {
    Term t = Term(100) * Term::power(5, Rational(-27, 20));
    auto [lo, hi] = t.enclose(80);
    CHECK(lo <= hi);
    CHECK(to_double(lo) == doctest::Approx(100.0 * std::pow(5.0, -1.35)));
    CHECK(t.approx() == doctest::Approx(100.0 * std::pow(5.0, -1.35)));
}
