#include "doctest.h"

#include <stdexcept>

#include "arclab/field.hpp"

#include <array>

using namespace arclab;

namespace {

const std::array<std::uint32_t, 10> kSmallOrders = {2, 3, 4, 5, 7, 8, 9, 11, 13, 16};

}  // namespace

TEST_CASE("GF(3) residue arithmetic") {
    FieldSpec f = FieldSpec::build(3, 1);
    CHECK(f.add({2}, {2}) == FieldElement{1});
    CHECK(f.mul({2}, {2}) == FieldElement{1});
    CHECK(f.modulus().empty());
}

TEST_CASE("GF(5) inverse of 2 is 3") {
    FieldSpec f = FieldSpec::build(5, 1);
    CHECK(f.inv({2}) == FieldElement{3});
    CHECK_THROWS_AS(f.inv({0}), std::domain_error);
}

TEST_CASE("GF(4) against polynomial arithmetic mod x^2+x+1") {
    FieldSpec f = FieldSpec::build(2, 2, Polynomial{1, 1, 1});
    // oracle: (a0 + a1 x)(b0 + b1 x) with x^2 = x + 1 in characteristic 2
    for (std::uint32_t a = 0; a < 4; ++a) {
        for (std::uint32_t b = 0; b < 4; ++b) {
            unsigned a0 = a & 1, a1 = a >> 1, b0 = b & 1, b1 = b >> 1;
            unsigned c0 = (a0 * b0 + a1 * b1) & 1;
            unsigned c1 = (a0 * b1 + a1 * b0 + a1 * b1) & 1;
            CHECK(f.mul({a}, {b}).index == c0 + 2 * c1);
            CHECK(f.add({a}, {b}).index == (a ^ b));
        }
        CHECK(f.add({a}, {a}) == f.zero());
    }
    FieldElement g{2};  // class of x
    CHECK(f.mul(g, g) == f.add(g, f.one()));
}

TEST_CASE("GF(9) with x^2+1") {
    for (std::uint32_t x = 0; x < 3; ++x) CHECK((x * x + 1) % 3 != 0);
    CHECK(is_irreducible({1, 0, 1}, 3));
    CHECK(least_irreducible(3, 2) == Polynomial{1, 0, 1});
    FieldSpec f = FieldSpec::build(3, 2, Polynomial{1, 0, 1});
    for (std::uint32_t a = 0; a < 9; ++a)
        for (std::uint32_t b = 0; b < 9; ++b) CHECK(f.mul({a}, {b}) == f.mul({b}, {a}));
    FieldElement i{3};  // x, with x^2 = -1
    CHECK(f.mul(i, i) == f.neg(f.one()));
}

TEST_CASE("default moduli are the least irreducibles") {
    CHECK(least_irreducible(2, 2) == Polynomial{1, 1, 1});
    CHECK(least_irreducible(2, 3) == Polynomial{1, 1, 0, 1});
    CHECK(least_irreducible(2, 4) == Polynomial{1, 1, 0, 0, 1});
    CHECK(FieldSpec::of_order(16).modulus() == Polynomial{1, 1, 0, 0, 1});
}

TEST_CASE("construction errors") {
    CHECK_THROWS_AS(FieldSpec::build(4, 1), std::invalid_argument);
    CHECK_THROWS_AS(FieldSpec::build(3, 0), std::invalid_argument);
    CHECK_THROWS_AS(FieldSpec::build(2, 2, Polynomial{1, 0, 1}), std::invalid_argument);  // (x+1)^2
    CHECK_THROWS_AS(FieldSpec::build(3, 2, Polynomial{1, 1, 0, 1}), std::invalid_argument);
    CHECK_THROWS_AS(FieldSpec::of_order(99), std::invalid_argument);
    CHECK_THROWS_AS(FieldSpec::of_order(2048), std::invalid_argument);
    CHECK(prime_power(99) == std::nullopt);
    CHECK(prime_power(81) == std::make_pair(3u, 4u));
}

TEST_CASE("field axioms hold exhaustively for q <= 16") {
    for (std::uint32_t q : kSmallOrders) {
        CAPTURE(q);
        FieldSpec f = FieldSpec::of_order(q);
        bool ok = true;
        for (std::uint32_t a = 0; a < q && ok; ++a) {
            FieldElement ea{a};
            ok &= f.add(ea, f.zero()) == ea && f.mul(ea, f.one()) == ea;
            ok &= f.add(ea, f.neg(ea)) == f.zero();
            if (a) ok &= f.mul(ea, f.inv(ea)) == f.one() && f.pow(ea, q - 1) == f.one();
            for (std::uint32_t b = 0; b < q; ++b) {
                FieldElement eb{b};
                ok &= f.add(ea, eb) == f.add(eb, ea);
                // Frobenius is additive
                ok &= f.pow(f.add(ea, eb), f.p()) == f.add(f.pow(ea, f.p()), f.pow(eb, f.p()));
                for (std::uint32_t c = 0; c < q; ++c) {
                    FieldElement ec{c};
                    ok &= f.mul(ea, f.add(eb, ec)) == f.add(f.mul(ea, eb), f.mul(ea, ec));
                    ok &= f.mul(f.mul(ea, eb), ec) == f.mul(ea, f.mul(eb, ec));
                    ok &= f.add(f.add(ea, eb), ec) == f.add(ea, f.add(eb, ec));
                }
            }
        }
        CHECK(ok);

        // multiplicative group is cyclic: some element has order q - 1
        bool has_generator = false;
        for (std::uint32_t g = 1; g < q && !has_generator; ++g) {
            std::uint32_t order = 1;
            FieldElement x{g};
            while (x != f.one()) {
                x = f.mul(x, {g});
                ++order;
            }
            has_generator = order == q - 1;
        }
        CHECK(has_generator);
    }
}

TEST_CASE("prime field multiplication agrees with repeated addition") {
    for (std::uint32_t p : {2u, 3u, 5u, 7u, 11u, 13u}) {
        FieldSpec f = FieldSpec::build(p, 1);
        for (std::uint32_t a = 0; a < p; ++a) {
            FieldElement acc = f.zero();
            for (std::uint32_t b = 0; b < p; ++b) {
                CHECK(f.mul({a}, {b}) == acc);
                acc = f.add(acc, {a});
            }
        }
    }
}

TEST_CASE("describe records the modulus") {
    CHECK(FieldSpec::of_order(9).describe() == "p=3 r=2 modulus=1,0,1");
    CHECK(FieldSpec::of_order(7).describe() == "p=7 r=1");
}
