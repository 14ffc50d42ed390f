#include "doctest.h"

#include "arclab/enumerator.hpp"
#include "arclab/randomexp.hpp"

#include <cmath>
#include <stdexcept>

using namespace arclab;

namespace {

void check_mean(std::uint32_t q, const Term& p, double p_value, std::uint64_t trials, std::uint64_t seed) {
    auto plane = Plane::of_order(q);
    const auto thr = inclusion_threshold(p);
    double sum = 0;
    for (std::uint64_t t = 0; t < trials; ++t) sum += static_cast<double>(sample_qp_threshold(plane, thr, seed, t).size());
    const double n = static_cast<double>(q) * q;
    const double mean = sum / static_cast<double>(trials);
    const double se = std::sqrt(n * p_value * (1 - p_value) / static_cast<double>(trials));
    CHECK(std::abs(mean - n * p_value) <= 5 * se);
}

}  // namespace

TEST_CASE("inclusion threshold") {
    CHECK(inclusion_threshold(Term(Rational(1, 4))) == (std::uint64_t{1} << 62));
    CHECK(inclusion_threshold(Term(Rational(1, 1048576))) == (std::uint64_t{1} << 44));
    // 4^(-1/2) = 1/2
    CHECK(inclusion_threshold(Term::power(4, Rational(-1, 2))) == (std::uint64_t{1} << 63));
    // 2^(-1/2) * 2^64 = 2^63.5: floor by integer square root of 2^127
    CHECK(BigInt(inclusion_threshold(Term::power(2, Rational(-1, 2)))) == floor_root(BigInt(1) << 127, 2));
    CHECK_THROWS_AS(inclusion_threshold(Term(1)), std::invalid_argument);
    CHECK_THROWS_AS(inclusion_threshold(Term(0)), std::invalid_argument);
}

TEST_CASE("sample_qp means") {
    check_mean(9, Term(Rational(1, 1048576)), std::ldexp(1.0, -20), 100000, 3);
    check_mean(4, Term(Rational(1, 2)), 0.5, 10000, 4);
}

TEST_CASE("sample_qp is reproducible") {
    auto p5 = Plane::of_order(5);
    auto s = sample_qp(p5, Term(Rational(1, 4)), 42, 0);
    const std::vector<PointId> frozen = {5, 9, 10, 11, 16, 17, 23};
    CHECK(s.ids() == frozen);
    CHECK(s == sample_qp(p5, Term(Rational(1, 4)), 42, 0));
    CHECK(!(s == sample_qp(p5, Term(Rational(1, 4)), 42, 1)));
}

TEST_CASE("growth catalog and tail threshold") {
    CHECK(Growth::parse("log").name() == "log");
    CHECK(Growth::parse("loglog").name() == "loglog");
    CHECK(Growth::parse("sqrt-log").name() == "sqrt-log");
    CHECK(Growth::parse("const:3/2").name() == "const:3/2");
    CHECK_THROWS_AS(Growth::parse("exp"), std::invalid_argument);
    CHECK_THROWS_AS(Growth::parse("const:0"), std::invalid_argument);

    // q = 16, p = 1/2: q p = 8 exactly
    const Term half = Term::power(16, Rational(-1, 4));
    CHECK(half == Term(Rational(1, 2)));
    CHECK(tail_threshold(16, half, Growth::parse("const:1")) == 8);
    CHECK(tail_threshold(16, half, Growth::parse("const:9/8")) == 9);
    // 8 ln 16 = 22.18, 8 sqrt(ln 16) = 13.32, 8 ln ln 16 = 8.16
    CHECK(tail_threshold(16, half, Growth::parse("log")) == 23);
    CHECK(tail_threshold(16, half, Growth::parse("sqrt-log")) == 14);
    CHECK(tail_threshold(16, half, Growth::parse("loglog")) == 9);
    // 9 * 9^(-1/4) = 3^(3/2) = 5.196
    CHECK(tail_threshold(9, Term::power(9, Rational(-1, 4)), Growth::parse("const:1")) == 6);
}

TEST_CASE("wilson interval") {
    auto [lo, hi] = wilson_interval(50, 100);
    CHECK(lo == doctest::Approx(0.4038).epsilon(1e-3));
    CHECK(hi == doctest::Approx(0.5962).epsilon(1e-3));
    auto [z0, z1] = wilson_interval(0, 1000);
    CHECK(z0 == 0);
    CHECK(z1 == doctest::Approx(3.8271 / 1003.8416).epsilon(1e-3));
    // doubling the trials at fixed frequency shrinks the width by about sqrt(2)
    auto [a0, a1] = wilson_interval(300, 1000);
    auto [b0, b1] = wilson_interval(600, 2000);
    CHECK((a1 - a0) / (b1 - b0) == doctest::Approx(std::sqrt(2.0)).epsilon(0.01));
}

TEST_CASE("tail_estimate") {
    ExperimentConfig c;
    c.q = 7;
    c.a = Rational(-1, 4);
    c.f = Growth::parse("const:1");
    c.trials = 400;
    c.seed = 11;
    auto r = tail_estimate(c);
    CHECK(r.records.size() == 400);
    CHECK(r.invariant_violations == 0);
    CHECK(r.max_arc_plane == 8);
    for (const auto& t : r.records) CHECK(t.arc <= std::min<std::uint32_t>(t.size, 8));
    CHECK(r.empirical_tail == Rational(r.hits, 400));
    CHECK(r.ci_low <= to_double(r.empirical_tail));
    CHECK(to_double(r.empirical_tail) <= r.ci_high);
    // the complementary regime: a(Q_p) >= q p happens often
    CHECK(r.hits > 200);

    // exact a(Q_p) against an independent recount on a few trials
    auto plane = Plane::of_order(7);
    for (std::uint64_t t = 0; t < 5; ++t) {
        auto s = sample_qp(plane, r.p, 11, t);
        CHECK(r.records[t].size == s.size());
        CHECK(r.records[t].arc == max_arc_in(s).size);
    }

    c.threads = 3;
    auto r3 = tail_estimate(c);
    REQUIRE(r3.records.size() == r.records.size());
    for (std::size_t i = 0; i < r.records.size(); ++i) {
        CHECK(r3.records[i].size == r.records[i].size);
        CHECK(r3.records[i].arc == r.records[i].arc);
    }
    CHECK(r3.hits == r.hits);
    CHECK(r3.bound_4e_over_f == r.bound_4e_over_f);

    c.family_size = BigInt(1000);
    c.trials = 10;
    CHECK(tail_estimate(c).family_bound.has_value());

    ExperimentConfig bad = c;
    bad.trials = 0;
    CHECK_THROWS_AS(tail_estimate(bad), std::invalid_argument);
    bad = c;
    bad.a = 0;
    CHECK_THROWS_AS(tail_estimate(bad), std::invalid_argument);
    bad = c;
    bad.q = 16;
    CHECK_THROWS_AS(tail_estimate(bad), std::invalid_argument);
    bad.max_q = 16;
    bad.q = 17;
    CHECK_THROWS_AS(tail_estimate(bad), std::invalid_argument);
}
