#include "doctest.h"

#include <cmath>
#include <stdexcept>

#include "arclab/rng.hpp"
#include "arclab/stats.hpp"

using namespace arclab;

namespace {

// Histogram identities and weight sums for one set; returns false on any mismatch.
bool identities_hold(const PointSet& s) {
    const std::uint64_t q = s.q();
    auto h = richness_histogram(s);
    if (h.lines() != q * q + q) return false;
    if (h.incidences() != s.size() * (q + 1)) return false;
    const std::uint64_t t = t_count(s);
    std::uint64_t sum3 = 0;
    for (PointId v : s.ids()) {
        sum3 += weight_times3(s, v);
        if (weight_mass(s, v) != s.size() - 1) return false;
    }
    if (sum3 != 3 * t) return false;
    const std::uint32_t d2 = delta2(s);
    if (d2 > q - 2) return false;
    if (d2 > 0 && std::uint64_t{d2} * d2 * d2 > 6 * t) return false;
    return true;
}

}  // namespace

TEST_CASE("t_count examples") {
    auto p3 = Plane::of_order(3);
    CHECK(t_count(PointSet::full(p3)) == 12);
    for (std::uint32_t q : {2u, 3u, 4u, 5u, 7u, 8u, 9u}) CHECK(t_count(parabola(Plane::of_order(q))) == 0);

    PointSet minus_line = PointSet::full(p3) - line_set(p3, 0);
    CHECK(minus_line.size() == 6);
    CHECK(t_count_brute(minus_line) == 2);
    CHECK(t_count(minus_line) == 2);
}

TEST_CASE("t_count_brute examples and guard") {
    auto p5 = Plane::of_order(5);
    CHECK(t_count_brute(PointSet(p5)) == 0);
    CHECK(t_count_brute(PointSet::from_ids(p5, std::vector<PointId>{1, 2})) == 0);
    CHECK(t_count_brute(PointSet::full(p5)) == 300);

    auto p7 = Plane::of_order(7);
    Rng rng(2024, 0);
    for (int i = 0; i < 50; ++i) {
        PointSet s = random_subset_of_size(p7, 12, rng);
        CHECK(t_count(s) == t_count_brute(s));
    }
    auto p101 = Plane::of_order(101);
    CHECK_THROWS_AS(t_count_brute(PointSet::full(p101)), std::length_error);
}

TEST_CASE("delta2 examples") {
    auto p5 = Plane::of_order(5);
    CHECK(delta2(PointSet::full(p5)) == 3);
    CHECK(delta2(parabola(p5)) == 0);

    auto p7 = Plane::of_order(7);
    PointSet line = line_set(p7, 10);
    CHECK(delta2(line) == 5);
    CHECK(t_count(line) == 35);
    // 5 <= 2 * 35^(1/3)  <=>  125 <= 8 * 35
    CHECK(125 <= 8 * 35);
}

TEST_CASE("avg_degree examples") {
    CHECK(avg_degree(PointSet::full(Plane::of_order(3))) == 4);
    CHECK(avg_degree(parabola(Plane::of_order(7))) == 0);
    Rational d5 = avg_degree(PointSet::full(Plane::of_order(5)));
    CHECK(d5 == 36);
    // d >= 3 T^(2/3) / (4 q^(1/3))  <=>  (4 d / 3)^3 q >= T^2
    Rational lhs = pow_rational(d5 * 4 / 3, 3) * 5;
    CHECK(lhs >= Rational(300 * 300));
    CHECK_THROWS_AS(avg_degree(PointSet(Plane::of_order(3))), std::domain_error);
}

TEST_CASE("weight examples") {
    auto p3 = Plane::of_order(3);
    PointSet full = PointSet::full(p3);
    for (PointId v = 0; v < 9; ++v) CHECK(weight(full, v) == Rational(4, 3));

    auto p5 = Plane::of_order(5);
    PointSet s = line_set(p5, 0);  // y = 0
    PointId off = p5->point({2}, {3}).id;
    s.insert(off);
    CHECK(weight(s, off) == 0);
    Rational sum = 0;
    for (PointId v : s.ids()) {
        if (v == off) continue;
        CHECK(weight(s, v) == 2);
        sum += weight(s, v);
    }
    CHECK(sum == 10);
    CHECK(t_count(s) == 10);

    PointSet par = parabola(p5);
    CHECK(weight(par, par.ids()[0]) == 0);
    CHECK_THROWS_AS(weight(par, p5->point({0}, {1}).id), std::invalid_argument);
}

TEST_CASE("size_bound_check") {
    auto p8 = Plane::of_order(8);
    auto arc = size_bound_check(parabola(p8));
    CHECK(arc.hypothesis_ok);
    CHECK(arc.holds);
    CHECK(arc.branch == "2q");

    auto full = size_bound_check(PointSet::full(p8));
    CHECK(t_count(PointSet::full(p8)) == 4032);
    CHECK(full.holds);
    CHECK(full.branch == "cubic");
    CHECK(full.bound == doctest::Approx(4.0 * 2.0 * std::cbrt(4032.0)));

    CHECK_FALSE(size_bound_check(PointSet::full(Plane::of_order(5))).hypothesis_ok);

    Rng rng(8, 1);
    bool all = true;
    for (int i = 0; i < 1000000; ++i) all &= size_bound_check(random_subset(p8, rng)).holds;
    CHECK(all);
}

TEST_CASE("line-wise count equals brute force on every subset of F_3^2 and F_4^2") {
    for (std::uint32_t q : {3u, 4u}) {
        auto pl = Plane::of_order(q);
        const std::uint32_t n = q * q;
        bool ok = true;
        for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
            PointSet s = PointSet::from_words(pl, std::vector<std::uint64_t>{mask});
            ok &= t_count(s) == t_count_brute(s);
            ok &= identities_hold(s);
        }
        CHECK(ok);
    }
}

TEST_CASE("line-wise count equals brute force on seeded random subsets") {
    for (std::uint32_t q : {5u, 7u, 8u, 9u}) {
        CAPTURE(q);
        auto pl = Plane::of_order(q);
        Rng rng(100 + q, 0);
        bool ok = true;
        const int trials = 100000;
        for (int i = 0; i < trials; ++i) {
            PointSet s = random_subset(pl, rng);
            ok &= t_count(s) == t_count_brute(s);
            ok &= identities_hold(s);
        }
        CHECK(ok);
    }
}

TEST_CASE("RichnessTracker follows insertions and removals") {
    auto pl = Plane::of_order(7);
    Rng rng(5, 5);
    RichnessTracker tr(*pl);
    PointSet s(pl);
    for (int step = 0; step < 2000; ++step) {
        PointId p = static_cast<PointId>(rng.below(49));
        if (s.contains(p)) {
            s.erase(p);
            tr.erase(p);
        } else {
            s.insert(p);
            tr.insert(p);
        }
        if (step % 97 == 0) {
            CHECK(tr.T() == t_count(s));
            if (s.contains(p)) CHECK(tr.degree(p) == weight_times3(s, p));
        }
    }
}

TEST_CASE("triple_stats bundles the statistics") {
    auto pl = Plane::of_order(5);
    auto st = triple_stats(PointSet::full(pl));
    CHECK(st.size == 25);
    CHECK(st.T == 300);
    CHECK(st.delta2 == 3);
    CHECK(st.avg_degree == 36);
    CHECK(st.histogram.counts.at(5) == 30);
}
