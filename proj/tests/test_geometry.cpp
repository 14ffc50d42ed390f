#include "doctest.h"

#include <stdexcept>

#include "arclab/geometry.hpp"
#include "arclab/io.hpp"
#include "arclab/stats.hpp"

#include <algorithm>
#include <random>
#include <set>
#include <sstream>

using namespace arclab;

TEST_CASE("plane sizes") {
    for (std::uint32_t q : {2u, 3u, 4u, 5u, 7u, 8u, 9u}) {
        CAPTURE(q);
        auto pl = Plane::of_order(q);
        CHECK(pl->num_lines() == q * q + q);
        for (LineId l = 0; l < pl->num_lines(); ++l) CHECK(pl->line_points(l).size() == q);
        for (PointId p = 0; p < pl->num_points(); ++p) {
            CHECK(pl->point_lines(p).size() == q + 1);
            // incidence consistency
            for (LineId l : pl->point_lines(p)) CHECK(pl->on_line(p, l));
        }
        std::size_t incidences = 0;
        for (LineId l = 0; l < pl->num_lines(); ++l)
            for (PointId p : pl->line_points(l)) {
                auto through = pl->point_lines(p);
                CHECK(std::find(through.begin(), through.end(), l) != through.end());
                ++incidences;
            }
        CHECK(incidences == std::size_t{q} * q * (q + 1));
    }
    auto p3 = Plane::of_order(3);
    CHECK(p3->num_lines() == 12);
    auto p4 = Plane::of_order(4);
    CHECK(p4->num_lines() == 20);
}

TEST_CASE("every pair of points of AG(2,5) lies on exactly one line") {
    auto pl = Plane::of_order(5);
    std::size_t pairs = 0;
    for (PointId a = 0; a < 25; ++a)
        for (PointId b = a + 1; b < 25; ++b) {
            int common = 0;
            for (LineId l = 0; l < pl->num_lines(); ++l) common += pl->on_line(a, l) && pl->on_line(b, l);
            CHECK(common == 1);
            CHECK(pl->line_through(a, b) == pl->line_through(b, a));
            ++pairs;
        }
    CHECK(pairs == 300);
}

TEST_CASE("line_through contains both points (q <= 8)") {
    for (std::uint32_t q : {2u, 3u, 4u, 5u, 7u, 8u}) {
        auto pl = Plane::of_order(q);
        bool ok = true;
        for (PointId a = 0; a < pl->num_points(); ++a)
            for (PointId b = a + 1; b < pl->num_points(); ++b) {
                LineId l = pl->line_through(a, b);
                ok &= pl->on_line(a, l) && pl->on_line(b, l);
            }
        CHECK(ok);
    }
}

TEST_CASE("parallel classes partition the plane") {
    for (std::uint32_t q : {3u, 4u, 5u, 9u}) {
        auto pl = Plane::of_order(q);
        for (std::uint32_t cls = 0; cls <= q; ++cls) {
            std::vector<int> cover(pl->num_points(), 0);
            int lines = 0;
            for (LineId l = 0; l < pl->num_lines(); ++l) {
                if (pl->parallel_class(l) != cls) continue;
                ++lines;
                for (PointId p : pl->line_points(l)) ++cover[p];
            }
            CHECK(lines == static_cast<int>(q));
            CHECK(std::all_of(cover.begin(), cover.end(), [](int c) { return c == 1; }));
        }
    }
}

TEST_CASE("collinear examples") {
    auto p3 = Plane::of_order(3);
    CHECK(p3->collinear(p3->point({0}, {0}).id, p3->point({1}, {1}).id, p3->point({2}, {2}).id));
    auto p5 = Plane::of_order(5);
    CHECK_FALSE(p5->collinear(p5->point({1}, {1}).id, p5->point({2}, {4}).id, p5->point({3}, {4}).id));
    CHECK_THROWS_AS(p5->collinear(3, 3, 4), std::invalid_argument);

    auto p4 = Plane::of_order(4);
    auto par = parabola(p4).ids();
    for (std::size_t i = 0; i < par.size(); ++i)
        for (std::size_t j = i + 1; j < par.size(); ++j)
            for (std::size_t k = j + 1; k < par.size(); ++k) CHECK_FALSE(p4->collinear(par[i], par[j], par[k]));
}

TEST_CASE("collinear agrees with the determinant test") {
    for (std::uint32_t q : {3u, 4u, 5u, 8u}) {
        auto pl = Plane::of_order(q);
        const std::uint32_t n = pl->num_points();
        bool ok = true;
        for (PointId a = 0; a < n; ++a)
            for (PointId b = a + 1; b < n; ++b)
                for (PointId c = b + 1; c < n; ++c)
                    ok &= pl->collinear(a, b, c) == pl->collinear_det(pl->point(a), pl->point(b), pl->point(c));
        CHECK(ok);
    }
}

TEST_CASE("collinearity is invariant under affine maps") {
    std::mt19937_64 rng(7);
    for (std::uint32_t q : {3u, 4u, 5u}) {
        auto pl = Plane::of_order(q);
        const FieldSpec& f = pl->field();
        const std::uint32_t n = pl->num_points();
        for (int trial = 0; trial < 10; ++trial) {
            FieldElement m00, m01, m10, m11;
            do {
                m00 = {static_cast<std::uint32_t>(rng() % q)};
                m01 = {static_cast<std::uint32_t>(rng() % q)};
                m10 = {static_cast<std::uint32_t>(rng() % q)};
                m11 = {static_cast<std::uint32_t>(rng() % q)};
            } while (f.sub(f.mul(m00, m11), f.mul(m01, m10)) == f.zero());
            FieldElement tx{static_cast<std::uint32_t>(rng() % q)}, ty{static_cast<std::uint32_t>(rng() % q)};
            auto map = [&](PointId id) {
                Point p = pl->point(id);
                FieldElement x = f.add(f.add(f.mul(m00, p.x), f.mul(m01, p.y)), tx);
                FieldElement y = f.add(f.add(f.mul(m10, p.x), f.mul(m11, p.y)), ty);
                return pl->point(x, y).id;
            };
            bool ok = true;
            for (PointId a = 0; a < n; ++a)
                for (PointId b = a + 1; b < n; ++b)
                    for (PointId c = b + 1; c < n; ++c) ok &= pl->collinear(a, b, c) == pl->collinear(map(a), map(b), map(c));
            CHECK(ok);
        }
    }
}

TEST_CASE("parabola") {
    auto p2 = Plane::of_order(2);
    auto par2 = parabola(p2);
    CHECK(par2.ids() == std::vector<PointId>{p2->point({0}, {0}).id, p2->point({1}, {1}).id});

    auto p5 = Plane::of_order(5);
    std::vector<PointId> expect;
    for (auto [x, y] : std::vector<std::pair<std::uint32_t, std::uint32_t>>{{0, 0}, {1, 1}, {2, 4}, {3, 4}, {4, 1}})
        expect.push_back(p5->point({x}, {y}).id);
    CHECK(parabola(p5).ids() == expect);

    auto p9 = Plane::of_order(9);
    auto par9 = parabola(p9);
    CHECK(par9.size() == 9);
    CHECK(t_count_brute(par9) == 0);
}

TEST_CASE("PointSet text and hex encodings round trip") {
    std::mt19937_64 rng(11);
    for (std::uint32_t q : {2u, 3u, 4u, 7u, 9u, 16u}) {
        auto pl = Plane::of_order(q);
        PointSet s(pl);
        for (PointId p = 0; p < pl->num_points(); ++p)
            if (rng() % 3 == 0) s.insert(p);
        for (bool hex : {false, true}) {
            std::stringstream ss;
            if (hex)
                write_point_set_hex(ss, s);
            else
                write_point_set(ss, s);
            PointSet back = read_point_set(ss);
            CHECK(back == s);
            CHECK(back.size() == s.size());
        }
    }
}

TEST_CASE("PointSet text format details") {
    auto p5 = Plane::of_order(5);
    std::stringstream ss;
    write_point_set(ss, parabola(p5));
    CHECK(ss.str() == "q=5 p=5 r=1\n0 0\n1 1\n2 4\n3 4\n4 1\n");

    std::stringstream hs;
    write_point_set_hex(hs, parabola(p5));
    // ids 0, 6, 14, 19, 21
    CHECK(hs.str() == "q=5 p=5 r=1\nhex=1404820\n");

    std::istringstream bad1("q=6 p=2 r=1\n");
    CHECK_THROWS_AS(read_point_set(bad1), std::invalid_argument);
    std::istringstream bad2("q=5 p=5 r=1\n5 0\n");
    CHECK_THROWS_AS(read_point_set(bad2), std::invalid_argument);
    std::istringstream bad3("q=5 p=5 r=1\nhex=ff\n");
    CHECK_THROWS_AS(read_point_set(bad3), std::invalid_argument);
    std::istringstream bad4("p=5 r=1\n");
    CHECK_THROWS_AS(read_point_set(bad4), std::invalid_argument);

    std::istringstream custom("q=4 p=2 r=2 modulus=1,1,1\n# comment\n1 2\n");
    CHECK(read_point_set(custom).size() == 1);
}
