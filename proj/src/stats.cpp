#include "arclab/stats.hpp"

#include <cmath>
#include <stdexcept>

namespace arclab {

std::uint64_t RichnessHistogram::lines() const {
    std::uint64_t n = 0;
    for (auto [r, c] : counts) n += c;
    return n;
}

std::uint64_t RichnessHistogram::incidences() const {
    std::uint64_t n = 0;
    for (auto [r, c] : counts) n += std::uint64_t{r} * c;
    return n;
}

RichnessHistogram richness_histogram(const PointSet& set) {
    RichnessHistogram h;
    const Plane& pl = set.plane();
    for (LineId l = 0; l < pl.num_lines(); ++l) ++h.counts[set.richness(l)];
    return h;
}

std::uint64_t t_count(const Plane& plane, std::span<const std::uint64_t> words) {
    std::uint64_t t = 0;
    for (LineId l = 0; l < plane.num_lines(); ++l) t += choose3(popcount_and(words, plane.line_mask(l)));
    return t;
}

std::uint64_t t_count(const PointSet& set) { return t_count(set.plane(), set.words()); }

std::uint64_t t_count_brute(const PointSet& set) {
    if (set.size() > kBruteLimit)
        throw std::length_error("t_count_brute: |P| = " + std::to_string(set.size()) + " exceeds " + std::to_string(kBruteLimit));
    const Plane& pl = set.plane();
    std::vector<Point> pts;
    for (PointId id : set.ids()) pts.push_back(pl.point(id));
    std::uint64_t t = 0;
    for (std::size_t i = 0; i < pts.size(); ++i)
        for (std::size_t j = i + 1; j < pts.size(); ++j)
            for (std::size_t k = j + 1; k < pts.size(); ++k)
                if (pl.collinear_det(pts[i], pts[j], pts[k])) ++t;
    return t;
}

std::uint32_t delta2(const PointSet& set) {
    std::uint32_t best = 0;
    const Plane& pl = set.plane();
    for (LineId l = 0; l < pl.num_lines(); ++l) best = std::max(best, set.richness(l));
    return best > 2 ? best - 2 : 0;
}

Rational avg_degree(const PointSet& set) {
    if (set.empty()) throw std::domain_error("avg_degree of the empty set");
    return Rational(3 * t_count(set), set.size());
}

std::uint64_t weight_times3(const PointSet& set, PointId v) {
    if (!set.contains(v)) throw std::invalid_argument("weight: point " + std::to_string(v) + " is not in P");
    std::uint64_t sum = 0;
    for (LineId l : set.plane().point_lines(v)) sum += choose2(set.richness(l) - 1);
    return sum;
}

Rational weight(const PointSet& set, PointId v) { return Rational(weight_times3(set, v), 3); }

std::uint64_t weight_mass(const PointSet& set, PointId v) {
    if (!set.contains(v)) throw std::invalid_argument("weight: point " + std::to_string(v) + " is not in P");
    std::uint64_t sum = 0;
    for (LineId l : set.plane().point_lines(v)) sum += set.richness(l) - 1;
    return sum;
}

TripleStats triple_stats(const PointSet& set) {
    TripleStats s;
    s.size = set.size();
    s.histogram = richness_histogram(set);
    std::uint32_t max_rich = 0;
    for (auto [r, c] : s.histogram.counts) {
        s.T += choose3(r) * c;
        if (c) max_rich = std::max(max_rich, r);
    }
    s.delta2 = max_rich > 2 ? max_rich - 2 : 0;
    if (s.size) s.avg_degree = Rational(3 * s.T, s.size);
    return s;
}

SizeBoundReport size_bound_check(const PointSet& set) {
    SizeBoundReport rep;
    const std::uint64_t q = set.q();
    const std::uint64_t n = set.size();
    const std::uint64_t t = t_count(set);
    rep.hypothesis_ok = q >= 8;
    const double cubic = 4.0 * std::cbrt(static_cast<double>(q)) * std::cbrt(static_cast<double>(t));
    rep.bound = std::max(2.0 * static_cast<double>(q), cubic);
    rep.slack = rep.bound - static_cast<double>(n);
    if (n <= 2 * q) {
        rep.holds = true;
        rep.branch = "2q";
    } else if (BigInt(n) * n * n <= BigInt(64) * q * t) {
        rep.holds = true;
        rep.branch = "cubic";
    } else {
        rep.holds = false;
        rep.branch = "none";
    }
    return rep;
}

RichnessTracker::RichnessTracker(const Plane& plane) : plane_(&plane), rich_(plane.num_lines(), 0) {}

RichnessTracker::RichnessTracker(const Plane& plane, const PointSet& set) : RichnessTracker(plane) {
    for (PointId p : set.ids()) insert(p);
}

void RichnessTracker::insert(PointId p) {
    for (LineId l : plane_->point_lines(p)) t_ += choose2(rich_[l]++);
}

void RichnessTracker::erase(PointId p) {
    for (LineId l : plane_->point_lines(p)) t_ -= choose2(--rich_[l]);
}

std::uint64_t RichnessTracker::degree(PointId p) const {
    std::uint64_t d = 0;
    for (LineId l : plane_->point_lines(p)) d += choose2(rich_[l] - 1);
    return d;
}

}  // namespace arclab
