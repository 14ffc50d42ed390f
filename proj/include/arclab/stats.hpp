#pragma once

#include "arclab/exact.hpp"
#include "arclab/geometry.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace arclab {

inline std::uint64_t choose2(std::uint64_t n) { return n < 2 ? 0 : n * (n - 1) / 2; }
inline std::uint64_t choose3(std::uint64_t n) { return n < 3 ? 0 : n * (n - 1) * (n - 2) / 6; }

/// counts[r] = number of lines meeting P in exactly r points.
struct RichnessHistogram {
    std::map<std::uint32_t, std::uint64_t> counts;

    std::uint64_t lines() const;
    /// sum_r counts[r] * r, which equals |P| (q + 1).
    std::uint64_t incidences() const;
};

RichnessHistogram richness_histogram(const PointSet& set);

/// T(P) = sum over lines of C(|l ∩ P|, 3).
std::uint64_t t_count(const PointSet& set);
/// Same, over a raw bit-vector of the plane.
std::uint64_t t_count(const Plane& plane, std::span<const std::uint64_t> words);

/// Independent O(|P|^3) count using the determinant test. Throws
/// std::length_error above kBruteLimit points.
inline constexpr std::size_t kBruteLimit = 10000;
std::uint64_t t_count_brute(const PointSet& set);

/// max(0, max line richness - 2).
std::uint32_t delta2(const PointSet& set);

/// 3 T(P) / |P|; throws std::domain_error for the empty set.
Rational avg_degree(const PointSet& set);

/// 3 W(v) = sum over lines through v of C(|l ∩ P| - 1, 2), i.e. the number
/// of collinear triples of P containing v. Throws std::invalid_argument if v ∉ P.
std::uint64_t weight_times3(const PointSet& set, PointId v);
/// W(v) as an exact rational.
Rational weight(const PointSet& set, PointId v);
/// sum_j w_j^(v) over the q + 1 lines through v; equals |P| - 1.
std::uint64_t weight_mass(const PointSet& set, PointId v);

struct TripleStats {
    std::size_t size = 0;
    std::uint64_t T = 0;
    std::uint32_t delta2 = 0;
    Rational avg_degree = 0;  // 0 for the empty set
    RichnessHistogram histogram;
};

TripleStats triple_stats(const PointSet& set);

/// |P| <= max{2q, 4 q^(1/3) T(P)^(1/3)}, compared exactly as |P|^3 <= 64 q T.
struct SizeBoundReport {
    bool hypothesis_ok = false;  // q >= 8
    bool holds = false;
    std::string branch;          // "2q", "cubic" or "none"
    double bound = 0;            // max of the two branches, for display
    double slack = 0;            // bound - |P|
};

SizeBoundReport size_bound_check(const PointSet& set);

/// Per-line richness with O(q) incremental updates of T.
class RichnessTracker {
public:
    explicit RichnessTracker(const Plane& plane);
    RichnessTracker(const Plane& plane, const PointSet& set);

    void insert(PointId p);
    void erase(PointId p);

    std::uint64_t T() const { return t_; }
    std::uint32_t richness(LineId l) const { return rich_[l]; }
    /// Collinear triples of the tracked set containing p (p must be tracked).
    std::uint64_t degree(PointId p) const;

private:
    const Plane* plane_;
    std::vector<std::uint32_t> rich_;
    std::uint64_t t_ = 0;
};

}  // namespace arclab
