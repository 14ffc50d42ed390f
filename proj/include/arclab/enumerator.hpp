#pragma once

#include "arclab/exact.hpp"
#include "arclab/geometry.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace arclab {

/// True iff every line meets P in at most two points.
bool is_arc(const PointSet& set);

struct SearchConfig {
    /// Point visiting order; empty means id order. Must be a permutation of 0..q^2-1.
    std::vector<PointId> order;
    /// Arcs of this size are enumerated serially and their subtrees become jobs.
    unsigned fanout_depth = 2;
    /// Stop once more than this many arcs have been counted.
    std::optional<std::uint64_t> cap;
    /// Only count arcs up to this size.
    std::optional<std::uint32_t> max_size;
    unsigned threads = 1;
    /// Feasibility guard for the full census.
    std::uint32_t max_q = 8;
};

struct CensusTable {
    std::uint32_t q = 0;
    /// counts[k] = number of k-arcs, for k = 0..max_arc (or up to the size limit).
    std::vector<BigInt> counts;
    BigInt total = 0;
    std::uint32_t max_arc = 0;
    /// False when the cap stopped the search; counts are then lower bounds.
    bool complete = true;
    /// Set when the census was limited by SearchConfig::max_size.
    std::optional<std::uint32_t> size_limit;
    std::uint64_t nodes = 0;
    double seconds = 0;
};

/// Exact arc census of AG(2,q) by canonical-order backtracking.
/// Throws std::invalid_argument when q exceeds config.max_q or the order is invalid.
CensusTable census(std::uint32_t q, const SearchConfig& config = {});

struct ArcWitness {
    PointSet set;
    bool certified = false;  // is_arc re-checked on the result
};

struct MaxArcResult {
    std::uint32_t size = 0;
    ArcWitness witness;
    std::uint64_t nodes = 0;
};

inline constexpr std::uint32_t kMaxArcOrder = 16;
inline constexpr std::size_t kMaxArcInPoints = 2000;

/// Largest arc of AG(2,q) by branch and bound. Throws std::invalid_argument for q > max_q.
MaxArcResult max_arc(std::uint32_t q, std::uint32_t max_q = kMaxArcOrder);
/// Largest arc contained in P. Throws std::invalid_argument for |P| > max_points.
MaxArcResult max_arc_in(const PointSet& set, std::size_t max_points = kMaxArcInPoints);

}  // namespace arclab
