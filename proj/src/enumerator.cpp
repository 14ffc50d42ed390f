#include "arclab/enumerator.hpp"

#include "arclab/bits.hpp"
#include "arclab/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <limits>
#include <stdexcept>

namespace arclab {

bool is_arc(const PointSet& set) {
    const Plane& pl = set.plane();
    for (LineId l = 0; l < pl.num_lines(); ++l)
        if (set.richness(l) > 2) return false;
    return true;
}

namespace {

template <std::size_t W>
class CensusKernel {
public:
    struct Job {
        std::vector<std::uint32_t> arc;
        Bits<W> cand;
    };
    struct Counters {
        std::vector<std::uint64_t> counts;
        std::uint64_t nodes = 0;
    };

    CensusKernel(const Plane& plane, const std::vector<PointId>& order, std::uint32_t limit,
                 std::optional<std::uint64_t> cap)
        : n_(plane.num_points()), limit_(limit), cap_(cap) {
        std::vector<std::uint32_t> pos(n_);
        for (std::uint32_t i = 0; i < n_; ++i) pos[order[i]] = i;
        masks_.resize(plane.num_lines());
        for (LineId l = 0; l < plane.num_lines(); ++l)
            for (PointId p : plane.line_points(l)) masks_[l].set(pos[p]);
        pair_line_.assign(std::size_t{n_} * n_, 0);
        for (std::uint32_t a = 0; a < n_; ++a)
            for (std::uint32_t c = a + 1; c < n_; ++c) pair_line_[std::size_t{a} * n_ + c] = plane.line_through(order[a], order[c]);
        above_.resize(n_);
        for (std::uint32_t i = 0; i < n_; ++i) {
            above_[i] = Bits<W>::prefix(n_);
            above_[i].andnot(Bits<W>::prefix(i + 1));
        }
    }

    std::uint32_t points() const { return n_; }

    /// Counts the arcs extending `arc` by candidates; subtrees at `split` become jobs
    /// when `jobs` is given.
    void explore(Counters& out, std::vector<std::uint32_t>& arc, const Bits<W>& cand, std::uint32_t split,
                 std::vector<Job>* jobs) {
        const auto k = static_cast<std::uint32_t>(arc.size());
        if (jobs && k == split) {
            jobs->push_back({arc, cand});
            return;
        }
        if (stop_.load(std::memory_order_relaxed)) return;
        ++out.nodes;
        const std::uint32_t c = cand.count();
        out.counts[k + 1] += c;
        if (cap_ && counted_.fetch_add(c, std::memory_order_relaxed) + c > *cap_) {
            stop_ = true;
            return;
        }
        if (k + 1 >= limit_) return;
        cand.for_each([&](std::size_t p) {
            Bits<W> next = cand & above_[p];
            for (std::uint32_t a : arc) next.andnot(masks_[pair_line_[std::size_t{a} * n_ + p]]);
            if (!next.any()) return;
            arc.push_back(static_cast<std::uint32_t>(p));
            explore(out, arc, next, split, jobs);
            arc.pop_back();
        });
    }

    bool stopped() const { return stop_; }

private:
    std::uint32_t n_, limit_;
    std::optional<std::uint64_t> cap_;
    std::vector<Bits<W>> masks_;
    std::vector<std::uint16_t> pair_line_;
    std::vector<Bits<W>> above_;
    std::atomic<std::uint64_t> counted_{0};
    std::atomic<bool> stop_{false};
};

template <std::size_t W>
CensusTable run_census(const Plane& plane, const std::vector<PointId>& order, const SearchConfig& config) {
    const std::uint32_t n = plane.num_points();
    const std::uint32_t limit = std::min(config.max_size.value_or(n), n);
    CensusTable table;
    table.q = plane.q();
    table.size_limit = config.max_size;
    std::vector<std::uint64_t> merged(n + 2, 0);
    merged[0] = 1;
    std::uint64_t nodes = 0;
    bool complete = true;

    if (limit > 0) {
        CensusKernel<W> kernel(plane, order, limit, config.cap);
        using Counters = typename CensusKernel<W>::Counters;
        using Job = typename CensusKernel<W>::Job;
        Counters serial{std::vector<std::uint64_t>(n + 2, 0), 0};
        std::vector<Job> jobs;
        std::vector<std::uint32_t> arc;
        kernel.explore(serial, arc, Bits<W>::prefix(n), config.fanout_depth, &jobs);

        const unsigned threads = resolve_threads(config.threads);
        std::vector<Counters> workers(threads, Counters{std::vector<std::uint64_t>(n + 2, 0), 0});
        parallel_jobs(jobs.size(), threads, [&](std::size_t i, unsigned w) {
            std::vector<std::uint32_t> a = jobs[i].arc;
            kernel.explore(workers[w], a, jobs[i].cand, 0, nullptr);
        });
        for (std::uint32_t k = 0; k <= n; ++k) merged[k] += serial.counts[k];
        nodes = serial.nodes;
        for (const auto& w : workers) {
            for (std::uint32_t k = 0; k <= n; ++k) merged[k] += w.counts[k];
            nodes += w.nodes;
        }
        complete = !kernel.stopped();
    }

    std::uint32_t top = 0;
    for (std::uint32_t k = 0; k <= n; ++k)
        if (merged[k]) top = k;
    table.max_arc = top;
    table.counts.reserve(top + 1);
    for (std::uint32_t k = 0; k <= top; ++k) {
        table.counts.emplace_back(merged[k]);
        table.total += merged[k];
    }
    table.nodes = nodes;
    table.complete = complete;
    return table;
}

}  // namespace

CensusTable census(std::uint32_t q, const SearchConfig& config) {
    if (q > config.max_q)
        throw std::invalid_argument("census for q = " + std::to_string(q) + " exceeds the guard q <= " +
                                    std::to_string(config.max_q));
    auto plane = Plane::of_order(q);
    const std::uint32_t n = plane->num_points();
    std::vector<PointId> order = config.order;
    if (order.empty()) {
        order.resize(n);
        for (std::uint32_t i = 0; i < n; ++i) order[i] = i;
    }
    {
        std::vector<PointId> sorted = order;
        std::sort(sorted.begin(), sorted.end());
        bool ok = sorted.size() == n;
        for (std::uint32_t i = 0; ok && i < n; ++i) ok = sorted[i] == i;
        if (!ok) throw std::invalid_argument("census: order is not a permutation of the plane's points");
    }
    const auto start = std::chrono::steady_clock::now();
    CensusTable table =
        with_word_count(n, [&](auto w) { return run_census<decltype(w)::value>(*plane, order, config); });
    table.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return table;
}

namespace {

// Branch and bound over a local index space (the points of P).
// Lines meeting P in at least two points are the only ones that matter.
template <std::size_t W>
class ArcSolver {
public:
    ArcSolver(const Plane& plane, const std::vector<PointId>& points) : n_(static_cast<std::uint32_t>(points.size())) {
        std::vector<std::uint32_t> rich(plane.num_lines(), 0);
        for (PointId p : points)
            for (LineId l : plane.point_lines(p)) ++rich[l];
        std::vector<std::int32_t> index(plane.num_lines(), -1);
        point_lines_.resize(n_);
        for (std::uint32_t i = 0; i < n_; ++i)
            for (LineId l : plane.point_lines(points[i])) {
                if (rich[l] < 2) continue;
                if (index[l] < 0) {
                    index[l] = static_cast<std::int32_t>(masks_.size());
                    masks_.emplace_back();
                }
                masks_[index[l]].set(i);
                point_lines_[i].push_back(static_cast<std::uint32_t>(index[l]));
            }
        on_arc_.assign(masks_.size(), 0);
    }

    void seed(std::uint32_t p, Bits<W>& cand) { add(p, cand); }

    /// Arcs whose first point (in local order) is i, for i = 0, 1, ...
    void solve_free() {
        for (std::uint32_t i = 0; i < n_ && n_ - i > best_.size(); ++i) {
            Bits<W> cand = Bits<W>::prefix(n_);
            cand.andnot(Bits<W>::prefix(i + 1));
            add(i, cand);
            search(cand);
            undo(i);
        }
    }

    /// Search from the seeded arc.
    void solve_seeded(const Bits<W>& cand) { search(cand); }
    const std::vector<std::uint32_t>& best() const { return best_; }
    std::uint64_t nodes() const { return nodes_; }

private:
    // Requires a nonempty arc.
    void search(Bits<W> cand) {
        ++nodes_;
        if (arc_.size() > best_.size()) best_ = arc_;
        if (arc_.size() + cand.count() <= best_.size()) return;
        // Each other point of the final arc lies on its own line through a, so
        // |arc| <= 1 + (lines through a still able to take a second point).
        std::size_t bound = std::numeric_limits<std::size_t>::max();
        std::uint32_t chosen = 0, chosen_m = std::numeric_limits<std::uint32_t>::max();
        for (std::uint32_t a : arc_) {
            std::size_t live = 0;
            for (std::uint32_t li : point_lines_[a]) {
                if (on_arc_[li] >= 2) {
                    ++live;
                    continue;
                }
                const std::uint32_t m = cand.count_and(masks_[li]);
                if (!m) continue;
                ++live;
                if (m < chosen_m) {
                    chosen_m = m;
                    chosen = li;
                }
            }
            bound = std::min(bound, live + 1);
            if (bound <= best_.size()) return;
        }
        if (chosen_m == std::numeric_limits<std::uint32_t>::max()) return;
        Bits<W> rest = cand;
        (cand & masks_[chosen]).for_each([&](std::size_t c) {
            const auto p = static_cast<std::uint32_t>(c);
            rest.reset(p);
            Bits<W> with = rest;
            add(p, with);
            search(with);
            undo(p);
        });
        search(rest);
    }

    void add(std::uint32_t p, Bits<W>& cand) {
        arc_.push_back(p);
        cand.reset(p);
        for (std::uint32_t li : point_lines_[p])
            if (on_arc_[li]++ == 1) cand.andnot(masks_[li]);
    }
    void undo(std::uint32_t p) {
        arc_.pop_back();
        for (std::uint32_t li : point_lines_[p]) --on_arc_[li];
    }

    std::uint32_t n_;
    std::vector<Bits<W>> masks_;
    std::vector<std::vector<std::uint32_t>> point_lines_;
    std::vector<std::uint8_t> on_arc_;
    std::vector<std::uint32_t> arc_, best_;
    std::uint64_t nodes_ = 0;
};

MaxArcResult solve(const PlanePtr& plane, const std::vector<PointId>& points, const std::vector<std::uint32_t>& seed) {
    MaxArcResult res{0, {PointSet(plane), false}, 0};
    if (points.empty()) {
        res.witness.certified = true;
        return res;
    }
    std::vector<std::uint32_t> best;
    with_word_count(points.size(), [&](auto w) {
        constexpr std::size_t W = decltype(w)::value;
        ArcSolver<W> solver(*plane, points);
        Bits<W> cand = Bits<W>::prefix(points.size());
        if (seed.empty()) {
            solver.solve_free();
        } else {
            for (std::uint32_t s : seed) solver.seed(s, cand);
            solver.solve_seeded(cand);
        }
        best = solver.best();
        res.nodes = solver.nodes();
    });
    for (std::uint32_t i : best) res.witness.set.insert(points[i]);
    res.size = static_cast<std::uint32_t>(best.size());
    res.witness.certified = res.witness.set.size() == res.size && is_arc(res.witness.set);
    return res;
}

}  // namespace

MaxArcResult max_arc(std::uint32_t q, std::uint32_t max_q) {
    if (q > max_q)
        throw std::invalid_argument("max_arc for q = " + std::to_string(q) + " exceeds the guard q <= " +
                                    std::to_string(max_q));
    auto plane = Plane::of_order(q);
    std::vector<PointId> points(plane->num_points());
    for (PointId i = 0; i < points.size(); ++i) points[i] = i;
    // The affine group is transitive on non-collinear ordered triples, so some
    // maximum arc contains (0,0), (0,1) and (1,0).
    return solve(plane, points, {0, 1, q});
}

MaxArcResult max_arc_in(const PointSet& set, std::size_t max_points) {
    if (set.size() > max_points)
        throw std::invalid_argument("max_arc_in: |P| = " + std::to_string(set.size()) + " exceeds the guard " +
                                    std::to_string(max_points));
    return solve(set.plane_ptr(), set.ids(), {});
}

}  // namespace arclab
