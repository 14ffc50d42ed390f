#pragma once

#include "arclab/exact.hpp"
#include "arclab/geometry.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace arclab {

struct ContainerParams {
    Term epsilon;
    Term tau;
    Rational cond1_divisor = 288;
    Rational cond2_bound = Rational(1, 3600);
    Rational size_constant = 108000;
};

struct ConditionReport {
    bool cond1 = false;       // Δ2/(dτ) + 1/(2dτ²) <= ε/divisor
    bool cond2 = false;       // τ < bound (strict)
    bool ranges_ok = false;   // ε, τ in (0, 1/2)
    TermSum cond1_lhs;
    TermSum cond1_rhs;
    TermSum cond1_margin;     // rhs - lhs
    TermSum cond2_margin;     // bound - τ
    bool all() const { return cond1 && cond2 && ranges_ok; }
};

/// Exact evaluation of the two container conditions.
/// Throws std::domain_error unless avg_degree > 0.
ConditionReport check_conditions(std::uint64_t delta2, const Term& avg_degree, const ContainerParams& params);

struct Container {
    PointSet set;
    std::vector<PointId> fingerprint;
    std::uint64_t T = 0;
    bool complete = false;   // T <= floor(ε T(source))
    bool overflow = false;   // fingerprint budget reached first
};

struct ContainerFamily {
    std::vector<Container> containers;
    std::uint64_t source_T = 0;
    std::uint64_t threshold = 0;   // floor(ε T(source))
    std::uint64_t budget = 0;
    std::uint64_t budget_used = 0; // largest fingerprint emitted
    std::uint64_t nodes = 0;
};

/// Fingerprint branching over the collinear-triple hypergraph of `source`:
/// every arc inside `source` lies in some emitted container, and every
/// container flagged complete spans at most ε T(source) triples.
/// Throws std::invalid_argument unless 0 < ε < 1.
ContainerFamily build_containers(const PointSet& source, const Term& epsilon, std::uint64_t budget);

enum class ContainerMode { Cont1, Cont2 };
std::string to_string(ContainerMode mode);

/// ε = q^-δ.
Term container_epsilon(std::uint64_t q, const Rational& delta);
/// max{1000 q^(2s/3+δ-2), 100 q^(s/3+δ/2-3/2)}.
Term cont1_tau(std::uint64_t q, const Term& q_pow_s, const Rational& delta);
/// 8000 γ^(-2/3) q^(s/3+δ-4/3).
Term cont2_tau(std::uint64_t q, const Term& q_pow_s, const Rational& delta, const Term& gamma);

struct ScheduleStep {
    unsigned level = 0;
    Rational s = 0;
    Term epsilon;
    Term tau;
    Term triples;             // q^(5-s), or (γ/6) q^(5-s)
    TermSum stop_threshold;   // q^3, or (γ/6) q^2
    bool terminal = false;
};

/// s_i = i δ from s = 0 until s >= 2. Throws std::invalid_argument unless 0 < δ < 1 and q >= 2.
std::vector<ScheduleStep> schedule_cont1(std::uint64_t q, const Rational& delta);
/// s_i = i δ from s = 0 until s >= 3. Throws std::invalid_argument unless 0 < γ <= 1.
std::vector<ScheduleStep> schedule_cont2(std::uint64_t q, const Rational& delta, const Term& gamma);

/// γ = q^(-1/5 + 6δ/5).
Term gamma_for_count(std::uint64_t q, const Rational& delta);
/// γ = q^(2/5 - 3t/5 + δ).
Term gamma_for_exponent(std::uint64_t q, const Rational& t, const Rational& delta);
/// The same with k = q^t, i.e. q^(2/5+δ) k^(-3/5).
Term gamma_for_arc_size(std::uint64_t q, std::uint64_t k, const Rational& delta);

struct HypothesisReport {
    bool holds = false;
    TermSum lower;   // c q^(-1/2 + 3δ/2)
};
/// c q^(-1/2+3δ/2) <= γ <= 1 with a configurable constant c.
HypothesisReport cont2_hypothesis(std::uint64_t q, const Rational& delta, const Term& gamma, const Rational& c = 1);

struct TreeConfig {
    ContainerMode mode = ContainerMode::Cont1;
    Rational delta = Rational(1, 2);
    Rational gamma = 1;               // cont2 only
    std::optional<Rational> epsilon_override;
    std::optional<std::uint64_t> fixed_budget;  // default budget = ceil(τ |A|)
    Rational hypothesis_c = 1;
    unsigned threads = 1;
    std::uint32_t max_q = 13;
    /// Coverage is checked against every arc up to this q, and skipped above.
    std::uint32_t coverage_max_q = 7;
};

struct TreeNode {
    explicit TreeNode(PointSet s) : set(std::move(s)) {}

    std::uint32_t id = 0;
    std::int64_t parent = -1;
    unsigned level = 0;
    ContainerMode phase = ContainerMode::Cont1;
    PointSet set;
    std::uint64_t T = 0;
    std::uint32_t fingerprint_size = 0;
    bool complete = true;       // density met in the parent's build
    bool overflow = false;
    bool terminal = false;      // at or below the phase's stop threshold
    bool capped = false;        // left unfinished by the level cap
    // Parameters used when this node was split (empty for leaves).
    bool expanded = false;
    bool conditions_ok = false;
    std::string epsilon, tau;
    std::uint64_t budget = 0;
    std::vector<std::uint32_t> children;
};

struct LevelStats {
    unsigned level = 0;
    ContainerMode phase = ContainerMode::Cont1;
    std::uint64_t containers = 0;
    std::uint64_t duplicates = 0;
    std::uint64_t max_size = 0;
    std::uint64_t max_T = 0;
    std::uint64_t expanded = 0;
    std::uint64_t conditions_ok = 0;   // among expanded nodes
};

struct CoverageReport {
    bool checked = false;
    std::uint64_t arcs = 0;
    std::uint64_t misses = 0;
    std::optional<PointSet> first_miss;
};

struct TreeReport {
    std::uint32_t q = 0;
    TreeConfig config;
    std::vector<TreeNode> nodes;
    std::vector<std::uint32_t> leaves;
    std::vector<LevelStats> levels;
    bool capped = false;
    HypothesisReport hypothesis;   // cont2 only
    CoverageReport coverage;       // (a)
    std::uint64_t density_checked = 0, density_violations = 0;  // (b)
    bool size_check_applicable = false;                          // (c), γ > 4/q
    std::uint64_t size_checked = 0, size_violations = 0;
    double log2_family = 0;        // (d), report only
    double reference_exponent = 0;     // q^(2/3+2δ), times γ^(-2/3) for cont2
    double seconds = 0;
};

/// Iterates build_containers level by level per the schedule.
/// Throws std::invalid_argument when q exceeds config.max_q or parameters are out of range.
TreeReport run_tree(std::uint32_t q, const TreeConfig& config);

/// Counts arcs of the plane that lie in none of the given sets.
CoverageReport check_coverage(const PlanePtr& plane, const std::vector<PointSet>& leaves);

}  // namespace arclab
