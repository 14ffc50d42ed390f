#pragma once

#include "arclab/exact.hpp"
#include "arclab/geometry.hpp"
#include "arclab/rng.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace arclab {

/// Named growth functions f(q).
struct Growth {
    enum class Kind { Log, LogLog, SqrtLog, Constant };
    Kind kind = Kind::Log;
    Rational constant = 1;  // used by Constant only

    /// Accepts "log", "loglog", "sqrt-log", "const:<c>" with c a positive rational.
    static Growth parse(const std::string& name);
    std::string name() const;
};

inline constexpr std::uint32_t kRandomMaxOrder = 16;

struct ExperimentConfig {
    std::uint32_t q = 9;
    Rational a = Rational(-1, 4);  // p = q^a
    Growth f;
    std::uint64_t trials = 1000;
    std::uint64_t seed = 0;
    std::string rng_id = std::string(kRngId);
    unsigned threads = 1;
    std::uint32_t max_q = 13;
    /// Measured container family size substituted into the proof's bound.
    std::optional<BigInt> family_size;
};

struct TrialRecord {
    std::uint64_t index = 0;
    std::uint32_t size = 0;
    std::uint32_t arc = 0;
    double seconds = 0;
};

struct TailReport {
    ExperimentConfig config;
    Term p;
    std::uint64_t threshold = 0;  // inclusion when the 64-bit draw is below this
    std::uint64_t m = 0;          // ceil(q p f(q))
    std::string qpf;              // q p f(q) in decimal
    std::uint64_t hits = 0;       // trials with a(Q_p) >= m
    Rational empirical_tail = 0;
    double ci_low = 0, ci_high = 0;
    std::string bound_4e_over_f;                // (4e / f(q))^m
    std::optional<std::string> family_bound;    // |family| binom(2q, m) p^m
    std::uint32_t max_arc_plane = 0;
    std::uint64_t invariant_violations = 0;     // a(Q_p) > min(|Q_p|, max arc of the plane)
    std::vector<TrialRecord> records;
    double seconds = 0;
};

/// floor(p * 2^64) for 0 < p < 1, exact.
std::uint64_t inclusion_threshold(const Term& p);

/// Q_p for trial `trial`: points in id order, each kept when the draw from
/// Rng(seed, trial) falls below inclusion_threshold(p).
PointSet sample_qp(const PlanePtr& plane, const Term& p, std::uint64_t seed, std::uint64_t trial);
PointSet sample_qp_threshold(const PlanePtr& plane, std::uint64_t threshold, std::uint64_t seed,
                             std::uint64_t trial);

/// ceil(q * p * f(q)).
std::uint64_t tail_threshold(std::uint32_t q, const Term& p, const Growth& f);

/// Wilson score interval for hits out of n at z = 1.96.
std::pair<double, double> wilson_interval(std::uint64_t hits, std::uint64_t n);

/// Throws std::invalid_argument for trials = 0, p outside (0, 1), or q above the guard.
TailReport tail_estimate(const ExperimentConfig& config);

}  // namespace arclab
