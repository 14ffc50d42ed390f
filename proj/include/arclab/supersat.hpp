#pragma once

#include "arclab/exact.hpp"
#include "arclab/geometry.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace arclab {

/// n = k (q + 1) + x + 1 with 0 <= x <= q.
struct Decomposition {
    std::uint64_t k = 0;
    std::uint64_t x = 0;
};

/// Throws std::invalid_argument for n < 1.
Decomposition decompose(std::uint64_t q, std::uint64_t n);

/// (1/3)(C(k,2)(q+1) + k x) n for an explicit (k, x); x = q + 1 is allowed.
Rational triples_bound(std::uint64_t q, std::uint64_t k, std::uint64_t x, std::uint64_t n);

/// Lower bound on T(P) over all n-point subsets of F_q^2, using the
/// canonical decomposition. Throws std::invalid_argument for n > q^2 or n < 1.
Rational min_triples_bound(std::uint64_t q, std::uint64_t n);

enum class Verdict {
    Verified,   // hypotheses hold and the inequality was checked
    Vacuous,    // hypotheses hold but the premise is false
    Skipped,    // hypotheses of the statement do not hold
    Violation,
};

std::string to_string(Verdict v);

struct BoundReport {
    std::string check;
    std::uint32_t q = 0;
    std::uint64_t n = 0;
    Rational bound = 0;
    std::uint64_t actual = 0;
    Rational slack = 0;  // actual - bound
    Verdict verdict = Verdict::Verified;
    std::optional<PointSet> witness;
    std::string note;
};

/// |P| > (1+γ)q  ⇒  T(P) > γ q^2 / 6, for 4/q < γ <= 1.
BoundReport few_triples_check(std::uint32_t q, const Rational& gamma, const PointSet& set);
/// T(P) >= |P|^3 / (64 q) for q >= 8 and |P| >= 2q.
BoundReport two_branch_check(std::uint32_t q, const PointSet& set);
/// T(P) >= min_triples_bound(q, |P|) for nonempty P.
BoundReport triples_check(std::uint32_t q, const PointSet& set);

struct KaramataResult {
    std::uint64_t value = 0;               // sum of C(w_j, 2)
    std::vector<std::uint64_t> sequence;   // balanced, non-increasing
};

/// Minimum of sum C(w_j, 2) over nonnegative integer sequences of the given
/// length and sum. Throws std::invalid_argument for length 0.
KaramataResult karamata_min(std::uint64_t length, std::uint64_t total);

enum class SweepMode { Exhaustive, Random };

struct VerifyConfig {
    SweepMode mode = SweepMode::Exhaustive;
    std::uint64_t trials = 0;  // random mode
    std::uint64_t seed = 0;
    unsigned threads = 1;
    /// Exhaustive sweeps are limited to q <= max_exhaustive_q.
    std::uint32_t max_exhaustive_q = 5;
};

struct CheckTally {
    std::string check;
    std::uint64_t verified = 0;
    std::uint64_t vacuous = 0;
    std::uint64_t skipped = 0;
    std::uint64_t violations = 0;
};

struct VerifyResult {
    std::uint32_t q = 0;
    std::uint64_t sets_checked = 0;
    /// One lower-bound report per size present in the sweep: minimum T over the
    /// sets of that size, with a minimizing witness.
    std::vector<BoundReport> per_size;
    std::vector<std::uint64_t> sets_per_size;
    /// supersaturation, few-triples[gamma=1/2], few-triples[gamma=1], two-branch
    std::vector<CheckTally> tallies;
    std::uint64_t total_violations() const;
};

/// Sweeps subsets of F_q^2 (all of them, or seeded random ones with a
/// uniform size) and checks the lower bound and both size bounds on each.
/// Throws std::invalid_argument for an infeasible exhaustive request.
VerifyResult verify_supersaturation(std::uint32_t q, const VerifyConfig& config);

}  // namespace arclab
