#include "arclab/supersat.hpp"

#include "arclab/parallel.hpp"
#include "arclab/rng.hpp"
#include "arclab/stats.hpp"

#include <limits>
#include <stdexcept>

namespace arclab {

Decomposition decompose(std::uint64_t q, std::uint64_t n) {
    if (n < 1) throw std::invalid_argument("decompose: n must be at least 1");
    return {(n - 1) / (q + 1), (n - 1) % (q + 1)};
}

Rational triples_bound(std::uint64_t q, std::uint64_t k, std::uint64_t x, std::uint64_t n) {
    BigInt inner = BigInt(choose2(k)) * (q + 1) + BigInt(k) * x;
    return Rational(inner * n, 3);
}

Rational min_triples_bound(std::uint64_t q, std::uint64_t n) {
    if (n > q * q) throw std::invalid_argument("min_triples_bound: n exceeds q^2");
    auto [k, x] = decompose(q, n);
    return triples_bound(q, k, x, n);
}

std::string to_string(Verdict v) {
    switch (v) {
        case Verdict::Verified: return "verified";
        case Verdict::Vacuous: return "vacuous";
        case Verdict::Skipped: return "skipped";
        case Verdict::Violation: return "violation";
    }
    return "?";
}

BoundReport few_triples_check(std::uint32_t q, const Rational& gamma, const PointSet& set) {
    BoundReport rep;
    rep.check = "few-triples[gamma=" + to_string(gamma) + "]";
    rep.q = q;
    rep.n = set.size();
    rep.bound = gamma * q * q / 6;
    rep.actual = t_count(set);
    rep.slack = Rational(rep.actual) - rep.bound;
    if (!(Rational(4, q) < gamma && gamma <= 1)) {
        rep.verdict = Verdict::Skipped;
        rep.note = "hypothesis 4/q < gamma <= 1 fails";
        return rep;
    }
    if (Rational(rep.n) <= (1 + gamma) * q) {
        rep.verdict = Verdict::Vacuous;
        rep.note = "|P| <= (1+gamma)q";
        return rep;
    }
    rep.verdict = Rational(rep.actual) > rep.bound ? Verdict::Verified : Verdict::Violation;
    return rep;
}

BoundReport two_branch_check(std::uint32_t q, const PointSet& set) {
    BoundReport rep;
    rep.check = "two-branch";
    rep.q = q;
    rep.n = set.size();
    rep.bound = Rational(BigInt(rep.n) * rep.n * rep.n, BigInt(64) * q);
    rep.actual = t_count(set);
    rep.slack = Rational(rep.actual) - rep.bound;
    if (q < 8 || rep.n < 2ull * q) {
        rep.verdict = Verdict::Skipped;
        rep.note = q < 8 ? "hypothesis q >= 8 fails" : "hypothesis |P| >= 2q fails";
        return rep;
    }
    rep.verdict = Rational(rep.actual) >= rep.bound ? Verdict::Verified : Verdict::Violation;
    return rep;
}

BoundReport triples_check(std::uint32_t q, const PointSet& set) {
    BoundReport rep;
    rep.check = "supersaturation";
    rep.q = q;
    rep.n = set.size();
    rep.actual = t_count(set);
    if (rep.n == 0) {
        rep.verdict = Verdict::Skipped;
        rep.note = "empty set";
        return rep;
    }
    rep.bound = min_triples_bound(q, rep.n);
    rep.slack = Rational(rep.actual) - rep.bound;
    rep.verdict = rep.slack >= 0 ? Verdict::Verified : Verdict::Violation;
    return rep;
}

KaramataResult karamata_min(std::uint64_t length, std::uint64_t total) {
    if (length == 0) throw std::invalid_argument("karamata_min: length must be positive");
    const std::uint64_t base = total / length, extra = total % length;
    KaramataResult r;
    r.sequence.assign(length, base);
    for (std::uint64_t i = 0; i < extra; ++i) r.sequence[i] = base + 1;
    r.value = extra * choose2(base + 1) + (length - extra) * choose2(base);
    return r;
}

std::uint64_t VerifyResult::total_violations() const {
    std::uint64_t v = 0;
    for (const auto& t : tallies) v += t.violations;
    return v;
}

namespace {

// Integer forms of every check for one set size.
struct SizeRule {
    std::uint64_t triples_need3 = 0;  // 3 T >= triples_need3
    bool few_triples_applicable[2];     // gamma = 1/2, 1
    bool few_triples_premise[2];
    std::uint64_t few_triples_lhs_scale[2];  // T * scale > rhs
    std::uint64_t few_triples_rhs[2];
    bool two_branch_applicable;
    std::uint64_t two_branch_rhs = 0;     // 64 q T >= n^3
};

struct Accumulator {
    std::vector<std::uint64_t> min_t, count, witness_key;
    std::vector<std::vector<std::uint64_t>> witness;
    std::uint64_t sets = 0;
    CheckTally tallies[4];

    explicit Accumulator(std::size_t sizes)
        : min_t(sizes, std::numeric_limits<std::uint64_t>::max()),
          count(sizes, 0),
          witness_key(sizes, std::numeric_limits<std::uint64_t>::max()),
          witness(sizes) {}

    void record(std::uint64_t n, std::uint64_t t, std::uint64_t key, std::span<const std::uint64_t> words,
                const SizeRule& rule, std::uint64_t q) {
        ++sets;
        ++count[n];
        if (t < min_t[n] || (t == min_t[n] && key < witness_key[n])) {
            min_t[n] = t;
            witness_key[n] = key;
            witness[n].assign(words.begin(), words.end());
        }
        if (n == 0) {
            ++tallies[0].skipped;
        } else if (3 * t >= rule.triples_need3) {
            ++tallies[0].verified;
        } else {
            ++tallies[0].violations;
        }
        for (int g = 0; g < 2; ++g) {
            CheckTally& tally = tallies[1 + g];
            if (!rule.few_triples_applicable[g])
                ++tally.skipped;
            else if (!rule.few_triples_premise[g])
                ++tally.vacuous;
            else if (t * rule.few_triples_lhs_scale[g] > rule.few_triples_rhs[g])
                ++tally.verified;
            else
                ++tally.violations;
        }
        if (!rule.two_branch_applicable)
            ++tallies[3].skipped;
        else if (64 * q * t >= rule.two_branch_rhs)
            ++tallies[3].verified;
        else
            ++tallies[3].violations;
    }

    void merge(const Accumulator& o) {
        sets += o.sets;
        for (std::size_t n = 0; n < count.size(); ++n) {
            count[n] += o.count[n];
            if (o.min_t[n] < min_t[n] || (o.min_t[n] == min_t[n] && o.witness_key[n] < witness_key[n])) {
                min_t[n] = o.min_t[n];
                witness_key[n] = o.witness_key[n];
                witness[n] = o.witness[n];
            }
        }
        for (int i = 0; i < 4; ++i) {
            tallies[i].verified += o.tallies[i].verified;
            tallies[i].vacuous += o.tallies[i].vacuous;
            tallies[i].skipped += o.tallies[i].skipped;
            tallies[i].violations += o.tallies[i].violations;
        }
    }
};

std::vector<SizeRule> size_rules(std::uint64_t q) {
    const std::uint64_t n_max = q * q;
    std::vector<SizeRule> rules(n_max + 1);
    const std::uint64_t gamma_num[2] = {1, 1}, gamma_den[2] = {2, 1};
    for (std::uint64_t n = 0; n <= n_max; ++n) {
        SizeRule& r = rules[n];
        if (n > 0) {
            auto [k, x] = decompose(q, n);
            r.triples_need3 = (choose2(k) * (q + 1) + k * x) * n;
        }
        for (int g = 0; g < 2; ++g) {
            const std::uint64_t a = gamma_num[g], b = gamma_den[g];
            r.few_triples_applicable[g] = 4 * b < a * q;       // 4/q < a/b  (and a/b <= 1)
            r.few_triples_premise[g] = n * b > (a + b) * q;    // n > (1 + a/b) q
            r.few_triples_lhs_scale[g] = 6 * b;                // 6 b T > a q^2
            r.few_triples_rhs[g] = a * q * q;
        }
        r.two_branch_applicable = q >= 8 && n >= 2 * q;
        r.two_branch_rhs = n * n * n;
    }
    return rules;
}

}  // namespace

VerifyResult verify_supersaturation(std::uint32_t q, const VerifyConfig& config) {
    auto plane = Plane::of_order(q);
    const std::uint64_t n_max = std::uint64_t{q} * q;
    const auto rules = size_rules(q);
    const unsigned threads = resolve_threads(config.threads);

    std::vector<Accumulator> acc(threads, Accumulator(n_max + 1));

    if (config.mode == SweepMode::Exhaustive) {
        if (q > config.max_exhaustive_q || n_max > 30)
            throw std::invalid_argument("exhaustive sweep over 2^" + std::to_string(n_max) + " subsets is not allowed for q = " +
                                        std::to_string(q));
        const std::uint64_t total = std::uint64_t{1} << n_max;
        const std::uint64_t chunk = std::min<std::uint64_t>(total, 1u << 16);
        const std::uint64_t jobs = total / chunk;
        std::vector<std::uint64_t> masks(plane->num_lines());
        for (LineId l = 0; l < plane->num_lines(); ++l) masks[l] = plane->line_mask(l)[0];
        parallel_jobs(jobs, threads, [&](std::size_t job, unsigned w) {
            Accumulator& a = acc[w];
            for (std::uint64_t m = job * chunk; m < (job + 1) * chunk; ++m) {
                std::uint64_t t = 0;
                for (std::uint64_t lm : masks) t += choose3(static_cast<std::uint64_t>(std::popcount(m & lm)));
                const auto n = static_cast<std::uint64_t>(std::popcount(m));
                a.record(n, t, m, std::span<const std::uint64_t>(&m, 1), rules[n], q);
            }
        });
    } else {
        if (config.trials == 0) throw std::invalid_argument("random sweep needs trials >= 1");
        const std::uint64_t chunk = 4096;
        const std::uint64_t jobs = (config.trials + chunk - 1) / chunk;
        parallel_jobs(jobs, threads, [&](std::size_t job, unsigned w) {
            Accumulator& a = acc[w];
            const std::uint64_t end = std::min<std::uint64_t>(config.trials, (job + 1) * chunk);
            for (std::uint64_t trial = job * chunk; trial < end; ++trial) {
                Rng rng(config.seed, trial);
                PointSet s = random_subset(plane, rng);
                const std::uint64_t t = t_count(s);
                a.record(s.size(), t, trial, s.words(), rules[s.size()], q);
            }
        });
    }

    Accumulator total = std::move(acc[0]);
    for (unsigned w = 1; w < threads; ++w) total.merge(acc[w]);

    VerifyResult res;
    res.q = q;
    res.sets_checked = total.sets;
    res.sets_per_size = total.count;
    const char* names[4] = {"supersaturation", "few-triples[gamma=1/2]", "few-triples[gamma=1]", "two-branch"};
    for (int i = 0; i < 4; ++i) {
        total.tallies[i].check = names[i];
        res.tallies.push_back(total.tallies[i]);
    }
    for (std::uint64_t n = 1; n <= n_max; ++n) {
        if (!total.count[n]) continue;
        BoundReport rep;
        rep.check = "supersaturation";
        rep.q = q;
        rep.n = n;
        rep.bound = min_triples_bound(q, n);
        rep.actual = total.min_t[n];
        rep.slack = Rational(rep.actual) - rep.bound;
        rep.verdict = rep.slack >= 0 ? Verdict::Verified : Verdict::Violation;
        rep.witness = PointSet::from_words(plane, total.witness[n]);
        res.per_size.push_back(std::move(rep));
    }
    return res;
}

}  // namespace arclab
