#include "arclab/randomexp.hpp"

#include "arclab/enumerator.hpp"
#include "arclab/field.hpp"
#include "arclab/parallel.hpp"

#include <boost/multiprecision/cpp_bin_float.hpp>

#include <chrono>
#include <cmath>
#include <stdexcept>

namespace arclab {

namespace mp = boost::multiprecision;
using Float = mp::cpp_bin_float_100;

namespace {

Float to_float(const Rational& r) {
    return Float(mp::numerator(r)) / Float(mp::denominator(r));
}

Float to_float(const Term& t) {
    auto [lo, hi] = t.enclose(400);
    return to_float((lo + hi) / 2);
}

Float growth_value(std::uint32_t q, const Growth& f) {
    const Float lq = mp::log(Float(q));
    switch (f.kind) {
        case Growth::Kind::Log: return lq;
        case Growth::Kind::LogLog: return mp::log(lq);
        case Growth::Kind::SqrtLog: return mp::sqrt(lq);
        case Growth::Kind::Constant: return to_float(f.constant);
    }
    return lq;
}

std::string sci(const Float& v, int digits = 12) {
    return v.str(digits, std::ios_base::scientific);
}

Term probability(const ExperimentConfig& c) {
    if (!(c.a < 0)) throw std::invalid_argument("random-arcs: need a < 0 so that 0 < p < 1");
    return Term::power(Rational(c.q), c.a);
}

}  // namespace

Growth Growth::parse(const std::string& name) {
    Growth g;
    if (name == "log") {
        g.kind = Kind::Log;
    } else if (name == "loglog") {
        g.kind = Kind::LogLog;
    } else if (name == "sqrt-log") {
        g.kind = Kind::SqrtLog;
    } else if (name.rfind("const:", 0) == 0) {
        g.kind = Kind::Constant;
        g.constant = parse_rational(name.substr(6));
        if (g.constant <= 0) throw std::invalid_argument("growth constant must be positive");
    } else {
        throw std::invalid_argument("unknown growth function '" + name + "' (log, loglog, sqrt-log, const:<c>)");
    }
    return g;
}

std::string Growth::name() const {
    switch (kind) {
        case Kind::Log: return "log";
        case Kind::LogLog: return "loglog";
        case Kind::SqrtLog: return "sqrt-log";
        case Kind::Constant: return "const:" + to_string(constant);
    }
    return "";
}

std::uint64_t inclusion_threshold(const Term& p) {
    if (!(p.sign() > 0 && less(TermSum(p), TermSum(Term(1)))))
        throw std::invalid_argument("inclusion probability must lie in (0, 1)");
    const BigInt two64 = BigInt(1) << 64;
    return static_cast<std::uint64_t>(floor_of(TermSum(p * Term(Rational(two64)))));
}

PointSet sample_qp_threshold(const PlanePtr& plane, std::uint64_t threshold, std::uint64_t seed,
                             std::uint64_t trial) {
    Rng rng(seed, trial);
    PointSet s(plane);
    for (PointId v = 0; v < plane->num_points(); ++v)
        if (rng.below_threshold(threshold)) s.insert(v);
    return s;
}

PointSet sample_qp(const PlanePtr& plane, const Term& p, std::uint64_t seed, std::uint64_t trial) {
    return sample_qp_threshold(plane, inclusion_threshold(p), seed, trial);
}

std::uint64_t tail_threshold(std::uint32_t q, const Term& p, const Growth& f) {
    if (f.kind == Growth::Kind::Constant)
        return static_cast<std::uint64_t>(ceil_of(TermSum(Term(q) * p * Term(f.constant))));
    if (f.kind == Growth::Kind::LogLog && q < 3) throw std::invalid_argument("loglog needs q >= 3");
    // q p f(q) is transcendental here, so the ceiling is decided by the float
    const Float v = Float(q) * to_float(p) * growth_value(q, f);
    return static_cast<std::uint64_t>(mp::ceil(v));
}

std::pair<double, double> wilson_interval(std::uint64_t hits, std::uint64_t n) {
    if (n == 0) throw std::invalid_argument("wilson_interval: n = 0");
    const double z = 1.96;
    const double nn = static_cast<double>(n), k = static_cast<double>(hits);
    const double denom = nn + z * z;
    const double center = (k + z * z / 2) / denom;
    const double half = z / denom * std::sqrt(k * (nn - k) / nn + z * z / 4);
    return {std::max(0.0, center - half), std::min(1.0, center + half)};
}

TailReport tail_estimate(const ExperimentConfig& config) {
    if (config.trials == 0) throw std::invalid_argument("random-arcs: trials must be at least 1");
    if (config.q > std::min(config.max_q, kRandomMaxOrder))
        throw std::invalid_argument("random-arcs: q = " + std::to_string(config.q) + " exceeds the guard " +
                                    std::to_string(std::min(config.max_q, kRandomMaxOrder)));
    const auto start = std::chrono::steady_clock::now();
    auto plane = Plane::of_order(config.q);

    TailReport rep;
    rep.config = config;
    rep.p = probability(config);
    rep.threshold = inclusion_threshold(rep.p);
    rep.m = tail_threshold(config.q, rep.p, config.f);
    const Float pf = to_float(rep.p);
    const Float fq = growth_value(config.q, config.f);
    rep.qpf = sci(Float(config.q) * pf * fq, 15);
    rep.max_arc_plane = max_arc(config.q).size;

    rep.records.resize(config.trials);
    parallel_jobs(config.trials, resolve_threads(config.threads), [&](std::size_t i, unsigned) {
        const auto t0 = std::chrono::steady_clock::now();
        PointSet s = sample_qp_threshold(plane, rep.threshold, config.seed, i);
        TrialRecord& r = rep.records[i];
        r.index = i;
        r.size = static_cast<std::uint32_t>(s.size());
        r.arc = max_arc_in(s).size;
        r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    });
    for (const auto& r : rep.records) {
        if (r.arc >= rep.m) ++rep.hits;
        if (r.arc > std::min(r.size, rep.max_arc_plane)) ++rep.invariant_violations;
    }
    rep.empirical_tail = Rational(rep.hits, config.trials);
    std::tie(rep.ci_low, rep.ci_high) = wilson_interval(rep.hits, config.trials);

    const Float e = mp::exp(Float(1));
    rep.bound_4e_over_f = sci(mp::pow(4 * e / fq, static_cast<long>(rep.m)));
    if (config.family_size) {
        Float b = Float(*config.family_size) * Float(binomial(2 * std::uint64_t{config.q}, rep.m)) *
                  mp::pow(pf, static_cast<long>(rep.m));
        rep.family_bound = sci(b);
    }
    rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return rep;
}

}  // namespace arclab
