#include "arclab/containers.hpp"

#include "arclab/bits.hpp"
#include "arclab/parallel.hpp"
#include "arclab/stats.hpp"

#include <chrono>
#include <cmath>
#include <map>
#include <stdexcept>

namespace arclab {

namespace {

const Rational kHalf(1, 2);

bool in_open_unit_half(const Term& x) { return x.sign() > 0 && less(TermSum(x), TermSum(Term(kHalf))); }

Term big(std::uint64_t v) { return Term(Rational(BigInt(v))); }

}  // namespace

ConditionReport check_conditions(std::uint64_t delta2, const Term& avg_degree, const ContainerParams& params) {
    if (avg_degree.sign() <= 0) throw std::domain_error("check_conditions: average degree must be positive");
    if (params.tau.sign() <= 0) throw std::domain_error("check_conditions: tau must be positive");
    ConditionReport r;
    const Term d_tau = avg_degree * params.tau;
    if (delta2) r.cond1_lhs.add(big(delta2) / d_tau);
    r.cond1_lhs.add(Term(1) / (Term(2) * d_tau * params.tau));
    r.cond1_rhs = TermSum(params.epsilon / Term(params.cond1_divisor));
    r.cond1_margin = r.cond1_rhs - r.cond1_lhs;
    r.cond1 = less_equal(r.cond1_lhs, r.cond1_rhs);
    r.cond2_margin = TermSum(Term(params.cond2_bound)) - TermSum(params.tau);
    r.cond2 = less(TermSum(params.tau), TermSum(Term(params.cond2_bound)));
    r.ranges_ok = in_open_unit_half(params.epsilon) && in_open_unit_half(params.tau);
    return r;
}

namespace {

class Builder {
public:
    Builder(const PointSet& source, std::uint64_t threshold, std::uint64_t budget, ContainerFamily& out)
        : plane_(source.plane()), ptr_(source.plane_ptr()), threshold_(threshold), budget_(budget), out_(out) {
        words_ = plane_.words();
        n_ = plane_.num_points();
    }

    void run(const PointSet& source) {
        State s;
        s.C.assign(source.words().begin(), source.words().end());
        s.X.assign(words_, 0);
        s.G.assign(std::size_t{n_} * words_, 0);
        node(s);
    }

private:
    struct State {
        std::vector<std::uint64_t> C, X, G;
        std::vector<PointId> F;
    };

    static bool test(const std::vector<std::uint64_t>& b, PointId p) { return (b[p / 64] >> (p % 64)) & 1u; }
    static void set(std::vector<std::uint64_t>& b, PointId p) { b[p / 64] |= std::uint64_t{1} << (p % 64); }
    static void reset(std::vector<std::uint64_t>& b, PointId p) { b[p / 64] &= ~(std::uint64_t{1} << (p % 64)); }

    std::span<const std::uint64_t> g_row(const State& s, PointId p) const {
        return {s.G.data() + std::size_t{p} * words_, words_};
    }

    void emit(const State& s, std::uint64_t t, bool complete) {
        Container c{PointSet::from_words(ptr_, s.C), s.F, t, complete, !complete};
        out_.budget_used = std::max<std::uint64_t>(out_.budget_used, s.F.size());
        out_.containers.push_back(std::move(c));
    }

    void node(const State& s) {
        ++out_.nodes;
        std::vector<std::uint32_t> rich(plane_.num_lines());
        std::uint64_t t = 0;
        for (LineId l = 0; l < plane_.num_lines(); ++l) {
            rich[l] = popcount_and(s.C, plane_.line_mask(l));
            t += choose3(rich[l]);
        }
        if (t <= threshold_) return emit(s, t, true);
        if (s.F.size() >= budget_) return emit(s, t, false);

        std::vector<std::uint64_t> in_f(words_, 0);
        for (PointId f : s.F) set(in_f, f);
        PointId pivot = 0;
        std::uint64_t best = 0;
        bool found = false;
        for (PointId v = 0; v < n_; ++v) {
            if (!test(s.C, v) || test(in_f, v)) continue;
            std::uint64_t score = popcount_and(g_row(s, v), s.C);
            for (LineId l : plane_.point_lines(v)) score += choose2(rich[l] - 1);
            if (!found || score > best) {
                best = score;
                pivot = v;
                found = true;
            }
        }
        if (!found) return emit(s, t, false);

        // OUT: the pivot is not in the arc.
        {
            State out = s;
            reset(out.C, pivot);
            set(out.X, pivot);
            node(out);
        }
        // IN: the pivot is in the arc.
        {
            State in = s;
            auto drop = [&](PointId w) {
                if (w == pivot || !test(in.C, w) || test(in_f, w)) return;
                reset(in.C, w);
                set(in.X, w);
            };
            for (PointId u : s.F)
                for (PointId w : plane_.line_points(plane_.line_through(u, pivot))) drop(w);
            for (PointId w = 0; w < n_; ++w)
                if (test(in.C, w) && ((g_row(s, pivot)[w / 64] >> (w % 64)) & 1u)) drop(w);
            in.F.push_back(pivot);
            for (LineId l : plane_.point_lines(pivot)) {
                std::vector<PointId> pts;
                for (PointId w : plane_.line_points(l))
                    if (w != pivot && test(in.C, w)) pts.push_back(w);
                if (pts.size() < 2) continue;
                for (PointId a : pts)
                    for (PointId b : pts)
                        if (a != b) in.G[std::size_t{a} * words_ + b / 64] |= std::uint64_t{1} << (b % 64);
            }
            node(in);
        }
    }

    const Plane& plane_;
    PlanePtr ptr_;
    std::uint64_t threshold_, budget_;
    ContainerFamily& out_;
    std::uint32_t words_ = 0, n_ = 0;
};

}  // namespace

ContainerFamily build_containers(const PointSet& source, const Term& epsilon, std::uint64_t budget) {
    if (!(epsilon.sign() > 0 && less(TermSum(epsilon), TermSum(Term(1)))))
        throw std::invalid_argument("build_containers: epsilon must lie in (0, 1)");
    ContainerFamily fam;
    fam.source_T = t_count(source);
    fam.threshold = static_cast<std::uint64_t>(floor_of(TermSum(epsilon * big(fam.source_T))));
    fam.budget = budget;
    Builder(source, fam.threshold, budget, fam).run(source);
    return fam;
}

std::string to_string(ContainerMode mode) { return mode == ContainerMode::Cont1 ? "cont1" : "cont2"; }

Term container_epsilon(std::uint64_t q, const Rational& delta) { return Term::power(Rational(BigInt(q)), -delta); }

Term cont1_tau(std::uint64_t q, const Term& q_pow_s, const Rational& delta) {
    const Rational qr{BigInt(q)};
    Term a = Term(1000) * Term::power(qr, delta - 2) * q_pow_s.pow(Rational(2, 3));
    Term b = Term(100) * Term::power(qr, delta / 2 - Rational(3, 2)) * q_pow_s.pow(Rational(1, 3));
    return less(TermSum(a), TermSum(b)) ? b : a;
}

Term cont2_tau(std::uint64_t q, const Term& q_pow_s, const Rational& delta, const Term& gamma) {
    return Term(8000) * gamma.pow(Rational(-2, 3)) * Term::power(Rational(BigInt(q)), delta - Rational(4, 3)) *
           q_pow_s.pow(Rational(1, 3));
}

namespace {

void check_delta(std::uint64_t q, const Rational& delta) {
    if (q < 2) throw std::invalid_argument("schedule: q must be at least 2");
    if (!(delta > 0 && delta < 1)) throw std::invalid_argument("schedule: delta must lie in (0, 1)");
}

void check_gamma(const Term& gamma) {
    if (!(gamma.sign() > 0 && less_equal(TermSum(gamma), TermSum(Term(1)))))
        throw std::invalid_argument("gamma must lie in (0, 1]");
}

}  // namespace

std::vector<ScheduleStep> schedule_cont1(std::uint64_t q, const Rational& delta) {
    check_delta(q, delta);
    const Rational qr{BigInt(q)};
    std::vector<ScheduleStep> steps;
    for (unsigned i = 0;; ++i) {
        ScheduleStep st;
        st.level = i;
        st.s = delta * i;
        st.epsilon = container_epsilon(q, delta);
        st.tau = cont1_tau(q, Term::power(qr, st.s), delta);
        st.triples = Term::power(qr, 5 - st.s);
        st.stop_threshold = TermSum(Term(qr * qr * qr));
        st.terminal = st.s >= 2;
        steps.push_back(st);
        if (st.terminal) break;
    }
    return steps;
}

std::vector<ScheduleStep> schedule_cont2(std::uint64_t q, const Rational& delta, const Term& gamma) {
    check_delta(q, delta);
    check_gamma(gamma);
    const Rational qr{BigInt(q)};
    const Term g6 = gamma / Term(6);
    std::vector<ScheduleStep> steps;
    for (unsigned i = 0;; ++i) {
        ScheduleStep st;
        st.level = i;
        st.s = delta * i;
        st.epsilon = container_epsilon(q, delta);
        st.tau = cont2_tau(q, Term::power(qr, st.s), delta, gamma);
        st.triples = g6 * Term::power(qr, 5 - st.s);
        st.stop_threshold = TermSum(g6 * Term(qr * qr));
        st.terminal = st.s >= 3;
        steps.push_back(st);
        if (st.terminal) break;
    }
    return steps;
}

Term gamma_for_count(std::uint64_t q, const Rational& delta) {
    return Term::power(Rational(BigInt(q)), Rational(-1, 5) + delta * Rational(6, 5));
}

Term gamma_for_exponent(std::uint64_t q, const Rational& t, const Rational& delta) {
    return Term::power(Rational(BigInt(q)), Rational(2, 5) - t * Rational(3, 5) + delta);
}

Term gamma_for_arc_size(std::uint64_t q, std::uint64_t k, const Rational& delta) {
    if (k == 0) throw std::invalid_argument("gamma_for_arc_size: k must be positive");
    return Term::power(Rational(BigInt(q)), Rational(2, 5) + delta) * Term::power(Rational(BigInt(k)), Rational(-3, 5));
}

HypothesisReport cont2_hypothesis(std::uint64_t q, const Rational& delta, const Term& gamma, const Rational& c) {
    HypothesisReport h;
    h.lower = TermSum(Term(c) * Term::power(Rational(BigInt(q)), Rational(-1, 2) + delta * Rational(3, 2)));
    h.holds = less_equal(h.lower, TermSum(gamma)) && less_equal(TermSum(gamma), TermSum(Term(1)));
    return h;
}

CoverageReport check_coverage(const PlanePtr& plane, const std::vector<PointSet>& leaves) {
    CoverageReport rep;
    rep.checked = true;
    const std::uint32_t n = plane->num_points();
    with_word_count(n, [&](auto w) {
        constexpr std::size_t W = decltype(w)::value;
        std::vector<Bits<W>> leaf(leaves.size());
        for (std::size_t i = 0; i < leaves.size(); ++i) leaf[i] = Bits<W>::from(leaves[i].words());
        std::vector<Bits<W>> line(plane->num_lines());
        for (LineId l = 0; l < plane->num_lines(); ++l) line[l] = Bits<W>::from(plane->line_mask(l));
        std::vector<PointId> arc;
        auto rec = [&](auto&& self, const Bits<W>& cand, const std::vector<std::uint32_t>& alive) -> void {
            ++rep.arcs;
            if (alive.empty()) {
                ++rep.misses;
                if (!rep.first_miss) rep.first_miss = PointSet::from_ids(plane, arc);
            }
            cand.for_each([&](std::size_t c) {
                const auto p = static_cast<PointId>(c);
                Bits<W> next = cand;
                next.andnot(Bits<W>::prefix(c + 1));
                for (PointId a : arc) next.andnot(line[plane->line_through(a, p)]);
                std::vector<std::uint32_t> keep;
                for (std::uint32_t i : alive)
                    if (leaf[i].test(c)) keep.push_back(i);
                arc.push_back(p);
                self(self, next, keep);
                arc.pop_back();
            });
        };
        std::vector<std::uint32_t> all(leaves.size());
        for (std::uint32_t i = 0; i < all.size(); ++i) all[i] = i;
        rec(rec, Bits<W>::prefix(n), all);
    });
    return rep;
}

namespace {

struct Expansion {
    ContainerFamily family;
    Term epsilon, tau;
    std::uint64_t budget = 0;
    bool conditions_ok = false;
};

}  // namespace

TreeReport run_tree(std::uint32_t q, const TreeConfig& config) {
    if (q > config.max_q)
        throw std::invalid_argument("run_tree for q = " + std::to_string(q) + " exceeds the guard q <= " +
                                    std::to_string(config.max_q));
    check_delta(q, config.delta);
    if (config.mode == ContainerMode::Cont2) check_gamma(Term(config.gamma));
    if (config.epsilon_override && !(*config.epsilon_override > 0 && *config.epsilon_override < 1))
        throw std::invalid_argument("run_tree: epsilon override must lie in (0, 1)");

    const auto start = std::chrono::steady_clock::now();
    auto plane = Plane::of_order(q);
    const Rational qr{BigInt(q)};
    const Rational q5 = qr * qr * qr * qr * qr;
    const Term gamma(config.gamma);
    const Term epsilon = config.epsilon_override ? Term(*config.epsilon_override) : container_epsilon(q, config.delta);
    const unsigned level_cap =
        static_cast<unsigned>(static_cast<std::uint64_t>(ceil_of(Rational(2) / config.delta))) + 3;

    TreeReport rep;
    rep.q = q;
    rep.config = config;
    if (config.mode == ContainerMode::Cont2) rep.hypothesis = cont2_hypothesis(q, config.delta, gamma, config.hypothesis_c);

    auto terminal_in = [&](ContainerMode phase, std::uint64_t t) {
        if (phase == ContainerMode::Cont1) return Rational(BigInt(t)) <= qr * qr * qr;
        return Rational(BigInt(6) * t) <= config.gamma * qr * qr;
    };

    TreeNode root(PointSet::full(plane));
    root.T = t_count(root.set);
    root.terminal = terminal_in(ContainerMode::Cont1, root.T);
    rep.nodes.push_back(root);
    rep.levels.push_back({0, ContainerMode::Cont1, 1, 0, root.set.size(), root.T, 0, 0});

    const unsigned threads = resolve_threads(config.threads);
    auto run_phase = [&](ContainerMode phase, std::vector<std::uint32_t> frontier) {
        unsigned levels = 0;
        while (!frontier.empty() && levels < level_cap) {
            ++levels;
            std::vector<Expansion> exp(frontier.size());
            parallel_jobs(frontier.size(), threads, [&](std::size_t i, unsigned) {
                const TreeNode& a = rep.nodes[frontier[i]];
                Expansion& e = exp[i];
                const Rational size(BigInt(a.set.size()));
                Term q_pow_s = phase == ContainerMode::Cont1 ? Term(q5 / Rational(BigInt(a.T)))
                                                             : gamma * Term(q5 / Rational(BigInt(6) * a.T));
                e.epsilon = epsilon;
                e.tau = phase == ContainerMode::Cont1 ? cont1_tau(q, q_pow_s, config.delta)
                                                      : cont2_tau(q, q_pow_s, config.delta, gamma);
                e.budget = config.fixed_budget ? *config.fixed_budget
                                               : static_cast<std::uint64_t>(ceil_of(TermSum(e.tau * Term(size))));
                ContainerParams params{e.epsilon, e.tau};
                e.conditions_ok =
                    check_conditions(delta2(a.set), Term(Rational(BigInt(3) * a.T) / size), params).all();
                e.family = build_containers(a.set, e.epsilon, e.budget);
            });

            const unsigned level = rep.nodes[frontier[0]].level + 1;
            LevelStats st{level, phase, 0, 0, 0, 0, frontier.size(), 0};
            std::map<std::vector<std::uint64_t>, std::uint32_t> seen;
            std::vector<std::uint32_t> next;
            for (std::size_t i = 0; i < frontier.size(); ++i) {
                const std::uint32_t pid = frontier[i];
                Expansion& e = exp[i];
                {
                    TreeNode& parent = rep.nodes[pid];
                    parent.expanded = true;
                    parent.conditions_ok = e.conditions_ok;
                    parent.epsilon = e.epsilon.str();
                    parent.tau = e.tau.str();
                    parent.budget = e.budget;
                    st.conditions_ok += e.conditions_ok;
                }
                const std::uint64_t parent_T = rep.nodes[pid].T;
                for (Container& c : e.family.containers) {
                    std::vector<std::uint64_t> key(c.set.words().begin(), c.set.words().end());
                    if (c.complete) {
                        ++rep.density_checked;
                        if (!less_equal(TermSum(big(c.T)), TermSum(e.epsilon * big(parent_T)))) ++rep.density_violations;
                    }
                    if (seen.count(key)) {
                        ++st.duplicates;
                        continue;
                    }
                    TreeNode child(std::move(c.set));
                    child.id = static_cast<std::uint32_t>(rep.nodes.size());
                    child.parent = pid;
                    child.level = level;
                    child.phase = phase;
                    child.T = c.T;
                    child.fingerprint_size = static_cast<std::uint32_t>(c.fingerprint.size());
                    child.complete = c.complete;
                    child.overflow = c.overflow;
                    child.terminal = terminal_in(phase, c.T);
                    seen.emplace(std::move(key), child.id);
                    rep.nodes[pid].children.push_back(child.id);
                    ++st.containers;
                    st.max_size = std::max<std::uint64_t>(st.max_size, child.set.size());
                    st.max_T = std::max(st.max_T, child.T);
                    if (!child.terminal) next.push_back(child.id);
                    rep.nodes.push_back(std::move(child));
                }
            }
            rep.levels.push_back(st);
            frontier = std::move(next);
        }
        for (std::uint32_t id : frontier) rep.nodes[id].capped = true;
        if (!frontier.empty()) rep.capped = true;
    };

    if (!root.terminal) run_phase(ContainerMode::Cont1, {0});
    if (config.mode == ContainerMode::Cont2) {
        std::vector<std::uint32_t> frontier;
        for (auto& nd : rep.nodes)
            if (nd.children.empty() && !terminal_in(ContainerMode::Cont2, nd.T)) {
                nd.capped = false;
                frontier.push_back(nd.id);
            }
        rep.capped = false;
        run_phase(ContainerMode::Cont2, frontier);
    }

    std::vector<PointSet> leaf_sets;
    for (const auto& nd : rep.nodes)
        if (nd.children.empty()) {
            rep.leaves.push_back(nd.id);
            leaf_sets.push_back(nd.set);
        }

    if (config.mode == ContainerMode::Cont2) {
        rep.size_check_applicable = config.gamma > Rational(4) / qr;
        if (rep.size_check_applicable)
            for (std::uint32_t id : rep.leaves) {
                const TreeNode& nd = rep.nodes[id];
                if (!terminal_in(ContainerMode::Cont2, nd.T)) continue;
                ++rep.size_checked;
                if (Rational(BigInt(nd.set.size())) > (1 + config.gamma) * qr) ++rep.size_violations;
            }
    }

    if (q <= config.coverage_max_q) rep.coverage = check_coverage(plane, leaf_sets);

    rep.log2_family = std::log2(static_cast<double>(rep.leaves.size()));
    rep.reference_exponent = std::pow(static_cast<double>(q), 2.0 / 3.0 + 2.0 * to_double(config.delta));
    if (config.mode == ContainerMode::Cont2) rep.reference_exponent *= std::pow(to_double(config.gamma), -2.0 / 3.0);
    rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return rep;
}

}  // namespace arclab
