#include "arclab/cli/app.hpp"

#include "arclab/cli/manifest.hpp"
#include "arclab/cli/report.hpp"
#include "arclab/containers.hpp"
#include "arclab/enumerator.hpp"
#include "arclab/io.hpp"
#include "arclab/parallel.hpp"
#include "arclab/randomexp.hpp"
#include "arclab/stats.hpp"
#include "arclab/supersat.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

namespace arclab::cli {

namespace fs = std::filesystem;
using arclab::to_string;

namespace {

/// A mathematical invariant failed; the run is still written.
struct AssertionFailure {
    std::string what;
};

struct Common {
    std::optional<std::string> out;
    unsigned threads = 1;
};

void add_common(CLI::App* sub, Common& c) {
    sub->add_option("--out", c.out, "Run directory (default: a new one under $ARCLAB_DATA_DIR)");
    sub->add_option("--threads", c.threads, "Worker threads (0 = all cores)")->capture_default_str();
}

Json field_json(const FieldSpec& f) {
    return {{"q", f.q()}, {"p", f.p()}, {"r", f.r()}, {"modulus", f.modulus()}};
}

FieldSpec make_field(std::uint64_t q, const std::string& modulus) {
    if (modulus.empty()) return FieldSpec::of_order(q);
    auto pp = prime_power(q);
    if (!pp) throw std::invalid_argument(std::to_string(q) + " is not a prime power");
    Polynomial poly;
    std::stringstream ss(modulus);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        try {
            poly.push_back(static_cast<std::uint32_t>(std::stoul(tok)));
        } catch (const std::exception&) {
            throw std::invalid_argument("bad modulus coefficient '" + tok + "'");
        }
    }
    return FieldSpec::build(pp->first, pp->second, poly);
}

void base_manifest(RunDir& run, const std::string& subcommand, const std::vector<std::string>& argv,
                   const Common& common) {
    Json& m = run.manifest();
    m["subcommand"] = subcommand;
    m["command"] = argv;
    m["config"] = Json::object();
    m["config"]["threads"] = common.threads;
}

std::string rational_json(const Rational& r) { return to_string(r); }

// field ---------------------------------------------------------------------

struct FieldOpts {
    std::uint64_t q = 0;
    std::string modulus;
    bool tables = false;
};

int cmd_field(const FieldOpts& o, const Common& c, const std::vector<std::string>& argv, std::ostream& out) {
    const FieldSpec f = make_field(o.q, o.modulus);
    RunDir run("field", c.out);
    base_manifest(run, "field", argv, c);
    run.manifest()["config"]["field"] = field_json(f);

    // ring axioms on every pair / triple when small
    bool ok = true;
    std::uint64_t checked = 0;
    if (f.q() <= 64) {
        for (std::uint32_t a = 0; a < f.q(); ++a) {
            const auto ea = f.element(a);
            if (a && f.mul(ea, f.inv(ea)) != f.one()) ok = false;
            for (std::uint32_t b = 0; b < f.q(); ++b) {
                const auto eb = f.element(b);
                if (f.add(ea, eb) != f.add(eb, ea) || f.mul(ea, eb) != f.mul(eb, ea)) ok = false;
                for (std::uint32_t cc = 0; cc < f.q(); ++cc) {
                    const auto ec = f.element(cc);
                    if (f.mul(ea, f.add(eb, ec)) != f.add(f.mul(ea, eb), f.mul(ea, ec))) ok = false;
                    ++checked;
                }
            }
        }
    }
    Json summary = field_json(f);
    summary["axiom_triples_checked"] = checked;
    summary["axioms_ok"] = ok;
    if (o.tables) {
        std::ostringstream add, mul;
        for (std::uint32_t a = 0; a < f.q(); ++a) {
            for (std::uint32_t b = 0; b < f.q(); ++b) {
                add << (b ? "," : "") << f.add(f.element(a), f.element(b)).index;
                mul << (b ? "," : "") << f.mul(f.element(a), f.element(b)).index;
            }
            add << '\n';
            mul << '\n';
        }
        run.write("add.csv", add.str());
        run.write("mul.csv", mul.str());
    }
    run.write("field.json", summary.dump(2) + "\n");
    run.manifest()["summary"] = summary;
    run.finish(ok ? "ok" : "assertion-failure");
    out << summary.dump() << '\n';
    if (!ok) throw AssertionFailure{"field axioms"};
    return kExitOk;
}

// plane ---------------------------------------------------------------------

struct PlaneOpts {
    std::uint64_t q = 0;
    std::string modulus;
    bool lines = false;
};

int cmd_plane(const PlaneOpts& o, const Common& c, const std::vector<std::string>& argv, std::ostream& out) {
    auto plane = Plane::build(make_field(o.q, o.modulus));
    const std::uint64_t q = plane->q();
    RunDir run("plane", c.out);
    base_manifest(run, "plane", argv, c);
    run.manifest()["config"]["field"] = field_json(plane->field());

    const auto full = PointSet::full(plane);
    const std::uint64_t t_lines = t_count(full);
    const std::uint64_t t_formula = q * (q + 1) * choose3(q);
    bool ok = t_lines == t_formula;
    std::optional<std::uint64_t> t_brute;
    if (q <= 9) {
        t_brute = t_count_brute(full);
        ok = ok && *t_brute == t_formula;
    }
    Json summary = {{"q", q},
                    {"points", plane->num_points()},
                    {"lines", plane->num_lines()},
                    {"T_linewise", t_lines},
                    {"T_formula", t_formula}};
    summary["T_bruteforce"] = t_brute ? Json(*t_brute) : Json(nullptr);
    summary["identity_ok"] = ok;
    if (o.lines) {
        std::ostringstream os;
        os << "line,kind,m_or_c,b,points\n";
        for (LineId l = 0; l < plane->num_lines(); ++l) {
            const Line ln = plane->line(l);
            os << l << ',' << (ln.kind == Line::Kind::Sloped ? "sloped" : "vertical") << ','
               << (ln.kind == Line::Kind::Sloped ? ln.m.index : ln.b.index) << ','
               << (ln.kind == Line::Kind::Sloped ? std::to_string(ln.b.index) : "") << ',';
            bool first = true;
            for (PointId p : plane->line_points(l)) {
                os << (first ? "" : " ") << p;
                first = false;
            }
            os << '\n';
        }
        run.write("lines.csv", os.str());
    }
    std::ostringstream par;
    write_point_set(par, parabola(plane));
    run.write("parabola.txt", par.str());
    run.write("plane.json", summary.dump(2) + "\n");
    run.manifest()["summary"] = summary;
    run.finish(ok ? "ok" : "assertion-failure");
    out << summary.dump() << '\n';
    if (!ok) throw AssertionFailure{"plane triple identity"};
    return kExitOk;
}

// stats ---------------------------------------------------------------------

int cmd_stats(const std::string& input, const Common& c, const std::vector<std::string>& argv, std::ostream& out) {
    const PointSet set = read_point_set_file(input);
    RunDir run("stats", c.out);
    base_manifest(run, "stats", argv, c);
    run.manifest()["config"]["input"] = input;
    run.manifest()["config"]["input_sha256"] = sha256_file(input);
    run.manifest()["config"]["field"] = field_json(set.plane().field());

    const TripleStats st = triple_stats(set);
    std::uint64_t mass3 = 0;
    for (PointId v : set.ids()) mass3 += weight_times3(set, v);
    bool ok = mass3 == 3 * st.T;
    std::optional<std::uint64_t> brute;
    if (set.size() <= 300) {
        brute = t_count_brute(set);
        ok = ok && *brute == st.T;
    }
    Json hist = Json::object();
    for (const auto& [rich, n] : st.histogram.counts) hist[std::to_string(rich)] = n;
    Json summary = {{"size", st.size},
                    {"T", st.T},
                    {"delta2", st.delta2},
                    {"avg_degree", rational_json(st.avg_degree)},
                    {"histogram", hist},
                    {"weight_sum_ok", mass3 == 3 * st.T}};
    summary["T_bruteforce"] = brute ? Json(*brute) : Json(nullptr);
    run.write("stats.json", summary.dump(2) + "\n");
    run.manifest()["summary"] = summary;
    run.finish(ok ? "ok" : "assertion-failure");
    out << summary.dump() << '\n';
    if (!ok) throw AssertionFailure{"triple count routes disagree"};
    return kExitOk;
}

// supersat verify -------------------------------------------------------------

struct SupersatOpts {
    std::uint32_t q = 0;
    std::string mode = "exhaustive";
    std::uint64_t trials = 10000;
    std::uint64_t seed = 0;
    std::uint32_t max_exhaustive_q = 5;
};

Json bound_report_json(const BoundReport& r) {
    Json j = {{"type", "bound"},
              {"check", r.check},
              {"q", r.q},
              {"n", r.n},
              {"bound", rational_json(r.bound)},
              {"actual", r.actual},
              {"slack", rational_json(r.slack)},
              {"verdict", to_string(r.verdict)}};
    if (r.witness) j["witness_hex"] = hex_bits(*r.witness);
    if (!r.note.empty()) j["note"] = r.note;
    return j;
}

int cmd_supersat(const SupersatOpts& o, const Common& c, const std::vector<std::string>& argv, std::ostream& out) {
    VerifyConfig vc;
    if (o.mode == "exhaustive")
        vc.mode = SweepMode::Exhaustive;
    else if (o.mode == "random")
        vc.mode = SweepMode::Random;
    else
        throw std::invalid_argument("--mode must be exhaustive or random");
    vc.trials = o.trials;
    vc.seed = o.seed;
    vc.threads = resolve_threads(c.threads);
    vc.max_exhaustive_q = o.max_exhaustive_q;
    if (vc.mode == SweepMode::Random && vc.trials == 0) throw std::invalid_argument("--trials must be positive");
    const FieldSpec field = FieldSpec::of_order(o.q);

    const VerifyResult res = verify_supersaturation(o.q, vc);
    RunDir run("supersat", c.out);
    base_manifest(run, "supersat verify", argv, c);
    Json& conf = run.manifest()["config"];
    conf["q"] = o.q;
    conf["field"] = field_json(field);
    conf["mode"] = o.mode;
    if (vc.mode == SweepMode::Random) {
        conf["trials"] = o.trials;
        conf["seed"] = o.seed;
        conf["rng_id"] = kRngId;
    }
    conf["max_exhaustive_q"] = o.max_exhaustive_q;

    std::ostringstream lines;
    for (const auto& r : res.per_size) {
        Json j = bound_report_json(r);
        j["sets"] = res.sets_per_size[r.n];
        lines << j.dump() << '\n';
    }
    for (const auto& t : res.tallies)
        lines << Json{{"type", "tally"},
                      {"check", t.check},
                      {"verified", t.verified},
                      {"vacuous", t.vacuous},
                      {"skipped", t.skipped},
                      {"violations", t.violations}}
                     .dump()
              << '\n';
    Json summary = {{"type", "summary"},
                    {"q", o.q},
                    {"mode", o.mode},
                    {"sets_checked", res.sets_checked},
                    {"violations", res.total_violations()}};
    lines << summary.dump() << '\n';
    run.write("reports.jsonl", lines.str());
    run.manifest()["summary"] = summary;
    const bool ok = res.total_violations() == 0;
    run.finish(ok ? "ok" : "assertion-failure");
    out << lines.str();
    if (!ok) throw AssertionFailure{"supersaturation violations"};
    return kExitOk;
}

// arcs ----------------------------------------------------------------------

struct CountOpts {
    std::uint32_t q = 0;
    std::optional<std::uint32_t> k;
    std::optional<std::uint64_t> cap;
    unsigned fanout_depth = 2;
    std::uint32_t max_q = 8;
};

std::vector<std::string> census_identities(std::uint32_t q, const CensusTable& t, bool full) {
    std::vector<std::string> failed;
    const std::uint64_t n = std::uint64_t{q} * q;
    auto count = [&](std::size_t k) { return k < t.counts.size() ? t.counts[k] : BigInt(0); };
    if (count(0) != 1) failed.push_back("counts[0] = 1");
    if (count(1) != BigInt(n)) failed.push_back("counts[1] = q^2");
    if (count(2) != binomial(n, 2)) failed.push_back("counts[2] = C(q^2,2)");
    if (t.counts.size() > 3 && count(3) != binomial(n, 3) - BigInt(q) * (q + 1) * choose3(q))
        failed.push_back("counts[3] = C(q^2,3) - q(q+1)C(q,3)");
    for (std::uint32_t k = 0; k <= q && k < t.counts.size(); ++k)
        if (count(k) < binomial(q, k)) failed.push_back("counts[" + std::to_string(k) + "] >= C(q,k)");
    if (full && t.total < (BigInt(1) << q)) failed.push_back("total >= 2^q");
    return failed;
}

int cmd_arcs_count(const CountOpts& o, const Common& c, const std::vector<std::string>& argv, std::ostream& out) {
    SearchConfig sc;
    sc.fanout_depth = o.fanout_depth;
    sc.cap = o.cap;
    sc.max_size = o.k;
    sc.threads = resolve_threads(c.threads);
    sc.max_q = o.max_q;
    const CensusTable t = census(o.q, sc);

    RunDir run("arcs-count", c.out);
    base_manifest(run, "arcs count", argv, c);
    Json& conf = run.manifest()["config"];
    conf["q"] = o.q;
    conf["field"] = field_json(FieldSpec::of_order(o.q));
    conf["k"] = o.k ? Json(*o.k) : Json(nullptr);
    conf["cap"] = o.cap ? Json(*o.cap) : Json(nullptr);
    conf["fanout_depth"] = o.fanout_depth;
    conf["max_q"] = o.max_q;

    std::ostringstream csv;
    csv << "k,count\n";
    if (o.k) {
        csv << *o.k << ',' << (*o.k < t.counts.size() ? to_string(t.counts[*o.k]) : "0") << '\n';
    } else {
        for (std::size_t k = 0; k < t.counts.size(); ++k) csv << k << ',' << to_string(t.counts[k]) << '\n';
        csv << "total," << to_string(t.total) << '\n';
    }
    run.write("census.csv", csv.str());
    std::ostringstream timing;
    timing << "seconds,nodes\n" << t.seconds << ',' << t.nodes << '\n';
    run.write("timing.csv", timing.str(), false);

    std::vector<std::string> failed;
    if (t.complete) failed = census_identities(o.q, t, !o.k);
    Json summary = {{"q", o.q}, {"complete", t.complete}, {"full_table", t.complete && !o.k}};
    summary["total"] = to_string(t.total);
    summary["max_arc"] = t.max_arc;
    summary["identities_failed"] = failed;
    run.manifest()["summary"] = summary;
    run.finish(failed.empty() ? "ok" : "assertion-failure");
    out << csv.str();
    if (!failed.empty()) throw AssertionFailure{"census identity: " + failed.front()};
    return kExitOk;
}

struct MaxOpts {
    std::uint32_t q = 0;
    std::uint32_t max_q = kMaxArcOrder;
};

int cmd_arcs_max(const MaxOpts& o, const Common& c, const std::vector<std::string>& argv, std::ostream& out) {
    const MaxArcResult r = max_arc(o.q, o.max_q);
    RunDir run("arcs-max", c.out);
    base_manifest(run, "arcs max", argv, c);
    Json& conf = run.manifest()["config"];
    conf["q"] = o.q;
    conf["field"] = field_json(r.witness.set.plane().field());
    conf["max_q"] = o.max_q;
    std::ostringstream w;
    write_point_set(w, r.witness.set);
    run.write("witness.txt", w.str());
    const bool ok = r.witness.certified && r.witness.set.size() == r.size;
    Json summary = {{"q", o.q}, {"size", r.size}, {"certified", ok}, {"nodes", r.nodes}};
    run.write("max.json", summary.dump(2) + "\n");
    run.manifest()["summary"] = summary;
    run.finish(ok ? "ok" : "assertion-failure");
    out << "size," << r.size << '\n';
    if (!ok) throw AssertionFailure{"witness is not an arc"};
    return kExitOk;
}

// containers run --------------------------------------------------------------

struct ContainersOpts {
    std::uint32_t q = 0;
    std::string delta = "1/2";
    std::string gamma = "1";
    std::string mode = "cont1";
    std::optional<std::string> epsilon;
    std::optional<std::uint64_t> budget;
    std::string hypothesis_c = "1";
    std::uint32_t max_q = 13;
    std::uint32_t coverage_max_q = 7;
    bool leaf_files = false;
};

int cmd_containers(const ContainersOpts& o, const Common& c, const std::vector<std::string>& argv, std::ostream& out) {
    TreeConfig tc;
    if (o.mode == "cont1")
        tc.mode = ContainerMode::Cont1;
    else if (o.mode == "cont2")
        tc.mode = ContainerMode::Cont2;
    else
        throw std::invalid_argument("--mode must be cont1 or cont2");
    tc.delta = parse_rational(o.delta);
    tc.gamma = parse_rational(o.gamma);
    if (o.epsilon) tc.epsilon_override = parse_rational(*o.epsilon);
    tc.fixed_budget = o.budget;
    tc.hypothesis_c = parse_rational(o.hypothesis_c);
    tc.threads = resolve_threads(c.threads);
    tc.max_q = o.max_q;
    tc.coverage_max_q = o.coverage_max_q;
    const TreeReport rep = run_tree(o.q, tc);

    RunDir run("containers", c.out);
    base_manifest(run, "containers run", argv, c);
    Json& conf = run.manifest()["config"];
    conf["q"] = o.q;
    conf["field"] = field_json(FieldSpec::of_order(o.q));
    conf["mode"] = o.mode;
    conf["delta"] = to_string(tc.delta);
    conf["gamma"] = to_string(tc.gamma);
    conf["epsilon"] = o.epsilon ? Json(*o.epsilon) : Json(nullptr);
    conf["budget"] = o.budget ? Json(*o.budget) : Json(nullptr);
    conf["hypothesis_c"] = to_string(tc.hypothesis_c);
    conf["max_q"] = o.max_q;
    conf["coverage_max_q"] = o.coverage_max_q;

    Json family = {{"q", o.q}, {"mode", o.mode}, {"nodes", rep.nodes.size()}, {"leaves", Json::array()}};
    std::ostringstream hex;
    hex << point_set_header(FieldSpec::of_order(o.q)) << '\n';
    for (std::uint32_t id : rep.leaves) {
        const TreeNode& n = rep.nodes[id];
        family["leaves"].push_back({{"id", id},
                                    {"parent", n.parent},
                                    {"level", n.level},
                                    {"phase", to_string(n.phase)},
                                    {"size", n.set.size()},
                                    {"T", n.T},
                                    {"fingerprint_size", n.fingerprint_size},
                                    {"complete", n.complete},
                                    {"overflow", n.overflow},
                                    {"terminal", n.terminal},
                                    {"capped", n.capped}});
        hex << "leaf=" << id << " hex=" << hex_bits(n.set) << '\n';
        if (o.leaf_files) {
            std::ostringstream one;
            write_point_set(one, n.set);
            run.write("leaves/leaf-" + std::to_string(id) + ".txt", one.str());
        }
    }
    run.write("family.json", family.dump(1) + "\n");
    run.write("leaves.hex", hex.str());

    std::ostringstream levels;
    levels << "level,phase,containers,duplicates,max_size,max_T,expanded,conditions_ok_fraction\n";
    for (const auto& l : rep.levels) {
        levels << l.level << ',' << to_string(l.phase) << ',' << l.containers << ',' << l.duplicates << ','
               << l.max_size << ',' << l.max_T << ',' << l.expanded << ',';
        if (l.expanded)
            levels << to_string(Rational(l.conditions_ok, l.expanded));
        levels << '\n';
    }
    run.write("levels.csv", levels.str());

    Json summary = {{"q", o.q},
                    {"mode", o.mode},
                    {"delta", to_string(tc.delta)},
                    {"gamma", to_string(tc.gamma)},
                    {"nodes", rep.nodes.size()},
                    {"leaves", rep.leaves.size()},
                    {"capped", rep.capped},
                    {"coverage_checked", rep.coverage.checked},
                    {"coverage_arcs", rep.coverage.arcs},
                    {"coverage_misses", rep.coverage.misses},
                    {"density_checked", rep.density_checked},
                    {"density_violations", rep.density_violations},
                    {"size_check_applicable", rep.size_check_applicable},
                    {"size_checked", rep.size_checked},
                    {"size_violations", rep.size_violations},
                    {"log2_family", rep.log2_family},
                    {"reference_exponent", rep.reference_exponent}};
    if (tc.mode == ContainerMode::Cont2) {
        summary["hypothesis_holds"] = rep.hypothesis.holds;
        summary["hypothesis_lower"] = rep.hypothesis.lower.str();
    }
    if (rep.coverage.first_miss) summary["first_miss_hex"] = hex_bits(*rep.coverage.first_miss);
    run.manifest()["summary"] = summary;
    std::ostringstream timing;
    timing << "seconds\n" << rep.seconds << '\n';
    run.write("timing.csv", timing.str(), false);
    const bool ok = rep.coverage.misses == 0 && rep.density_violations == 0 && rep.size_violations == 0;
    run.finish(ok ? "ok" : "assertion-failure");
    out << summary.dump() << '\n';
    if (!ok) throw AssertionFailure{"container properties"};
    return kExitOk;
}

// random-arcs -----------------------------------------------------------------

struct RandomOpts {
    std::uint32_t q = 0;
    std::string a = "-1/4";
    std::string f = "log";
    std::uint64_t trials = 1000;
    std::uint64_t seed = 0;
    std::uint32_t max_q = 13;
    std::optional<std::string> family_size;
    bool quiet = false;
};

int cmd_random(const RandomOpts& o, const Common& c, const std::vector<std::string>& argv, std::ostream& out) {
    ExperimentConfig ec;
    ec.q = o.q;
    ec.a = parse_rational(o.a);
    ec.f = Growth::parse(o.f);
    ec.trials = o.trials;
    ec.seed = o.seed;
    ec.threads = resolve_threads(c.threads);
    ec.max_q = o.max_q;
    if (o.family_size) ec.family_size = BigInt(*o.family_size);
    FieldSpec::of_order(o.q);
    const TailReport rep = tail_estimate(ec);

    RunDir run("random-arcs", c.out);
    base_manifest(run, "random-arcs", argv, c);
    Json& conf = run.manifest()["config"];
    conf["q"] = o.q;
    conf["field"] = field_json(FieldSpec::of_order(o.q));
    conf["a"] = to_string(ec.a);
    conf["f"] = ec.f.name();
    conf["trials"] = o.trials;
    conf["seed"] = o.seed;
    conf["rng_id"] = ec.rng_id;
    conf["max_q"] = o.max_q;
    conf["family_size"] = o.family_size ? Json(*o.family_size) : Json(nullptr);

    std::ostringstream records, timing;
    timing << "trial,seconds\n";
    for (const auto& r : rep.records) {
        records << Json{{"trial", r.index}, {"size", r.size}, {"arc", r.arc}}.dump() << '\n';
        timing << r.index << ',' << r.seconds << '\n';
    }
    Json summary = {{"type", "summary"},
                    {"q", o.q},
                    {"a", to_string(ec.a)},
                    {"f", ec.f.name()},
                    {"p", rep.p.str()},
                    {"threshold", rep.threshold},
                    {"qpf", rep.qpf},
                    {"m", rep.m},
                    {"trials", o.trials},
                    {"hits", rep.hits},
                    {"empirical_tail", to_string(rep.empirical_tail)},
                    {"ci_low", rep.ci_low},
                    {"ci_high", rep.ci_high},
                    {"bound_4e_over_f", rep.bound_4e_over_f},
                    {"max_arc_plane", rep.max_arc_plane},
                    {"invariant_violations", rep.invariant_violations}};
    if (rep.family_bound) {
        summary["family_bound"] = *rep.family_bound;
        summary["family_size_substituted"] = true;
    }
    run.write("records.jsonl", records.str());
    run.write("summary.json", summary.dump(2) + "\n");
    run.write("timing.csv", timing.str(), false);
    run.manifest()["summary"] = summary;
    const bool ok = rep.invariant_violations == 0;
    run.finish(ok ? "ok" : "assertion-failure");
    if (!o.quiet) out << records.str();
    out << summary.dump() << '\n';
    if (!ok) throw AssertionFailure{"a(Q_p) exceeds the plane maximum"};
    return kExitOk;
}

// report ----------------------------------------------------------------------

int cmd_report(const std::vector<std::string>& dirs, const std::string& delta, const Common& c,
               const std::vector<std::string>& argv, std::ostream& out) {
    if (dirs.empty()) throw std::invalid_argument("report needs at least one run directory");
    ReportOptions ro;
    ro.delta = parse_rational(delta);
    std::vector<fs::path> paths(dirs.begin(), dirs.end());
    const auto rows = build_report(paths, ro);

    RunDir run("report", c.out);
    base_manifest(run, "report", argv, c);
    run.manifest()["config"]["inputs"] = dirs;
    run.manifest()["config"]["delta"] = to_string(ro.delta);
    const std::string csv = report_csv(rows);
    run.write("report.csv", csv);
    run.write("report.json", report_json(rows).dump(2) + "\n");
    std::size_t failed = 0;
    for (const auto& r : rows) failed += r.verdict == RowVerdict::AssertedFail;
    run.manifest()["summary"] = {{"rows", rows.size()}, {"asserted_failures", failed}};
    run.finish(failed ? "assertion-failure" : "ok");
    out << csv;
    if (failed) throw AssertionFailure{"asserted report rows failed"};
    return kExitOk;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    std::vector<std::string> args(argv, argv + argc);
    CLI::App app{"Arcs in the affine plane: collinear triples, census, containers, random subsets"};
    app.name("arclab");
    app.set_config("--config", "", "TOML/INI config file ([subcommand] sections; flags take precedence)");
    app.require_subcommand(1);

    Common common;

    FieldOpts fo;
    auto* field = app.add_subcommand("field", "Field tables and axiom checks");
    field->add_option("--q", fo.q, "Field order")->required();
    field->add_option("--modulus", fo.modulus, "Irreducible modulus coefficients c0,...,cr");
    field->add_flag("--tables", fo.tables, "Write addition and multiplication tables");
    add_common(field, common);

    PlaneOpts po;
    auto* plane = app.add_subcommand("plane", "Plane summary and the triple identity");
    plane->add_option("--q", po.q, "Field order")->required();
    plane->add_option("--modulus", po.modulus, "Irreducible modulus coefficients c0,...,cr");
    plane->add_flag("--lines", po.lines, "Write the incidence table");
    add_common(plane, common);

    std::string stats_input;
    auto* stats = app.add_subcommand("stats", "Triple statistics of a point set file");
    stats->add_option("input,--input", stats_input, "PointSet file")->required()->check(CLI::ExistingFile);
    add_common(stats, common);

    SupersatOpts so;
    auto* supersat = app.add_subcommand("supersat", "Supersaturation checks");
    supersat->require_subcommand(1);
    auto* verify = supersat->add_subcommand("verify", "Sweep subsets and check the lower bounds");
    verify->add_option("--q", so.q, "Field order")->required();
    verify->add_option("--mode", so.mode, "exhaustive or random")->capture_default_str();
    verify->add_option("--trials", so.trials, "Random mode sample count")->capture_default_str();
    verify->add_option("--seed", so.seed, "Random mode seed")->capture_default_str();
    verify->add_option("--max-exhaustive-q", so.max_exhaustive_q, "Guard for exhaustive sweeps")->capture_default_str();
    add_common(verify, common);

    CountOpts co;
    MaxOpts mo;
    auto* arcs = app.add_subcommand("arcs", "Arc census and largest arcs");
    arcs->require_subcommand(1);
    auto* count = arcs->add_subcommand("count", "Number of arcs of each size");
    count->add_option("--q", co.q, "Field order")->required();
    count->add_option("--k", co.k, "Only arcs of this size");
    count->add_option("--cap", co.cap, "Stop after this many arcs");
    count->add_option("--fanout-depth", co.fanout_depth, "Depth at which work is split")->capture_default_str();
    count->add_option("--max-q", co.max_q, "Guard on q")->capture_default_str();
    add_common(count, common);
    auto* maxc = arcs->add_subcommand("max", "Largest arc with a witness");
    maxc->add_option("--q", mo.q, "Field order")->required();
    maxc->add_option("--max-q", mo.max_q, "Guard on q")->capture_default_str();
    add_common(maxc, common);

    ContainersOpts ko;
    auto* containers = app.add_subcommand("containers", "Container trees");
    containers->require_subcommand(1);
    auto* crun = containers->add_subcommand("run", "Build a container tree and check it");
    crun->add_option("--q", ko.q, "Field order")->required();
    crun->add_option("--delta", ko.delta, "Schedule step")->capture_default_str();
    crun->add_option("--gamma", ko.gamma, "Density parameter for cont2")->capture_default_str();
    crun->add_option("--mode", ko.mode, "cont1 or cont2")->capture_default_str();
    crun->add_option("--epsilon", ko.epsilon, "Override the density factor");
    crun->add_option("--budget", ko.budget, "Override the fingerprint budget");
    crun->add_option("--hypothesis-c", ko.hypothesis_c, "Constant in the cont2 hypothesis")->capture_default_str();
    crun->add_option("--max-q", ko.max_q, "Guard on q")->capture_default_str();
    crun->add_option("--coverage-max-q", ko.coverage_max_q, "Largest q for the coverage check")->capture_default_str();
    crun->add_flag("--leaf-files", ko.leaf_files, "Also write one PointSet file per leaf");
    add_common(crun, common);

    RandomOpts ro;
    auto* random = app.add_subcommand("random-arcs", "Largest arcs in random subsets");
    random->add_option("--q", ro.q, "Field order")->required();
    random->add_option("--a", ro.a, "Exponent: p = q^a")->capture_default_str();
    random->add_option("--f", ro.f, "Growth function: log, loglog, sqrt-log, const:<c>")->capture_default_str();
    random->add_option("--trials", ro.trials, "Number of trials")->capture_default_str();
    random->add_option("--seed", ro.seed, "Seed")->capture_default_str();
    random->add_option("--max-q", ro.max_q, "Guard on q")->capture_default_str();
    random->add_option("--family-size", ro.family_size, "Measured container family size for the bound");
    random->add_flag("--quiet", ro.quiet, "Print only the summary line");
    add_common(random, common);

    std::vector<std::string> report_dirs;
    std::string report_delta = "3/10";
    auto* report = app.add_subcommand("report", "Consolidate run directories into one table");
    report->add_option("runs", report_dirs, "Run directories")->required();
    report->add_option("--delta", report_delta, "Step used by the upper-bound evaluators")->capture_default_str();
    add_common(report, common);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (*field) return cmd_field(fo, common, args, out);
        if (*plane) return cmd_plane(po, common, args, out);
        if (*stats) return cmd_stats(stats_input, common, args, out);
        if (*verify) return cmd_supersat(so, common, args, out);
        if (*count) return cmd_arcs_count(co, common, args, out);
        if (*maxc) return cmd_arcs_max(mo, common, args, out);
        if (*crun) return cmd_containers(ko, common, args, out);
        if (*random) return cmd_random(ro, common, args, out);
        if (*report) return cmd_report(report_dirs, report_delta, common, args, out);
    } catch (const AssertionFailure& e) {
        err << "arclab: assertion failed: " << e.what << '\n';
        return kExitAssertion;
    } catch (const std::exception& e) {
        err << "arclab: " << e.what() << '\n';
        return kExitUsage;
    }
    err << "arclab: no subcommand\n";
    return kExitUsage;
}

}  // namespace arclab::cli
