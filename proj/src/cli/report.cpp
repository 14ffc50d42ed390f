#include "arclab/cli/report.hpp"

#include "arclab/bounds.hpp"
#include "arclab/stats.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace arclab::cli {

namespace fs = std::filesystem;
using arclab::to_string;

std::string to_string(RowVerdict v) {
    switch (v) {
        case RowVerdict::AssertedPass: return "asserted-pass";
        case RowVerdict::AssertedFail: return "asserted-fail";
        case RowVerdict::ReportOnly: return "report-only";
        case RowVerdict::SkippedHypothesis: return "skipped-hypothesis";
    }
    return "";
}

namespace {

std::string read_file(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    if (!in) throw ManifestError("cannot read " + p.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

RowVerdict asserted(bool ok) { return ok ? RowVerdict::AssertedPass : RowVerdict::AssertedFail; }
std::string yes_no(bool b) { return b ? "yes" : "no"; }

std::string sci(double v) {
    std::ostringstream os;
    os.precision(6);
    os << v;
    return os.str();
}

std::vector<BigInt> read_census(const fs::path& dir) {
    std::istringstream in(read_file(dir / "census.csv"));
    std::string line;
    std::getline(in, line);
    if (line != "k,count") throw ManifestError("census.csv: bad header in " + dir.string());
    std::vector<BigInt> counts;
    while (std::getline(in, line)) {
        const auto comma = line.find(',');
        if (comma == std::string::npos) throw ManifestError("census.csv: bad row '" + line + "'");
        if (line.compare(0, comma, "total") == 0) continue;
        try {
            if (std::stoul(line.substr(0, comma)) != counts.size()) throw ManifestError("census.csv: rows out of order");
            counts.emplace_back(line.substr(comma + 1));
        } catch (const std::logic_error&) {
            throw ManifestError("census.csv: bad row '" + line + "'");
        }
    }
    return counts;
}

void census_rows(const std::string& run, const Json& m, const fs::path& dir, const ReportOptions& opt,
                 std::vector<ReportRow>& rows) {
    const auto q = m.at("config").at("q").get<std::uint32_t>();
    const std::string qs = std::to_string(q);
    if (!m.at("summary").value("full_table", false)) {
        rows.push_back({run, "|A(" + qs + ")| (partial census)", "", "", "census", "", RowVerdict::SkippedHypothesis});
        return;
    }
    const auto counts = read_census(dir);
    BigInt total = 0;
    for (const auto& c : counts) total += c;

    const BigInt two_q = BigInt(1) << q;
    rows.push_back({run, "|A(" + qs + ")| >= 2^" + qs, to_string(total), to_string(two_q), "trivial-lower",
                    yes_no(total >= two_q), asserted(total >= two_q)});
    for (std::uint32_t k = 0; k <= q && k < counts.size(); ++k) {
        const BigInt b = binomial(q, k);
        rows.push_back({run, "|A(" + qs + "," + std::to_string(k) + ")| >= C(" + qs + "," + std::to_string(k) + ")",
                        to_string(counts[k]), to_string(b), "binomial-lower", yes_no(counts[k] >= b),
                        asserted(counts[k] >= b)});
    }

    const ArcCountBound m1 = arc_count_bound(q, opt.delta);
    ReportRow r1{run, "|A(" + qs + ")| <= 2^(" + m1.exponent.str() + ")", to_string(total), "", "arc-count-upper", "",
                 RowVerdict::ReportOnly};
    if (m1.floor_value) {
        r1.bound = to_string(*m1.floor_value);
        r1.holds = yes_no(total <= *m1.floor_value);
    } else {
        r1.bound = "2^(" + m1.exponent.str() + ")";
        const BigInt lo = floor_of(m1.exponent);
        if (lo < 100000 && total < (BigInt(1) << static_cast<unsigned>(lo))) r1.holds = "yes";
    }
    rows.push_back(r1);

    for (std::uint64_t k = 1; k < counts.size(); ++k) {
        const SizedArcsBound m2 = sized_arcs_bound(q, k, opt.delta);
        rows.push_back({run,
                        "|A(" + qs + "," + std::to_string(k) + ")| <= C(" + to_string(m2.size_ceil) + "," +
                            std::to_string(k) + ")",
                        to_string(counts[k]), to_string(m2.value), "arc-count-by-size", yes_no(counts[k] <= m2.value),
                        m2.hypothesis ? RowVerdict::ReportOnly : RowVerdict::SkippedHypothesis});
    }
    for (std::uint64_t k = 1; k < counts.size() && k * k < q; ++k) {
        const SmallKCurve s = small_k_curve(q, k);
        rows.push_back({run, "|A(" + qs + "," + std::to_string(k) + ")| vs C(q^2,k) exp(-k^3/q)", to_string(counts[k]),
                        sci(s.value), "small-k-curve", yes_no(static_cast<double>(counts[k]) <= s.value),
                        RowVerdict::ReportOnly});
    }
}

void supersat_rows(const std::string& run, const Json& m, const fs::path& dir, std::vector<ReportRow>& rows) {
    const auto q = m.at("config").at("q").get<std::uint32_t>();
    std::istringstream in(read_file(dir / "reports.jsonl"));
    std::string line;
    while (std::getline(in, line)) {
        Json j;
        try {
            j = Json::parse(line);
        } catch (const Json::exception&) {
            throw ManifestError("reports.jsonl: bad line in " + dir.string());
        }
        if (j.value("type", "") != "tally") continue;
        const std::string check = j.at("check").get<std::string>();
        const auto violations = j.at("violations").get<std::uint64_t>();
        std::string tag = "supersaturation";
        if (check.rfind("few-triples", 0) == 0) tag = "size-from-few-triples";
        if (check.rfind("two-branch", 0) == 0) tag = "size-two-branch";
        const auto verified = j.at("verified").get<std::uint64_t>();
        rows.push_back({run,
                        "violations of " + check + " at q=" + std::to_string(q) + " (" + std::to_string(verified) +
                            " checked)",
                        std::to_string(violations), "0", tag, yes_no(violations == 0),
                        verified || violations ? asserted(violations == 0) : RowVerdict::SkippedHypothesis});
    }
}

}  // namespace

std::vector<ReportRow> build_report(const std::vector<fs::path>& dirs, const ReportOptions& opt) {
    std::vector<ReportRow> rows;
    for (const auto& dir : dirs) {
        const Json m = load_manifest(dir);
        const std::string run = dir.filename().string();
        const std::string sub = m.value("subcommand", "");
        const Json& s = m.at("summary");
        if (sub == "arcs count") {
            census_rows(run, m, dir, opt, rows);
        } else if (sub == "arcs max") {
            const auto q = s.at("q").get<std::uint64_t>();
            const std::uint64_t oval = q % 2 ? q + 1 : q + 2;
            const auto size = s.at("size").get<std::uint64_t>();
            rows.push_back({run, "largest arc in F_" + std::to_string(q) + "^2", std::to_string(size),
                            std::to_string(oval), "oval-bound", yes_no(size <= oval), RowVerdict::ReportOnly});
        } else if (sub == "supersat verify") {
            supersat_rows(run, m, dir, rows);
        } else if (sub == "plane") {
            const auto t = s.at("T_linewise").get<std::uint64_t>();
            const auto f = s.at("T_formula").get<std::uint64_t>();
            rows.push_back({run, "T(F_" + std::to_string(s.at("q").get<std::uint64_t>()) + "^2) = q(q+1)C(q,3)",
                            std::to_string(t), std::to_string(f), "plane-identity", yes_no(t == f),
                            RowVerdict::ReportOnly});
        } else if (sub == "containers run") {
            const std::string tag = "q=" + std::to_string(s.at("q").get<std::uint64_t>()) + " " +
                                    s.at("mode").get<std::string>() + " delta=" + s.at("delta").get<std::string>();
            if (s.at("coverage_checked").get<bool>()) {
                const auto misses = s.at("coverage_misses").get<std::uint64_t>();
                rows.push_back({run, "arcs outside every leaf (" + tag + ")", std::to_string(misses), "0",
                                "container-coverage", yes_no(misses == 0), RowVerdict::ReportOnly});
            }
            const double lf = s.at("log2_family").get<double>();
            const double ref = s.at("reference_exponent").get<double>();
            rows.push_back({run, "log2 |family| (" + tag + ")", sci(lf), sci(ref), "container-count",
                            yes_no(lf <= ref), RowVerdict::ReportOnly});
        } else if (sub == "random-arcs") {
            const std::string what = "P[a(Q_p) >= " + std::to_string(s.at("m").get<std::uint64_t>()) + "] at q=" +
                                     std::to_string(s.at("q").get<std::uint64_t>()) + " f=" +
                                     s.at("f").get<std::string>();
            const Rational tail = parse_rational(s.at("empirical_tail").get<std::string>());
            const std::string bound = s.at("bound_4e_over_f").get<std::string>();
            rows.push_back({run, what, to_string(tail), bound, "random-tail",
                            yes_no(to_double(tail) <= std::stod(bound)), RowVerdict::ReportOnly});
            if (s.contains("family_bound")) {
                const std::string fb = s.at("family_bound").get<std::string>();
                rows.push_back({run, what + " (measured family size)", to_string(tail), fb, "random-tail",
                                yes_no(to_double(tail) <= std::stod(fb)), RowVerdict::ReportOnly});
            }
        }
    }
    return rows;
}

namespace {

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

}  // namespace

std::string report_csv(const std::vector<ReportRow>& rows) {
    std::ostringstream os;
    os << "run,quantity,exact,bound,tag,holds,verdict\n";
    for (const auto& r : rows)
        os << csv_field(r.run) << ',' << csv_field(r.quantity) << ',' << csv_field(r.exact) << ',' << csv_field(r.bound)
           << ',' << csv_field(r.tag) << ',' << r.holds << ',' << to_string(r.verdict) << '\n';
    return os.str();
}

Json report_json(const std::vector<ReportRow>& rows) {
    Json a = Json::array();
    for (const auto& r : rows)
        a.push_back({{"run", r.run},
                     {"quantity", r.quantity},
                     {"exact", r.exact},
                     {"bound", r.bound},
                     {"tag", r.tag},
                     {"holds", r.holds},
                     {"verdict", to_string(r.verdict)}});
    return a;
}

}  // namespace arclab::cli
