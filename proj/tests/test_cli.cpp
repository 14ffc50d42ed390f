#include "doctest.h"

#include "arclab/cli/app.hpp"
#include "arclab/cli/manifest.hpp"
#include "arclab/cli/report.hpp"
#include "arclab/io.hpp"
#include "arclab/rng.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <sys/wait.h>
#include <unistd.h>

using namespace arclab;
using namespace arclab::cli;
namespace fs = std::filesystem;

namespace {

struct Result {
    int code;
    std::string out, err;
};

Result call(std::vector<std::string> args) {
    args.insert(args.begin(), "arclab");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

fs::path scratch() {
    static const fs::path root = [] {
        fs::path p = fs::temp_directory_path() / ("arclab-cli-test-" + std::to_string(::getpid()));
        fs::remove_all(p);
        fs::create_directories(p);
        ::setenv("ARCLAB_DATA_DIR", (p / "runs").c_str(), 1);
        return p;
    }();
    return root;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string dir(const std::string& name) { return (scratch() / name).string(); }

}  // namespace

TEST_CASE("arcs count --q 2") {
    auto r = call({"arcs", "count", "--q", "2", "--out", dir("count2")});
    CHECK(r.code == kExitOk);
    CHECK(r.out == "k,count\n0,1\n1,4\n2,6\n3,4\n4,1\ntotal,16\n");
    auto m = load_manifest(dir("count2"));
    CHECK(m["status"] == "ok");
    CHECK(m["config"]["q"] == 2);
    CHECK(m["config"]["field"]["p"] == 2);
    CHECK(slurp(fs::path(dir("count2")) / "census.csv") == r.out);
}

TEST_CASE("usage errors exit 2") {
    auto r = call({"supersat", "verify", "--q", "99"});
    CHECK(r.code == kExitUsage);
    CHECK(r.err.find("99 is not a prime power") != std::string::npos);
    CHECK(call({"arcs", "count", "--q", "9"}).code == kExitUsage);
    CHECK(call({"arcs", "count", "--q", "3", "--bogus"}).code == kExitUsage);
    CHECK(call({}).code == kExitUsage);
    CHECK(call({"arcs"}).code == kExitUsage);
    CHECK(call({"report"}).code == kExitUsage);
    CHECK(call({"random-arcs", "--q", "5", "--trials", "0"}).code == kExitUsage);
    CHECK(call({"random-arcs", "--q", "5", "--f", "exp"}).code == kExitUsage);
    CHECK(call({"containers", "run", "--q", "3", "--mode", "cont3"}).code == kExitUsage);
    CHECK(call({"containers", "run", "--q", "3", "--delta", "0"}).code == kExitUsage);
    CHECK(call({"--help"}).code == kExitOk);
}

TEST_CASE("the binary reports exit codes") {
    scratch();
    const std::string cmd = std::string(ARCLAB_TOOL) + " supersat verify --q 99 >/dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    REQUIRE(WIFEXITED(status));
    CHECK(WEXITSTATUS(status) == 2);
    const int ok = std::system((std::string(ARCLAB_TOOL) + " arcs count --q 2 >/dev/null").c_str());
    CHECK(WEXITSTATUS(ok) == 0);
}

TEST_CASE("supersat verify exhaustive") {
    auto r = call({"supersat", "verify", "--q", "4", "--mode", "exhaustive", "--out", dir("super4")});
    CHECK(r.code == kExitOk);
    CHECK(r.out.find("\"sets_checked\":65536,\"violations\":0") != std::string::npos);
    auto rr = call({"supersat", "verify", "--q", "7", "--mode", "random", "--trials", "2000", "--seed", "3",
                    "--threads", "2", "--out", dir("super7")});
    CHECK(rr.code == kExitOk);
    CHECK(load_manifest(dir("super7"))["config"]["rng_id"] == std::string(kRngId));
}

TEST_CASE("config file with flag precedence") {
    const fs::path cfg = scratch() / "arcs.toml";
    std::ofstream(cfg) << "[arcs.count]\nq = 3\nfanout-depth = 1\n";
    auto r = call({"--config", cfg.string(), "arcs", "count", "--out", dir("cfg3")});
    CHECK(r.code == kExitOk);
    CHECK(r.out.find("total,172") != std::string::npos);
    auto m = load_manifest(dir("cfg3"));
    CHECK(m["config"]["q"] == 3);
    CHECK(m["config"]["fanout_depth"] == 1);
    auto o = call({"--config", cfg.string(), "arcs", "count", "--q", "2", "--out", dir("cfg2")});
    CHECK(o.out.find("total,16") != std::string::npos);
    CHECK(load_manifest(dir("cfg2"))["config"]["fanout_depth"] == 1);
}

TEST_CASE("arcs count --k, --cap and arcs max") {
    auto r = call({"arcs", "count", "--q", "5", "--k", "3"});
    CHECK(r.code == kExitOk);
    CHECK(r.out == "k,count\n3,2000\n");
    auto c = call({"arcs", "count", "--q", "4", "--cap", "50", "--out", dir("cap")});
    CHECK(c.code == kExitOk);
    CHECK(load_manifest(dir("cap"))["summary"]["complete"] == false);
    auto mx = call({"arcs", "max", "--q", "7", "--out", dir("max7")});
    CHECK(mx.out == "size,8\n");
    auto w = read_point_set_file((fs::path(dir("max7")) / "witness.txt").string());
    CHECK(w.size() == 8);
}

TEST_CASE("reruns give identical deterministic outputs") {
    call({"arcs", "count", "--q", "4", "--out", dir("rep-a")});
    call({"arcs", "count", "--q", "4", "--threads", "3", "--fanout-depth", "1", "--out", dir("rep-b")});
    CHECK(slurp(fs::path(dir("rep-a")) / "census.csv") == slurp(fs::path(dir("rep-b")) / "census.csv"));

    const std::vector<std::string> base = {"random-arcs", "--q", "7", "--a", "-1/4", "--f", "const:1",
                                           "--trials", "300", "--seed", "9"};
    auto one = base, three = base;
    one.insert(one.end(), {"--out", dir("rnd-1")});
    three.insert(three.end(), {"--threads", "3", "--out", dir("rnd-3")});
    auto r1 = call(one), r3 = call(three);
    CHECK(r1.code == kExitOk);
    CHECK(r1.out == r3.out);
    for (const char* f : {"records.jsonl", "summary.json"})
        CHECK(slurp(fs::path(dir("rnd-1")) / f) == slurp(fs::path(dir("rnd-3")) / f));
    auto m = load_manifest(dir("rnd-1"));
    CHECK(m["config"]["rng_id"] == std::string(kRngId));
    CHECK(m["summary"]["m"] == 5);  // ceil(7^(3/4)) = ceil(4.30)
    bool timing_flagged = false;
    for (const auto& o : m["outputs"])
        if (o["file"] == "timing.csv") timing_flagged = o["deterministic"] == false;
    CHECK(timing_flagged);
}

TEST_CASE("stats subcommand") {
    auto plane = Plane::of_order(3);
    const fs::path f = scratch() / "full3.txt";
    write_point_set_file(f.string(), PointSet::full(plane));
    auto r = call({"stats", f.string(), "--out", dir("stats")});
    CHECK(r.code == kExitOk);
    auto j = Json::parse(r.out);
    CHECK(j["size"] == 9);
    CHECK(j["T"] == 12);
    CHECK(j["delta2"] == 1);
    CHECK(j["avg_degree"] == "4");
    CHECK(j["histogram"]["3"] == 12);
    CHECK(call({"stats", (scratch() / "missing.txt").string()}).code == kExitUsage);
}

TEST_CASE("field and plane subcommands") {
    auto f = call({"field", "--q", "9", "--tables", "--out", dir("f9")});
    CHECK(f.code == kExitOk);
    auto j = Json::parse(f.out);
    CHECK(j["axioms_ok"] == true);
    CHECK(j["axiom_triples_checked"] == 729);
    CHECK(fs::exists(fs::path(dir("f9")) / "mul.csv"));
    CHECK(call({"field", "--q", "9", "--modulus", "1,0,1"}).code == kExitOk);  // x^2 + 1 over F_3
    CHECK(call({"field", "--q", "9", "--modulus", "2,0,1"}).code == kExitUsage);  // x^2 - 1 is reducible
    auto p = call({"plane", "--q", "4", "--lines", "--out", dir("p4")});
    CHECK(p.code == kExitOk);
    CHECK(Json::parse(p.out)["T_formula"] == 80);
}

TEST_CASE("containers run") {
    auto r = call({"containers", "run", "--q", "4", "--delta", "1/2", "--mode", "cont2", "--gamma", "1", "--leaf-files",
                   "--out", dir("cont")});
    CHECK(r.code == kExitOk);
    auto j = Json::parse(r.out);
    CHECK(j["coverage_arcs"] == 1793);
    CHECK(j["coverage_misses"] == 0);
    CHECK(j["density_violations"] == 0);
    auto m = load_manifest(dir("cont"));
    auto fam = Json::parse(slurp(fs::path(dir("cont")) / "family.json"));
    CHECK(fam["leaves"].size() == j["leaves"]);
    const auto first = fam["leaves"][0]["id"].get<std::uint32_t>();
    auto leaf = read_point_set_file((fs::path(dir("cont")) / ("leaves/leaf-" + std::to_string(first) + ".txt")).string());
    CHECK(leaf.size() == fam["leaves"][0]["size"].get<std::size_t>());
    CHECK(slurp(fs::path(dir("cont")) / "levels.csv").rfind("level,phase,containers", 0) == 0);
}

TEST_CASE("report") {
    REQUIRE(call({"arcs", "count", "--q", "3", "--out", dir("rc3")}).code == kExitOk);
    REQUIRE(call({"arcs", "count", "--q", "5", "--out", dir("rc5")}).code == kExitOk);
    auto r = call({"report", dir("rc3"), dir("rc5"), dir("super4"), "--out", dir("report")});
    CHECK(r.code == kExitOk);
    CHECK(r.out.find("rc3,|A(3)| >= 2^3,172,8,trivial-lower,yes,asserted-pass") != std::string::npos);
    CHECK(r.out.find("rc5,|A(5)| <= 2^(5 + 10*5^(2/5)),16426,17207562,arc-count-upper,yes,report-only") !=
          std::string::npos);
    CHECK(r.out.find("\"|A(5,5)| <= C(17,5)\",6600,6188,arc-count-by-size,no,skipped-hypothesis") !=
          std::string::npos);
    CHECK(r.out.find("asserted-fail") == std::string::npos);
    CHECK(r.out.find("violations of supersaturation at q=4 (65535 checked),0,0,supersaturation,yes,asserted-pass") !=
          std::string::npos);
    CHECK(fs::exists(fs::path(dir("report")) / "report.json"));

    // a tampered output is rejected
    fs::copy(dir("rc3"), dir("rc3-bad"));
    std::ofstream(fs::path(dir("rc3-bad")) / "census.csv", std::ios::app) << "9,1\n";
    auto bad = call({"report", dir("rc3-bad")});
    CHECK(bad.code == kExitUsage);
    CHECK(bad.err.find("digest mismatch") != std::string::npos);
    CHECK(call({"report", dir("nowhere")}).code == kExitUsage);

    // a consistent run whose numbers break an asserted bound exits 1
    {
        RunDir fake("fake", dir("fake"));
        fake.manifest()["subcommand"] = "arcs count";
        fake.manifest()["command"] = {"arclab"};
        fake.manifest()["config"] = {{"q", 3}};
        fake.manifest()["summary"] = {{"full_table", true}};
        fake.write("census.csv", "k,count\n0,1\n1,1\n");
        fake.finish("ok");
    }
    auto fail = call({"report", dir("fake")});
    CHECK(fail.code == kExitAssertion);
    CHECK(fail.out.find("asserted-fail") != std::string::npos);
}
