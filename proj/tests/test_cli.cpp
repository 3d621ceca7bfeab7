#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "excouple/cli.hpp"

#include "json.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

using namespace excouple;

namespace {

std::string cli_path() {
    const char* p = std::getenv("EXCOUPLE_CLI");
    REQUIRE_MESSAGE(p, "EXCOUPLE_CLI must point at the binary");
    return p;
}

std::string data(const std::string& name) {
    const char* d = std::getenv("EXCOUPLE_TESTDATA");
    REQUIRE_MESSAGE(d, "EXCOUPLE_TESTDATA must point at the document directory");
    return std::string(d) + "/" + name;
}

struct RunResult {
    int code = -1;
    std::string out;
};

RunResult run(const std::string& args) {
    const std::string cmd = cli_path() + " " + args + " 2>&1";
    FILE* p = popen(cmd.c_str(), "r");
    REQUIRE(p);
    RunResult res;
    char buf[4096];
    std::size_t n;
    while ((n = fread(buf, 1, sizeof buf, p)) > 0) res.out.append(buf, n);
    const int status = pclose(p);
    res.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return res;
}

std::string slurp(const std::string& path) {
    std::ifstream f(path);
    REQUIRE(f);
    std::ostringstream os;
    os << f.rdbuf();
    return os.str();
}

}  // namespace

TEST_CASE("exit-code contract") {
    CHECK(run("pages " + data("circle.json")).code == 0);
    CHECK(run("pairing " + data("zero_pairing.json")).code == 0);
    CHECK(run("pairing " + data("section7.json")).code == 2);  // math failure
    SUBCASE("input errors exit 1") {
        CHECK(run("pages /nonexistent.json").code == 1);
        auto bad = run("pages " + data("section7.json"));  // wrong block type
        CHECK(bad.code == 1);
        CHECK(bad.out.find("input error") != std::string::npos);
        CHECK(run("converge " + data("zero_pairing.json")).code == 1);
        // malformed JSON from stdin
        FILE* p = popen((std::string("echo '{oops' | ") + cli_path() + " pages - 2>&1").c_str(),
                        "r");
        REQUIRE(p);
        char buf[256];
        std::string out;
        while (fgets(buf, sizeof buf, p)) out += buf;
        CHECK(WEXITSTATUS(pclose(p)) == 1);
        CHECK(out.find("parse error") != std::string::npos);
    }
}

TEST_CASE("page tables") {
    SUBCASE("deterministic byte-identical output") {
        auto a = run("pages " + data("d2_jump.json") + " --r 4");
        auto b = run("pages " + data("d2_jump.json") + " --r 4");
        CHECK(a.out == b.out);
        CHECK(a.out.find("d[(1,0) -> (0,2)] = [[1]]") != std::string::npos);
        CHECK(a.out.find("page 3\n  E[p=1,q=0] = 0") != std::string::npos);
    }
    SUBCASE("trivial filtration repeats a single page") {
        auto r = run("pages " + data("trivial.json") + " --r 3");
        CHECK(r.code == 0);
        const std::string body = "  E[p=0,q=0] = Z\n  E[p=1,q=0] = Z\n";
        std::size_t hits = 0, pos = 0;
        while ((pos = r.out.find(body, pos)) != std::string::npos) ++hits, ++pos;
        CHECK(hits == 3);
    }
    SUBCASE("invariant-factor rendering") {
        auto r = run("pages " + data("torsion.json"));
        CHECK(r.out.find("E[p=0,q=0] = Z ⊕ Z/2") != std::string::npos);
    }
    SUBCASE("augmented tower documents work too") {
        auto r = run("pages " + data("circle_tower.json"));
        CHECK(r.code == 0);
        CHECK(r.out.find("E[p=1,q=0] = Z") != std::string::npos);
    }
    SUBCASE("stdin with -") {
        const std::string cmd =
            "cat " + data("circle.json") + " | " + cli_path() + " pages - 2>&1";
        FILE* p = popen(cmd.c_str(), "r");
        REQUIRE(p);
        char buf[4096];
        std::string out;
        while (fgets(buf, sizeof buf, p)) out += buf;
        CHECK(WEXITSTATUS(pclose(p)) == 0);
        CHECK(out.find("E[p=1,q=0] = Z") != std::string::npos);
    }
    SUBCASE("EXCOUPLE_MAX_PAGE caps the run") {
        const std::string cmd = "EXCOUPLE_MAX_PAGE=2 " + cli_path() + " pages " +
                                data("d2_jump.json") + " 2>&1";
        FILE* p = popen(cmd.c_str(), "r");
        REQUIRE(p);
        char buf[4096];
        std::string out;
        while (fgets(buf, sizeof buf, p)) out += buf;
        pclose(p);
        CHECK(out.find("page 2") != std::string::npos);
        CHECK(out.find("page 3") == std::string::npos);
    }
    SUBCASE("JSON output round-trips against a fresh run") {
        auto r = run("pages " + data("s2.json") + " --format json");
        REQUIRE(r.code == 0);
        auto parsed = nlohmann::json::parse(r.out);
        Document doc = parse_document(slurp(data("s2.json")));
        auto fresh = cmd_pages(doc, 0, "json");
        auto fresh_parsed = nlohmann::json::parse(fresh.output);
        REQUIRE(parsed.at("pages").size() == fresh_parsed.at("pages").size());
        for (std::size_t i = 0; i < parsed.at("pages").size(); ++i)
            CHECK(parsed.at("pages")[i].at("entries") ==
                  fresh_parsed.at("pages")[i].at("entries"));
        // the S^2 table is its homology: Z in degrees 0 and 2
        CHECK(parsed.at("pages")[0].at("entries")[0].at("group") == "Z");
    }
}

TEST_CASE("pairing reports") {
    SUBCASE("counterexample prints the doubled witness") {
        auto r = run("pairing " + data("section7.json"));
        CHECK(r.code == 2);
        CHECK(r.out.find("Leibniz FAILS") != std::string::npos);
        CHECK(r.out.find("residual 2·e at (4,1)") != std::string::npos);
    }
    SUBCASE("odd parity variant descends") {
        auto r = run("pairing " + data("section7_odd.json"));
        CHECK(r.code == 0);
        CHECK(r.out.find("E_infinity reached") != std::string::npos);
    }
    SUBCASE("chain pairings get the full descent log") {
        for (const char* name : {"torus.json", "interval_square.json"}) {
            auto r = run("pairing " + data(name));
            CHECK(r.code == 0);
            CHECK(r.out.find("tower pairing invariants: OK") != std::string::npos);
            CHECK(r.out.find("page 1: Leibniz holds") != std::string::npos);
            CHECK(r.out.find("Gamma compatibility: OK") != std::string::npos);
        }
    }
}

TEST_CASE("convergence reports") {
    SUBCASE("colim clauses") {
        auto r = run("converge " + data("s2.json"));
        CHECK(r.code == 0);
        CHECK(r.out.find("convention: colim") != std::string::npos);
        CHECK(r.out.find("(a) ") != std::string::npos);
        CHECK(r.out.find("(d) ") != std::string::npos);
        CHECK(r.out.find("strong convergence: yes") != std::string::npos);
    }
    SUBCASE("lim clauses via document options and via the flag") {
        auto a = run("converge " + data("s2_lim.json"));
        auto b = run("converge " + data("s2.json") + " --indexing lim");
        CHECK(a.code == 0);
        CHECK(a.out == b.out);
        CHECK(a.out.find("(i) ") != std::string::npos);
        CHECK(a.out.find("(iii) ") != std::string::npos);
    }
    SUBCASE("trivial document passes vacuously") {
        auto r = run("converge " + data("trivial.json"));
        CHECK(r.code == 0);
        CHECK(r.out.find("strong convergence: yes") != std::string::npos);
    }
}
