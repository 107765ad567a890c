#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

// The binary under test; CMake points this at the built CLI.
#ifndef ROSTLAB_BIN
#error "ROSTLAB_BIN must name the CLI binary"
#endif

namespace {

struct RunResult {
    int code = -1;
    std::string out;
    std::string err;
};

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

std::string work_dir() {
    static std::string dir = [] {
        std::string tmpl = "/tmp/rostlab_cli_XXXXXX";
        char buf[64];
        std::snprintf(buf, sizeof(buf), "%s", tmpl.c_str());
        const char* made = mkdtemp(buf);
        REQUIRE(made != nullptr);
        return std::string(made);
    }();
    return dir;
}

RunResult run_cli(const std::string& args, const std::string& env = "") {
    static int counter = 0;
    std::string base = work_dir() + "/run" + std::to_string(counter++);
    std::string cmd = env + (env.empty() ? "" : " ") + "\"" ROSTLAB_BIN "\" " +
                      args + " >" + base + ".out 2>" + base + ".err";
    int rc = std::system(cmd.c_str());
    RunResult r;
    r.code = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
    r.out = slurp(base + ".out");
    r.err = slurp(base + ".err");
    return r;
}

std::string config_path() {
    static std::string path = [] {
        std::string p = work_dir() + "/session.cfg";
        std::ofstream out(p);
        out << "# a quartic-modulus base and the desk tower\n";
        out << "field K q=5 ell=2 n=2 depth=1 precision=8\n";
        out << "field F1 q=3 ell=2 n=1 depth=2\n";
        out << "ext E1 field=F1 kind=kummer b=x1 m=1\n";
        return p;
    }();
    return path;
}

bool contains(const std::string& hay, const std::string& needle) {
    return hay.find(needle) != std::string::npos;
}

}  // namespace

TEST_CASE("field command prints a handle with its basis") {
    RunResult r = run_cli("field --q 3 --ell 2 --n 1 --depth 2");
    CHECK(r.code == 0);
    CHECK(contains(r.out, "\"handle\": \"F1\""));
    CHECK(contains(r.out, "(zeta=2, x1, x2)"));
    CHECK(contains(r.out, "\"schema\": 1"));
    CHECK(contains(r.err, "basis"));

    RunResult deep = run_cli("field --q 7 --ell 3 --n 1 --depth 3");
    CHECK(deep.code == 0);
    CHECK(contains(deep.out, "\"handle\": \"F1\""));
}

TEST_CASE("invalid tower arithmetic exits 2 with the error name") {
    RunResult r = run_cli("field --q 5 --ell 3 --n 1 --depth 1");
    CHECK(r.code == 2);
    CHECK(contains(r.out, "RootsOfUnityMissing"));
}

TEST_CASE("usage problems exit 2") {
    CHECK(run_cli("field --q 3").code == 2);            // missing --ell
    CHECK(run_cli("verify no-such-suite").code == 2);   // unknown suite
    CHECK(run_cli("").code == 2);                        // no subcommand
    RunResult bad = run_cli("eval \"symbol {x1\" --config " + config_path());
    CHECK(bad.code == 2);
    CHECK(contains(bad.out, "ParseError"));
    // eval never exits 1
    RunResult zero = run_cli("eval \"class 0\" --config " + config_path());
    CHECK(zero.code == 2);
}

TEST_CASE("eval expressions print exact normal forms") {
    std::string cfg = " --config " + config_path();

    RunResult res = run_cli("eval \"residue (symbol {x2, u} F1)\"" + cfg);
    CHECK(res.code == 0);
    CHECK(contains(res.out, "\"normal_form\": \"{z}\""));

    RunResult cup = run_cli("eval \"cup (symbol {x1,x2}) (class x1)\"" + cfg);
    CHECK(cup.code == 0);
    CHECK(contains(cup.out, "\"degree\": 3"));
    CHECK(contains(cup.out, "\"normal_form\": \"{z,x1,x2}\""));

    RunResult one = run_cli("eval \"class 1\"" + cfg);
    CHECK(one.code == 0);
    // the trivial class: zero vector over the current field F1
    CHECK(contains(one.out, "\"class_vector\""));
    CHECK(contains(one.out, "[\n    0,\n    0,\n    0\n  ]"));
}

TEST_CASE("identical invocations replay byte-identically") {
    std::string cfg = " --config " + config_path();
    RunResult a = run_cli("eval \"decompose (symbol {zeta, x2} F1)\"" + cfg);
    RunResult b = run_cli("eval \"decompose (symbol {zeta, x2} F1)\"" + cfg);
    CHECK(a.code == 0);
    CHECK(a.out == b.out);

    RunResult v1 = run_cli("verify steinberg --samples 300 --seed 7");
    RunResult v2 = run_cli("verify steinberg --samples 300 --seed 7");
    CHECK(v1.code == 0);
    CHECK(v1.out == v2.out);
}

TEST_CASE("verify exit codes follow the suite outcome") {
    RunResult rd = run_cli("verify rost-div-l --q 3 --ell 2 --depth 2");
    CHECK(rd.code == 0);
    CHECK(contains(rd.out, "\"cells\": 8"));
    CHECK(contains(rd.out, "\"verified\": 8"));

    // exactness flags leave higher-period cells inconclusive, never failed
    RunResult t16 = run_cli("verify thm-1-6 --q 5 --ell 2 --n 2 --depth 2");
    CHECK((t16.code == 0 || t16.code == 3));
    CHECK(contains(t16.out, "\"failures\": []"));

    RunResult st = run_cli("verify steinberg --samples 200");
    CHECK(st.code == 0);
}

TEST_CASE("serial reference and worker pool print identical output") {
    RunResult par = run_cli("verify cond-6-1-1 --jobs 2");
    RunResult ser = run_cli("verify cond-6-1-1 --serial");
    CHECK(par.code == 0);
    CHECK(par.out == ser.out);

    RunResult env = run_cli("verify exact-sequence", "ROSTLAB_JOBS=2");
    CHECK(env.code == 0);
}

TEST_CASE("report emits the full quotient document") {
    std::string cfg = " --config " + config_path();
    RunResult r = run_cli("report --alpha \"symbol {x1, x2} F1\"" + cfg);
    CHECK(r.code == 0);
    CHECK(contains(r.out, "\"quotient_order\": 1"));
    CHECK(contains(r.out, "\"status\": \"verified\""));
    CHECK(contains(r.out, "\"witnesses\": []"));
    CHECK(contains(r.out, "\"s_exact\": true"));

    RunResult s = run_cli("suslin --alpha \"symbol {x1, x2} F1\"" + cfg);
    CHECK(s.code == 0);
    CHECK(contains(s.out, "\"order\": 4"));
}

TEST_CASE("albert reports the form with matching witt and index") {
    std::string cfg = " --config " + config_path();
    RunResult r = run_cli(
        "albert --a u --b x1 --c x1 --d x2 --field F1" + cfg);
    CHECK(r.code == 0);
    CHECK(contains(r.out, "\"witt\": 1"));
    CHECK(contains(r.out, "\"index\": 2"));
    CHECK(contains(r.out, "\"holds\": true"));
}

TEST_CASE("extension handles come from config or flags") {
    std::string cfg = " --config " + config_path();
    RunResult r = run_cli("ext --kind unramified --f 2 --field F1" + cfg);
    CHECK(r.code == 0);
    CHECK(contains(r.out, "\"degree\": 2"));
    CHECK(contains(r.out, "\"kind\": \"unramified\""));
    CHECK(contains(r.out, "\"materialized\": true"));

    RunResult dup = run_cli("ext --kind kummer --b x1 --m 1 --name E1 --field F1" + cfg);
    CHECK(dup.code == 2);
    CHECK(contains(dup.out, "DuplicateHandle"));
}
