#include <chrono>
#include <cstdio>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "rostlab/verify.hpp"

using namespace rostlab;

namespace {

double run_ms(const std::string& suite, const SuiteOptions& opt,
              SuiteResult& out) {
    auto t0 = std::chrono::steady_clock::now();
    out = run_suite(suite, opt);
    return std::chrono::duration<double, std::milli>(
               std::chrono::steady_clock::now() - t0)
        .count();
}

bool same_outcome(const SuiteResult& a, const SuiteResult& b) {
    if (a.cells != b.cells || a.verified != b.verified ||
        a.inconclusive != b.inconclusive ||
        a.failures.size() != b.failures.size())
        return false;
    for (size_t i = 0; i < a.failures.size(); ++i)
        if (a.failures[i].cell != b.failures[i].cell ||
            a.failures[i].detail != b.failures[i].detail)
            return false;
    return true;
}

}  // namespace

// Times every suite under the serial reference loop and under the
// worker pool, and insists the two outcomes are identical.
int main(int argc, char** argv) {
    CLI::App app{"serial vs parallel sweep benchmark"};
    long long samples = 4000;
    int jobs = 0;
    unsigned long long seed = 0;
    std::vector<std::string> suites = {"steinberg", "exact-sequence",
                                       "rost-div-l", "thm-4-9", "lemma-4-8",
                                       "prop-2-1", "cond-6-1-1"};
    app.add_option("--samples", samples, "samples per tower for randomized suites");
    app.add_option("--jobs", jobs, "parallel worker count (0: machine default)");
    app.add_option("--seed", seed, "base RNG seed");
    app.add_option("--suites", suites, "suites to benchmark");
    CLI11_PARSE(app, argc, argv);

    std::printf("%-16s %12s %12s %9s  %s\n", "suite", "serial ms", "parallel ms",
                "speedup", "outcome");
    bool all_agree = true;
    for (const auto& s : suites) {
        SuiteOptions ser;
        ser.seed = seed;
        ser.samples = samples;
        ser.parallel = false;
        SuiteOptions par = ser;
        par.parallel = true;
        par.jobs = jobs;

        SuiteResult rs, rp;
        double ts = run_ms(s, ser, rs);
        double tp = run_ms(s, par, rp);
        bool agree = same_outcome(rs, rp);
        all_agree = all_agree && agree;
        std::printf("%-16s %12.1f %12.1f %8.2fx  %s\n", s.c_str(), ts, tp,
                    ts / (tp > 0 ? tp : 1), agree ? "identical" : "DIFFER");
    }
    if (!all_agree) {
        std::fprintf(stderr, "serial and parallel outcomes differ\n");
        return 1;
    }
    return 0;
}
