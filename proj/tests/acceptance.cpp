// Acceptance gate: runs every verification suite and prints one pass/fail
// line per criterion.  Exits nonzero if any criterion fails.

#include <cstdio>
#include <string>

#include "cspcat/verify.hpp"

int main(int argc, char** argv) {
    cspcat::VerifyOptions opt;
    opt.timings = true; // report wall-clock next to the runtime-bound criteria
    for (int i = 1; i < argc; ++i) {
        std::string a = argv[i];
        if (a == "--no-timings") opt.timings = false;
        if (a.rfind("--jobs=", 0) == 0) opt.jobs = std::stoi(a.substr(7));
        if (a.rfind("--seed=", 0) == 0) opt.seed = std::stoull(a.substr(7));
    }
    int criterion = 0;
    bool all_pass = true;
    for (const auto& suite : cspcat::verification_suites()) {
        ++criterion;
        cspcat::CheckResult r = cspcat::run_suite(suite, opt);
        all_pass = all_pass && r.pass;
        std::printf("criterion %2d [%s] %s: %s\n", criterion, r.pass ? "PASS" : "FAIL",
                    suite.title.c_str(), r.detail.c_str());
        std::fflush(stdout);
    }
    std::printf("%s\n", all_pass ? "ACCEPTANCE: PASS" : "ACCEPTANCE: FAIL");
    return all_pass ? 0 : 1;
}
