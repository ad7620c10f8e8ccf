// Acceptance suite: one pass/fail line per criterion; exit code is the
// number of failed (non-informational) criteria.
#include <cstdio>
#include <cstdlib>
#include <cstring>

#include "nstab/acceptance.hpp"

int main(int argc, char** argv) {
    int jobs = 1;
    for (int i = 1; i < argc; ++i) {
        if (std::strcmp(argv[i], "--jobs") == 0 && i + 1 < argc) {
            jobs = std::atoi(argv[++i]);
        }
    }
    int failed = 0;
    for (const auto& name : nstab::acceptance::criterion_names()) {
        const auto r = nstab::acceptance::run_criterion(name, jobs);
        const char* status = r.pass ? "PASS" : "FAIL";
        if (r.informational) status = "INFO";
        std::printf("%s %-20s (%6.2fs) %s\n", status, r.name.c_str(), r.seconds,
                    r.details.c_str());
        std::fflush(stdout);
        if (!r.pass && !r.informational) ++failed;
    }
    if (failed) std::printf("%d criterion(s) failed\n", failed);
    return failed;
}
