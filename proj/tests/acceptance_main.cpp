// Acceptance gate runner: one pass/fail line per criterion check.
// Usage: acceptance [--criterion N | --suite unit|theorems|exploratory|all]
//                   [--threads T]

#include <chrono>
#include <cstdio>
#include <cstring>
#include <string>
#include <vector>

#include "hardrods/verify.hpp"

int main(int argc, char** argv) {
    std::string suite = "all";
    int criterion = 0;
    int threads = 0;
    for (int i = 1; i < argc; ++i) {
        const std::string arg = argv[i];
        if (arg == "--criterion" && i + 1 < argc) criterion = std::atoi(argv[++i]);
        else if (arg == "--suite" && i + 1 < argc) suite = argv[++i];
        else if (arg == "--threads" && i + 1 < argc) threads = std::atoi(argv[++i]);
        else {
            std::fprintf(stderr, "unknown argument '%s'\n", arg.c_str());
            return 2;
        }
    }

    std::vector<hardrods::StatReport> reports;
    const auto start = std::chrono::steady_clock::now();
    try {
        reports = criterion > 0 ? hardrods::run_criterion(criterion, threads)
                                : hardrods::run_suite(suite, threads);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
    const double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

    bool ok = true;
    for (const auto& r : reports) {
        std::printf("[%s] %s: statistic=%.6g %s threshold=%.6g%s\n",
                    r.pass ? "PASS" : "FAIL", r.name.c_str(), r.statistic,
                    r.upper_bound ? "<=" : ">=", r.threshold,
                    r.gating ? "" : " (non-gating)");
        if (!r.notes.empty()) std::printf("       %s\n", r.notes.c_str());
        if (r.gating && !r.pass) ok = false;
    }
    std::printf("%s in %.1fs\n", ok ? "OK" : "GATING FAILURE", elapsed);
    return ok ? 0 : 1;
}
