// One PASS/FAIL line per acceptance criterion; exit status 1 if any fails.
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <string>
#include <vector>

#include "ssepfree/verification.hpp"

int main(int argc, char** argv) {
    std::uint64_t seed = 12345;
    bool verbose = false;
    for (int i = 1; i < argc; ++i) {
        const std::string a = argv[i];
        if (a == "--seed" && i + 1 < argc)
            seed = std::strtoull(argv[++i], nullptr, 10);
        else if (a == "-v" || a == "--verbose")
            verbose = true;
        else {
            std::fprintf(stderr, "usage: %s [--seed N] [--verbose]\n", argv[0]);
            return 2;
        }
    }
    const auto results = ssepfree::run_suites({"all"}, seed, true);
    int failed = 0;
    for (const auto& r : results) {
        const bool ok = r.passed;  // includes the runtime limit
        failed += ok ? 0 : 1;
        std::printf("%s criterion %d: %s (%.2f s of %.0f s)\n", ok ? "PASS" : "FAIL", r.criterion, r.title.c_str(), r.seconds,
                    r.time_limit);
        if (verbose || !ok) std::fputs(ssepfree::describe(r).c_str(), stdout);
    }
    std::printf("%zu criteria, %d failed, seed %llu\n", results.size(), failed, static_cast<unsigned long long>(seed));
    return failed == 0 ? 0 : 1;
}
