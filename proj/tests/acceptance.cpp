// Runs every acceptance criterion and prints one PASS/FAIL line per criterion.
// Exit status is the number of failures, capped at 1 for ctest.
#include <cstdio>

#include "gammalind/verify.hpp"

int main() {
    using namespace gammalind;
    int failures = 0;
    run_verification(VerifyLevel::Full, [&](const CriterionResult& r) {
        if (!r.passed) ++failures;
        std::printf("%s criterion %2d %s (%.1f s): %s\n", r.passed ? "PASS" : "FAIL", r.id, r.name.c_str(), r.seconds,
                    r.detail.c_str());
        std::fflush(stdout);
    });
    std::printf("%d of %d criteria passed\n", criterion_count() - failures, criterion_count());
    return failures == 0 ? 0 : 1;
}
