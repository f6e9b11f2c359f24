// Acceptance runner: executes every criterion suite and prints one pass/fail
// line per criterion.

#include <chrono>
#include <cstdio>

#include "siegel/verify.hpp"

int main() {
    using clock = std::chrono::steady_clock;
    auto t0 = clock::now();
    auto results = siegel::run_all_criteria(0xC0FFEE, 0);
    int failures = 0;
    for (const auto& r : results) {
        if (!r.pass) ++failures;
        std::printf("[%s] %s%s%s\n", r.pass ? "PASS" : "FAIL", r.name.c_str(),
                    r.detail.empty() ? "" : " -- ", r.detail.c_str());
    }
    auto secs = std::chrono::duration_cast<std::chrono::seconds>(clock::now() - t0).count();
    std::printf("%d/%zu criteria passed in %llds\n", static_cast<int>(results.size()) - failures,
                results.size(), static_cast<long long>(secs));
    return failures ? 1 : 0;
}
