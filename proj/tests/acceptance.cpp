#include <chrono>
#include <cstdio>
#include <exception>

#include "hankelc/verify.hpp"

int main() {
    hankelc::VerifyOptions opt;
    int failed = 0, index = 0;
    const auto start = std::chrono::steady_clock::now();
    for (const auto& criterion : hankelc::acceptance_criteria()) {
        ++index;
        const auto t0 = std::chrono::steady_clock::now();
        try {
            const auto r = criterion(opt);
            const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
            std::printf("[%s] %2d %-38s residual=%.3e tol=%.1e (%.1fs) %s\n", r.ok() ? "PASS" : "FAIL", index,
                        r.name.c_str(), r.residual, r.tolerance, s, r.note.c_str());
            if (!r.ok()) ++failed;
        } catch (const std::exception& e) {
            std::printf("[FAIL] %2d exception: %s\n", index, e.what());
            ++failed;
        }
        std::fflush(stdout);
    }
    const double total = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("%d/%d criteria passed in %.1fs\n", index - failed, index, total);
    return failed == 0 ? 0 : 1;
}
