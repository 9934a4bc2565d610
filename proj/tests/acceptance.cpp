#include <cstdio>

#include "pgd/acceptance.hpp"

int main() {
    const auto results = pgd::acceptance::run_all();
    std::fputs(pgd::acceptance::render_report(results).c_str(), stdout);
    int failed = 0;
    for (const auto& r : results)
        if (!r.pass) ++failed;
    if (failed > 0) std::fprintf(stdout, "%d criterion(s) failed\n", failed);
    return failed == 0 ? 0 : 1;
}
