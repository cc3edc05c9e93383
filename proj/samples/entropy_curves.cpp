// Prints S(g -> inf) against N for d = 1 and d = 3,
// and finite-g S at the magic strengths for small N.

#include <cstdio>
#include <cstdlib>

#include "wigner/wigner.hpp"

int main(int argc, char** argv)
{
    const int n_max = argc > 1 ? std::atoi(argv[1]) : 8;
    const int finite_max = argc > 2 ? std::atoi(argv[2]) : 3;

    std::printf("# asymptotic\nN,S_d1,S_d3\n");
    for (int n = 2; n <= n_max; ++n) {
        const double s1 = wigner::total_entropy(wigner::solve_asymptotic(n, 1.0)).s_total;
        const double s3 = wigner::total_entropy(wigner::solve_asymptotic(n, 3.0)).s_total;
        std::printf("%d,%.8f,%.8f\n", n, s1, s3);
    }

    std::printf("# finite g, d = 1\nN,g,S,L\n");
    for (int n = 2; n <= finite_max; ++n) {
        wigner::FiniteGConfig tg;
        tg.n = n;
        tg.g = 0.0;
        const auto r0 = wigner::run_finite_g(tg);
        std::printf("%d,0,%.6f,%.6f\n", n, r0.report.vn_entropy, r0.report.linear_entropy);
        for (int m : {1, 3, 5, 10}) {
            wigner::FiniteGConfig cfg;
            cfg.n = n;
            cfg.magic_n = m;
            const auto r = wigner::run_finite_g(cfg);
            std::printf("%d,%.6f,%.6f,%.6f\n", n, r.config.g, r.report.vn_entropy, r.report.linear_entropy);
        }
    }
    return 0;
}
