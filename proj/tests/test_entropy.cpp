#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "wigner/entropy.hpp"
#include "wigner/report.hpp"

using namespace wigner;

namespace {

double direct_sum_q(const SchmidtSite& s, double q)
{
    double sum = 0.0;
    for (int l = 0; l < 400; ++l)
        sum += std::pow(s.occupancy(l), q);
    return sum;
}

SchmidtSite random_site(std::mt19937& rng)
{
    std::uniform_real_distribution<double> ua(0.2, 3.0), ur(0.0, 0.95), uA(0.05, 1.0);
    const double a = ua(rng);
    const double b = -ur(rng) * 2.0 * a;
    return mehler_schmidt(GaussianKernel{1, uA(rng), a, b});
}

} // namespace

TEST(SiteEntropy, TwoParticleValue)
{
    const SchmidtSite s = solve_asymptotic(2, 1.0).sites[0];
    double direct = 0.0;
    for (int l = 0; l < 50; ++l)
        direct -= s.occupancy(l) * std::log2(s.occupancy(l));
    EXPECT_NEAR(site_entropy_closed(s), direct, 1e-12);
    EXPECT_NEAR(site_entropy_closed(s), 0.568090, 1e-6);
}

TEST(SiteEntropy, ClosedFormMatchesDirectOnRandomKernels)
{
    std::mt19937 rng(99);
    double worst = 0.0;
    for (int k = 0; k < 100; ++k) {
        const SchmidtSite s = random_site(rng);
        worst = std::max(worst, std::abs(site_entropy_closed(s) - site_entropy_direct(s)));
    }
    EXPECT_LE(worst, 1e-10);
}

TEST(SiteEntropy, SingleTermLimit)
{
    SchmidtSite s;
    s.w = 1.3;
    s.y = 0.0;
    s.lambda0 = 0.25;
    s.site_trace = 0.25;
    s.A = s.lambda0 / std::sqrt(std::numbers::pi / s.w);
    EXPECT_NEAR(site_entropy_closed(s), -0.25 * std::log2(0.25), 1e-14);
}

TEST(SiteEntropy, RejectsBadRatio)
{
    SchmidtSite s;
    s.A = 0.3;
    s.w = 1.0;
    s.y = 1.0;
    EXPECT_THROW(site_entropy_closed(s), InvalidArgument);
    s.y = -0.1;
    EXPECT_THROW(site_entropy_direct(s), InvalidArgument);
}

TEST(RenyiSum, IdentityForIntegerOrders)
{
    std::mt19937 rng(17);
    for (int k = 0; k < 50; ++k) {
        const SchmidtSite s = random_site(rng);
        EXPECT_NEAR(renyi_sum(s, 1.0), s.site_trace, 1e-12);
        for (double q : {1.0, 2.0, 3.0})
            EXPECT_NEAR(renyi_sum(s, q), direct_sum_q(s, q), 1e-10);
    }
}

TEST(RenyiSum, TwoParticlePurity)
{
    const SchmidtSite s = solve_asymptotic(2, 1.0).sites[0];
    EXPECT_NEAR(renyi_sum(s, 2.0), s.lambda0 * s.lambda0 / (1.0 - s.y * s.y), 1e-15);
    EXPECT_NEAR(renyi_sum(s, 2.0), 0.240858, 1e-6);
    EXPECT_THROW(renyi_sum(s, 0.5), InvalidArgument);
}

TEST(TotalEntropy, TwoParticleReport)
{
    const EntropyReport r = total_entropy(solve_asymptotic(2, 1.0));
    EXPECT_NEAR(r.s_total, 2.0 * r.per_site_s[0], 1e-15);
    EXPECT_NEAR(r.s_total, 1.136180, 1e-6);
    EXPECT_NEAR(r.linear_entropy, 0.518283, 1e-6);
    EXPECT_NEAR(r.lambda0_sum, 0.9814, 1e-4);
}

TEST(TotalEntropy, LambdaZeroTrend)
{
    EXPECT_NEAR(total_entropy(solve_asymptotic(2, 1.0)).lambda0_sum, 0.982, 0.001);
    EXPECT_NEAR(total_entropy(solve_asymptotic(6, 1.0)).lambda0_sum, 0.947, 0.002);
}

TEST(TotalEntropy, PairedFormulaMatchesFullSum)
{
    for (double d : {1.0, 3.0})
        for (int n = 2; n <= 15; ++n) {
            const AsymptoticSolution sol = solve_asymptotic(n, d);
            const EntropyReport r = total_entropy(sol);
            double full = 0.0;
            for (const SchmidtSite& s : sol.sites)
                full += site_entropy_closed(s);
            EXPECT_NEAR(r.s_total, full, 1e-12);
            EXPECT_GE(r.linear_entropy, 0.0);
            EXPECT_LT(r.linear_entropy, 1.0);
            for (double v : r.per_site_s) {
                EXPECT_TRUE(std::isfinite(v));
                EXPECT_GE(v, 0.0);
            }
        }
}

TEST(TotalEntropy, MonotoneInNAndOrderedInD)
{
    double prev1 = 0.0, prev3 = 0.0;
    for (int n = 2; n <= 8; ++n) {
        const double s1 = total_entropy(solve_asymptotic(n, 1.0)).s_total;
        const double s3 = total_entropy(solve_asymptotic(n, 3.0)).s_total;
        EXPECT_GT(s1, prev1);
        EXPECT_GT(s3, prev3);
        EXPECT_GT(s3, s1) << n;
        prev1 = s1;
        prev3 = s3;
    }
}

TEST(TotalEntropy, TraceViolationDetected)
{
    std::vector<SchmidtSite> sites = solve_asymptotic(3, 1.0).sites;
    sites[1].site_trace += 1e-6;
    EXPECT_THROW(total_entropy(sites, 3, 1.0), InconsistencyError);
    EXPECT_THROW(total_entropy(sites, 4, 1.0), InvalidArgument);
}

TEST(Report, JsonKeys)
{
    const nlohmann::json j = total_entropy(solve_asymptotic(3, 1.0));
    for (const char* key : {"n", "d", "s_total_bits", "s_per_site", "linear_entropy", "lambda0_sum"})
        EXPECT_TRUE(j.contains(key)) << key;
    EXPECT_EQ(j["s_per_site"].size(), 3u);
    const EntropyReport back = j.get<EntropyReport>();
    EXPECT_EQ(back.s_total, j["s_total_bits"].get<double>());
}
