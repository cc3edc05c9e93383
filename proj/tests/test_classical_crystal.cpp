#include <cmath>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "wigner/classical_crystal.hpp"
#include "wigner/linalg.hpp"

using namespace wigner;

TEST(Potential, TwoParticleValue)
{
    const double b = std::pow(4.0, -1.0 / 3.0);
    const std::vector<double> x{-b, b};
    EXPECT_NEAR(evaluate_potential(x, 1.0), 3.0 * std::pow(4.0, -2.0 / 3.0), 1e-14);
    EXPECT_NEAR(evaluate_potential(std::vector<double>{-0.629961, 0.629961}, 1.0), 1.190551, 1e-6);
}

TEST(Potential, ThreeParticleValue)
{
    const double b = std::cbrt(1.25);
    // b^2 + 2/b + 1/(2b)
    EXPECT_NEAR(evaluate_potential(std::vector<double>{-b, 0.0, b}, 1.0), b * b + 2.5 / b, 1e-14);
    EXPECT_NEAR(evaluate_potential(std::vector<double>{-1.077217, 0.0, 1.077217}, 1.0), 3.481192, 1e-6);
}

TEST(Potential, CoincidentPositionsThrow)
{
    EXPECT_THROW(evaluate_potential(std::vector<double>{0.0, 0.0}, 1.0), DomainError);
    EXPECT_THROW(evaluate_potential(std::vector<double>{0.3, -1.0, 0.3}, 3.0), DomainError);
}

TEST(Potential, GradientAndHessianMatchFiniteDifferences)
{
    std::mt19937 rng(11);
    std::uniform_real_distribution<double> jitter(-0.2, 0.2);
    for (double d : {1.0, 2.0, 3.0}) {
        std::vector<double> x{-2.0 + jitter(rng), -0.7 + jitter(rng), 0.4 + jitter(rng), 1.9 + jitter(rng)};
        const std::vector<double> grad = potential_gradient(x, d, 1.7);
        const Eigen::MatrixXd hess = potential_hessian(x, d, 1.7);
        const double h = 1e-6;
        for (std::size_t k = 0; k < x.size(); ++k) {
            std::vector<double> xp = x, xm = x;
            xp[k] += h;
            xm[k] -= h;
            const double fd = (evaluate_potential(xp, d, 1.7) - evaluate_potential(xm, d, 1.7)) / (2 * h);
            EXPECT_NEAR(grad[k], fd, 1e-6);
            const std::vector<double> gp = potential_gradient(xp, d, 1.7);
            const std::vector<double> gm = potential_gradient(xm, d, 1.7);
            for (std::size_t m = 0; m < x.size(); ++m)
                EXPECT_NEAR(hess(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(k)),
                            (gp[m] - gm[m]) / (2 * h), 1e-5);
        }
    }
}

TEST(Equilibrium, TwoParticleClosedForm)
{
    for (double d : {1.0, 3.0}) {
        const EquilibriumConfig c = solve_equilibrium({2, d, std::nullopt});
        const double b = std::pow(d * std::pow(2.0, -(d + 1.0)), 1.0 / (d + 2.0));
        EXPECT_NEAR(c.beta[0], -b, 1e-12);
        EXPECT_NEAR(c.beta[1], b, 1e-12);
    }
    EXPECT_NEAR(solve_equilibrium({2, 1.0, std::nullopt}).beta[1], 0.629961, 1e-6);
    EXPECT_NEAR(solve_equilibrium({2, 3.0, std::nullopt}).beta[1], 0.715485, 1e-6);
}

TEST(Equilibrium, ThreeParticleClosedForm)
{
    const EquilibriumConfig c = solve_equilibrium({3, 1.0, std::nullopt});
    EXPECT_NEAR(c.beta[0], -std::cbrt(1.25), 1e-12);
    EXPECT_NEAR(c.beta[1], 0.0, 1e-14);
    EXPECT_NEAR(c.beta[2], 1.077217, 1e-6);
}

TEST(Equilibrium, InvariantsAcrossSizesAndExponents)
{
    std::mt19937 rng(2024);
    std::uniform_real_distribution<double> dd(0.5, 4.0);
    std::vector<double> ds{1.0, 3.0};
    for (int k = 0; k < 6; ++k)
        ds.push_back(dd(rng));
    for (double d : ds)
        for (int n = 2; n <= 20; ++n) {
            const EquilibriumConfig c = solve_equilibrium({n, d, std::nullopt});
            ASSERT_EQ(static_cast<int>(c.beta.size()), n);
            EXPECT_LE(max_abs(potential_gradient(c.beta, d)), 1e-12) << "n=" << n << " d=" << d;
            EXPECT_LE(c.gradient_norm, 1e-12);
            double sum = 0.0;
            for (int i = 0; i < n; ++i) {
                sum += c.beta[static_cast<std::size_t>(i)];
                EXPECT_LE(std::abs(c.beta[static_cast<std::size_t>(i)] + c.beta[static_cast<std::size_t>(n - 1 - i)]),
                          1e-10);
                if (i + 1 < n)
                    EXPECT_LT(c.beta[static_cast<std::size_t>(i)], c.beta[static_cast<std::size_t>(i + 1)]);
            }
            EXPECT_NEAR(sum, 0.0, 1e-10);
            const SymmetricEigen e = jacobi_eigen(potential_hessian(c.beta, d));
            EXPECT_GT(e.values.minCoeff(), 0.0);
        }
}

TEST(Equilibrium, InvalidSpecRejected)
{
    EXPECT_THROW(solve_equilibrium({1, 1.0, std::nullopt}), InvalidArgument);
    EXPECT_THROW(solve_equilibrium({3, 0.0, std::nullopt}), InvalidArgument);
    EXPECT_THROW(solve_equilibrium({3, -1.0, std::nullopt}), InvalidArgument);
}

TEST(Equilibrium, IterationCapReportsLastIterate)
{
    try {
        solve_equilibrium({6, 1.0, std::nullopt}, {1e-12, 1});
        FAIL() << "expected ConvergenceError";
    } catch (const ConvergenceError& e) {
        EXPECT_EQ(e.last_iterate.size(), 6u);
    }
}

TEST(ScalePositions, Examples)
{
    const EquilibriumConfig c = solve_equilibrium({2, 1.0, std::nullopt});
    const std::vector<double> one = scale_positions(c, 1.0, 1.0);
    EXPECT_DOUBLE_EQ(one[1], c.beta[1]);
    const std::vector<double> eight = scale_positions(c, 1.0, 8.0);
    EXPECT_NEAR(eight[1], 2.0 * c.beta[1], 1e-14);
    EXPECT_NEAR(eight[1], 1.259921, 1e-6);
    EXPECT_THROW(scale_positions(c, 1.0, 0.0), InvalidArgument);
}

TEST(ScalePositions, ScalingConsistency)
{
    std::mt19937 rng(5);
    std::uniform_real_distribution<double> gd(1.0, 100.0);
    for (double d : {1.0, 3.0})
        for (int n : {2, 3, 5, 8}) {
            const EquilibriumConfig c = solve_equilibrium({n, d, std::nullopt});
            const double v1 = evaluate_potential(c.beta, d);
            for (int k = 0; k < 10; ++k) {
                const double g = gd(rng);
                const std::vector<double> x = scale_positions(c, d, g);
                const double vg = evaluate_potential(x, d, g);
                EXPECT_NEAR(vg / (std::pow(g, 2.0 / (2.0 + d)) * v1), 1.0, 1e-10);
                EXPECT_LE(max_abs(potential_gradient(x, d, g)), 1e-10 * std::max(1.0, g));
            }
            const std::vector<double> lo = scale_positions(c, d, 2.0);
            const std::vector<double> hi = scale_positions(c, d, 3.0);
            for (int i = 0; i + 1 < n; ++i)
                EXPECT_GT(hi[static_cast<std::size_t>(i + 1)] - hi[static_cast<std::size_t>(i)],
                          lo[static_cast<std::size_t>(i + 1)] - lo[static_cast<std::size_t>(i)]);
        }
}
