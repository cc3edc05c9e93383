#include <array>
#include <cmath>
#include <numbers>
#include <vector>

#include <gtest/gtest.h>

#include "wigner/hermite.hpp"
#include "wigner/quadrature.hpp"

using namespace wigner;

TEST(GaussLegendre, IntegratesPolynomialsExactly)
{
    for (int n : {2, 5, 16, 40}) {
        const QuadratureRule r = gauss_legendre(n);
        ASSERT_EQ(r.size(), static_cast<std::size_t>(n));
        for (int deg = 0; deg < 2 * n; deg += 3) {
            double q = 0.0;
            for (std::size_t k = 0; k < r.size(); ++k)
                q += r.weights[k] * std::pow(r.nodes[k], deg);
            const double exact = deg % 2 ? 0.0 : 2.0 / (deg + 1);
            EXPECT_NEAR(q, exact, 1e-13) << "n=" << n << " deg=" << deg;
        }
    }
}

TEST(GaussLegendre, NodesAscendingAndSymmetric)
{
    const QuadratureRule r = gauss_legendre(17);
    for (std::size_t k = 0; k + 1 < r.size(); ++k)
        EXPECT_LT(r.nodes[k], r.nodes[k + 1]);
    for (std::size_t k = 0; k < r.size(); ++k) {
        EXPECT_NEAR(r.nodes[k], -r.nodes[r.size() - 1 - k], 1e-15);
        EXPECT_NEAR(r.weights[k], r.weights[r.size() - 1 - k], 1e-15);
    }
}

TEST(GaussHermite, GaussianMoments)
{
    const QuadratureRule r = gauss_hermite(30);
    // int x^{2m} e^{-x^2} = Gamma(m + 1/2)
    for (int m = 0; m < 20; ++m) {
        double q = 0.0;
        for (std::size_t k = 0; k < r.size(); ++k)
            q += r.weights[k] * std::pow(r.nodes[k], 2 * m);
        EXPECT_NEAR(q / std::tgamma(m + 0.5), 1.0, 1e-11) << m;
    }
}

TEST(HermiteFunctions, OrthonormalUpTo30)
{
    const QuadratureRule r = gauss_hermite(64);
    std::vector<double> h(31);
    std::vector<std::vector<double>> vals(r.size());
    for (std::size_t k = 0; k < r.size(); ++k) {
        hermite_polynomials(r.nodes[k], h);
        vals[k] = h;
    }
    for (int l = 0; l <= 30; ++l)
        for (int m = 0; m <= l; ++m) {
            double s = 0.0;
            for (std::size_t k = 0; k < r.size(); ++k)
                s += r.weights[k] * vals[k][static_cast<std::size_t>(l)] * vals[k][static_cast<std::size_t>(m)];
            EXPECT_NEAR(s, l == m ? 1.0 : 0.0, 1e-12) << l << ',' << m;
        }
}

TEST(HermiteFunctions, FunctionMatchesPolynomialTimesGaussian)
{
    std::vector<double> h(12);
    for (double u : {-3.0, -0.4, 0.0, 1.1, 2.7}) {
        hermite_polynomials(u, h);
        for (int l = 0; l < 12; ++l)
            EXPECT_NEAR(hermite_function(l, u), h[static_cast<std::size_t>(l)] * std::exp(-0.5 * u * u), 1e-13);
    }
}

TEST(HermiteFunctions, ShiftOverlapAgainstQuadrature)
{
    const QuadratureRule r = gauss_legendre(200);
    for (int l : {0, 1, 4, 9})
        for (double delta : {0.0, 0.5, 2.0, 5.0}) {
            double q = 0.0;
            for (std::size_t k = 0; k < r.size(); ++k) {
                const double x = 15.0 * r.nodes[k];
                q += 15.0 * r.weights[k] * hermite_function(l, x) * hermite_function(l, x - delta);
            }
            EXPECT_NEAR(hermite_shift_overlap(l, delta), q, 1e-12) << l << ' ' << delta;
        }
}

TEST(AdaptiveLegendre, SmoothAndKinked)
{
    EXPECT_NEAR(adaptive_legendre([](double x) { return std::exp(-x * x); }, -8.0, 8.0),
                std::sqrt(std::numbers::pi), 1e-10);
    EXPECT_NEAR(adaptive_legendre([](double x) { return std::abs(x - 0.3); }, -1.0, 1.0, 1e-8), 1.09, 1e-7);
}

TEST(IntegrateOrdered, SimplexVolume)
{
    const QuadratureRule r = gauss_legendre(6);
    const std::array<double, 2> breaks{-0.5, 0.7};
    for (int dim = 1; dim <= 4; ++dim) {
        const auto v = integrate_ordered<std::array<double, 1>>(
            dim, -1.0, 2.0, breaks, r, [](std::span<const double>) { return std::array<double, 1>{1.0}; });
        EXPECT_NEAR(v[0], std::pow(3.0, dim) / std::tgamma(dim + 1.0), 1e-12) << dim;
    }
}

TEST(IntegrateOrdered, SymmetricIntegrandMatchesFullCube)
{
    // Ordered integral of a symmetric function times d! equals the full integral.
    const QuadratureRule r = gauss_legendre(40);
    const std::array<double, 1> breaks{0.25};
    auto f = [](std::span<const double> t) {
        double s = 1.0;
        for (double x : t)
            s *= std::exp(-x * x) * (1.0 + std::abs(x - 0.25));
        return std::array<double, 1>{s};
    };
    const auto ordered = integrate_ordered<std::array<double, 1>>(2, -6.0, 6.0, breaks, r, f);
    const double one = adaptive_legendre([](double x) { return std::exp(-x * x) * (1.0 + std::abs(x - 0.25)); },
                                         -6.0, 0.25) +
                       adaptive_legendre([](double x) { return std::exp(-x * x) * (1.0 + std::abs(x - 0.25)); },
                                         0.25, 6.0);
    EXPECT_NEAR(2.0 * ordered[0], one * one, 1e-9);
}

TEST(GoldenSection, FindsParabolaMinimum)
{
    const GoldenResult g = golden_section([](double x) { return (x - 0.83) * (x - 0.83) + 2.0; }, 0.5, 1.2, 1e-6);
    EXPECT_NEAR(g.x, 0.83, 1e-6);
    EXPECT_NEAR(g.value, 2.0, 1e-12);
}

TEST(OrderedRule, MatchesIntegrateOrdered)
{
    const QuadratureRule r = gauss_legendre(5);
    const std::vector<double> breaks{-0.5, 0.0, 0.7, 1.3};
    auto f = [](std::span<const double> t) { return std::array<double, 1>{std::exp(t[0] - t[1] * t[1])}; };
    const OrderedRule rule = ordered_rule(2, -1.0, 2.0, breaks, r);
    double s = 0.0, w = 0.0;
    for (std::size_t i = 0; i < rule.size(); ++i) {
        s += rule.weights[i] * f(rule.point(i))[0];
        w += rule.weights[i];
        EXPECT_LE(rule.point(i)[0], rule.point(i)[1]);
    }
    EXPECT_NEAR(w, 4.5, 1e-13);
    EXPECT_NEAR(s, (integrate_ordered<std::array<double, 1>>(2, -1.0, 2.0, breaks, r, f)[0]), 1e-13);
}
