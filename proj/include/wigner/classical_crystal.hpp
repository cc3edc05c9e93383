#ifndef WIGNER_CLASSICAL_CRYSTAL_HPP
#define WIGNER_CLASSICAL_CRYSTAL_HPP

// Classical equilibrium of N trapped particles with |x|^-d repulsion.
//
//   V^g(x) = 1/2 sum_i x_i^2 + sum_{i>j} g |x_i - x_j|^-d
//
// The minimum at strength g is the g = 1 minimum scaled by g^{1/(2+d)}, so
// only the dimensionless configuration beta is ever solved for.

#include <algorithm>
#include <cmath>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "wigner/errors.hpp"
#include "wigner/system.hpp"

namespace wigner {

struct EquilibriumConfig {
    std::vector<double> beta; // strictly increasing, mirror antisymmetric
    double gradient_norm = 0.0;
    int iterations = 0;
};

struct EquilibriumOptions {
    double tolerance = 1e-12;
    int max_iterations = 200;
};

namespace detail {

inline void check_distinct(std::span<const double> x)
{
    for (std::size_t i = 0; i < x.size(); ++i)
        for (std::size_t j = 0; j < i; ++j)
            if (x[i] == x[j])
                throw DomainError("coincident particle positions: potential diverges");
}

inline bool strictly_increasing(std::span<const double> x)
{
    for (std::size_t i = 1; i < x.size(); ++i)
        if (!(x[i] > x[i - 1]))
            return false;
    return true;
}

inline void mirror_symmetrize(std::vector<double>& x)
{
    const std::size_t n = x.size();
    for (std::size_t i = 0; i < n / 2; ++i) {
        const double s = 0.5 * (x[n - 1 - i] - x[i]);
        x[i] = -s;
        x[n - 1 - i] = s;
    }
    if (n % 2 == 1)
        x[n / 2] = 0.0;
}

} // namespace detail

inline double evaluate_potential(std::span<const double> x, double d, double g = 1.0)
{
    detail::check_distinct(x);
    double v = 0.0;
    for (double xi : x)
        v += 0.5 * xi * xi;
    for (std::size_t i = 0; i < x.size(); ++i)
        for (std::size_t j = 0; j < i; ++j)
            v += g * std::pow(std::abs(x[i] - x[j]), -d);
    return v;
}

inline std::vector<double> potential_gradient(std::span<const double> x, double d, double g = 1.0)
{
    detail::check_distinct(x);
    std::vector<double> grad(x.begin(), x.end());
    for (std::size_t i = 0; i < x.size(); ++i) {
        for (std::size_t j = 0; j < i; ++j) {
            const double r = x[i] - x[j];
            // d/dx_i |r|^-d = -d sign(r) |r|^{-d-1}
            const double f = -g * d * std::pow(std::abs(r), -d - 1.0) * (r > 0 ? 1.0 : -1.0);
            grad[i] += f;
            grad[j] -= f;
        }
    }
    return grad;
}

inline Eigen::MatrixXd potential_hessian(std::span<const double> x, double d, double g = 1.0)
{
    detail::check_distinct(x);
    const auto n = static_cast<Eigen::Index>(x.size());
    Eigen::MatrixXd h = Eigen::MatrixXd::Identity(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < i; ++j) {
            const double r = std::abs(x[static_cast<std::size_t>(i)] - x[static_cast<std::size_t>(j)]);
            const double k = g * d * (d + 1.0) * std::pow(r, -d - 2.0);
            h(i, i) += k;
            h(j, j) += k;
            h(i, j) -= k;
            h(j, i) -= k;
        }
    }
    return h;
}

inline double max_abs(std::span<const double> v)
{
    double m = 0.0;
    for (double x : v)
        m = std::max(m, std::abs(x));
    return m;
}

/// Ordered minimum of V^{g=1} by damped Newton with mirror symmetrization.
inline EquilibriumConfig solve_equilibrium(const SystemSpec& spec, const EquilibriumOptions& opt = {})
{
    spec.validate();
    const int n = spec.n;
    const double d = spec.d;

    std::vector<double> x(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
        x[static_cast<std::size_t>(i)] = i - 0.5 * (n - 1);

    std::vector<double> grad = potential_gradient(x, d);
    double gnorm = max_abs(grad);
    for (int it = 0; it < opt.max_iterations; ++it) {
        if (gnorm <= opt.tolerance)
            return {x, gnorm, it};

        const Eigen::MatrixXd h = potential_hessian(x, d);
        const Eigen::Map<const Eigen::VectorXd> gvec(grad.data(), n);
        Eigen::LLT<Eigen::MatrixXd> llt(h);
        Eigen::VectorXd step = (llt.info() == Eigen::Success) ? Eigen::VectorXd(llt.solve(-gvec))
                                                              : Eigen::VectorXd(-gvec);

        const double v0 = evaluate_potential(x, d);
        const double slope = gvec.dot(step);
        double t = 1.0;
        std::vector<double> trial(x.size());
        for (int bt = 0; bt < 60; ++bt, t *= 0.5) {
            for (int i = 0; i < n; ++i)
                trial[static_cast<std::size_t>(i)] = x[static_cast<std::size_t>(i)] + t * step[i];
            if (!detail::strictly_increasing(trial))
                continue;
            // Armijo test; near the minimum the decrease is below round-off and
            // the full Newton step is taken as long as ordering survives.
            if (gnorm < 1e-6 || evaluate_potential(trial, d) <= v0 + 1e-4 * t * slope)
                break;
        }
        detail::mirror_symmetrize(trial);
        x = trial;
        grad = potential_gradient(x, d);
        gnorm = max_abs(grad);
    }
    if (gnorm <= opt.tolerance)
        return {x, gnorm, opt.max_iterations};
    throw ConvergenceError("solve_equilibrium: no convergence after " +
                               std::to_string(opt.max_iterations) + " iterations",
                           x);
}

/// x_i^c = beta_i g^{1/(2+d)}.
inline std::vector<double> scale_positions(const EquilibriumConfig& config, double d, double g)
{
    if (!(g > 0.0))
        throw InvalidArgument("scale_positions: g must be > 0");
    const double s = std::pow(g, 1.0 / (2.0 + d));
    std::vector<double> out(config.beta);
    for (double& v : out)
        v *= s;
    return out;
}

} // namespace wigner

#endif // WIGNER_CLASSICAL_CRYSTAL_HPP
