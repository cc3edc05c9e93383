#ifndef WIGNER_QUADRATURE_HPP
#define WIGNER_QUADRATURE_HPP

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <numbers>
#include <span>
#include <vector>

#include "wigner/errors.hpp"

namespace wigner {

/// n-point Gauss rule: nodes and weights.
struct QuadratureRule {
    std::vector<double> nodes;
    std::vector<double> weights;

    std::size_t size() const { return nodes.size(); }
};

/// Gauss-Legendre rule on [-1, 1] (Newton iteration on P_n).
inline QuadratureRule gauss_legendre(int n)
{
    if (n < 1)
        throw InvalidArgument("gauss_legendre: n must be >= 1");
    QuadratureRule r;
    r.nodes.resize(static_cast<std::size_t>(n));
    r.weights.resize(static_cast<std::size_t>(n));
    const int m = (n + 1) / 2;
    for (int i = 0; i < m; ++i) {
        double z = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = 0.0;
            for (int j = 1; j <= n; ++j) {
                const double p2 = p1;
                p1 = p0;
                p0 = ((2.0 * j - 1.0) * z * p1 - (j - 1.0) * p2) / j;
            }
            dp = n * (z * p0 - p1) / (z * z - 1.0);
            const double dz = p0 / dp;
            z -= dz;
            if (std::abs(dz) < 1e-16)
                break;
        }
        {
            double p0 = 1.0, p1 = 0.0;
            for (int j = 1; j <= n; ++j) {
                const double p2 = p1;
                p1 = p0;
                p0 = ((2.0 * j - 1.0) * z * p1 - (j - 1.0) * p2) / j;
            }
            dp = n * (z * p0 - p1) / (z * z - 1.0);
        }
        const double w = 2.0 / ((1.0 - z * z) * dp * dp);
        r.nodes[static_cast<std::size_t>(i)] = -z;
        r.nodes[static_cast<std::size_t>(n - 1 - i)] = z;
        r.weights[static_cast<std::size_t>(i)] = w;
        r.weights[static_cast<std::size_t>(n - 1 - i)] = w;
    }
    if (n % 2 == 1)
        r.nodes[static_cast<std::size_t>(n / 2)] = 0.0;
    return r;
}

/// Gauss-Hermite rule for weight exp(-x^2) on the real line.
///
/// Newton iteration on the orthonormal Hermite recurrence, so the rule stays
/// finite well past n = 150.
inline QuadratureRule gauss_hermite(int n)
{
    if (n < 1)
        throw InvalidArgument("gauss_hermite: n must be >= 1");
    const double pim4 = 1.0 / std::pow(std::numbers::pi, 0.25);
    QuadratureRule r;
    r.nodes.resize(static_cast<std::size_t>(n));
    r.weights.resize(static_cast<std::size_t>(n));
    const int m = (n + 1) / 2;
    double z = 0.0;
    for (int i = 0; i < m; ++i) {
        if (i == 0)
            z = std::sqrt(2.0 * n + 1.0) - 1.85575 * std::pow(2.0 * n + 1.0, -1.0 / 6.0);
        else if (i == 1)
            z -= 1.14 * std::pow(double(n), 0.426) / z;
        else if (i == 2)
            z = 1.86 * z - 0.86 * r.nodes[0];
        else if (i == 3)
            z = 1.91 * z - 0.91 * r.nodes[1];
        else
            z = 2.0 * z - r.nodes[static_cast<std::size_t>(i - 2)];
        double pp = 0.0;
        for (int it = 0; it < 200; ++it) {
            double p1 = pim4, p2 = 0.0;
            for (int j = 0; j < n; ++j) {
                const double p3 = p2;
                p2 = p1;
                p1 = z * std::sqrt(2.0 / (j + 1)) * p2 - std::sqrt(double(j) / (j + 1)) * p3;
            }
            pp = std::sqrt(2.0 * n) * p2;
            const double dz = p1 / pp;
            z -= dz;
            if (std::abs(dz) <= 1e-15 * std::max(1.0, std::abs(z)))
                break;
        }
        {
            double p1 = pim4, p2 = 0.0;
            for (int j = 0; j < n; ++j) {
                const double p3 = p2;
                p2 = p1;
                p1 = z * std::sqrt(2.0 / (j + 1)) * p2 - std::sqrt(double(j) / (j + 1)) * p3;
            }
            pp = std::sqrt(2.0 * n) * p2;
        }
        r.nodes[static_cast<std::size_t>(i)] = z;
        r.nodes[static_cast<std::size_t>(n - 1 - i)] = -z;
        r.weights[static_cast<std::size_t>(i)] = 2.0 / (pp * pp);
        r.weights[static_cast<std::size_t>(n - 1 - i)] = 2.0 / (pp * pp);
    }
    if (n % 2 == 1)
        r.nodes[static_cast<std::size_t>(n / 2)] = 0.0;
    std::reverse(r.nodes.begin(), r.nodes.end());
    std::reverse(r.weights.begin(), r.weights.end());
    return r;
}

/// Composite Gauss-Legendre on [a, b] with `panels` equal panels.
template <class F>
double composite_legendre(F&& f, double a, double b, int panels, const QuadratureRule& rule)
{
    const double h = (b - a) / panels;
    double sum = 0.0;
    for (int p = 0; p < panels; ++p) {
        const double mid = a + (p + 0.5) * h;
        double part = 0.0;
        for (std::size_t k = 0; k < rule.size(); ++k)
            part += rule.weights[k] * f(mid + 0.5 * h * rule.nodes[k]);
        sum += 0.5 * h * part;
    }
    return sum;
}

/// Panel-doubling Gauss-Legendre; stops when two levels agree to `tol`.
template <class F>
double adaptive_legendre(F&& f, double a, double b, double tol = 1e-10, int order = 20,
                         int max_levels = 12)
{
    const QuadratureRule rule = gauss_legendre(order);
    int panels = 1;
    double prev = composite_legendre(f, a, b, panels, rule);
    for (int level = 0; level < max_levels; ++level) {
        panels *= 2;
        const double cur = composite_legendre(f, a, b, panels, rule);
        if (std::abs(cur - prev) <= tol * std::max(1.0, std::abs(cur)))
            return cur;
        prev = cur;
    }
    throw ConvergenceError("adaptive_legendre: no convergence", {prev});
}

/// Integrates f over the ordered region lo < t_0 < t_1 < ... < t_{dim-1} < hi.
///
/// Each nested interval is split at the breakpoints it contains, so integrands
/// with kinks at those abscissae (and at t_i = t_j) stay smooth on every piece.
/// `f` receives the point and returns an accumulator that supports `+=` and
/// scaling by a double (e.g. std::array via the helpers below).
template <class Acc, class F>
Acc integrate_ordered(int dim, double lo, double hi, std::span<const double> breaks,
                      const QuadratureRule& rule, F&& f)
{
    std::vector<double> point(static_cast<std::size_t>(dim));

    std::function<Acc(int, double)> level = [&](int k, double a) -> Acc {
        Acc total{};
        std::vector<double> edges{a};
        for (double b : breaks)
            if (b > a && b < hi)
                edges.push_back(b);
        std::sort(edges.begin() + 1, edges.end());
        edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
        edges.push_back(hi);
        for (std::size_t e = 0; e + 1 < edges.size(); ++e) {
            const double left = edges[e];
            const double right = edges[e + 1];
            if (!(right > left))
                continue;
            const double half = 0.5 * (right - left);
            const double mid = 0.5 * (right + left);
            for (std::size_t q = 0; q < rule.size(); ++q) {
                const double t = mid + half * rule.nodes[q];
                point[static_cast<std::size_t>(k)] = t;
                Acc part = (k + 1 == dim) ? f(std::span<const double>(point)) : level(k + 1, t);
                const double w = half * rule.weights[q];
                for (std::size_t i = 0; i < part.size(); ++i)
                    total[i] += w * part[i];
            }
        }
        return total;
    };
    if (dim == 0)
        return f(std::span<const double>(point));
    return level(0, lo);
}

/// Explicit node set of the ordered-region rule used by integrate_ordered:
/// `points` holds dim coordinates per node, `weights` the product weights.
struct OrderedRule {
    int dim = 0;
    std::vector<double> points;
    std::vector<double> weights;

    std::size_t size() const { return weights.size(); }
    std::span<const double> point(std::size_t i) const
    {
        return {points.data() + i * static_cast<std::size_t>(dim), static_cast<std::size_t>(dim)};
    }
};

inline OrderedRule ordered_rule(int dim, double lo, double hi, std::span<const double> breaks,
                                const QuadratureRule& rule)
{
    OrderedRule out;
    out.dim = dim;
    if (dim == 0) {
        out.weights.push_back(1.0);
        return out;
    }
    std::vector<double> cuts(breaks.begin(), breaks.end());
    std::sort(cuts.begin(), cuts.end());
    std::vector<double> point(static_cast<std::size_t>(dim));

    std::function<void(int, double, double)> level = [&](int k, double a, double weight) {
        std::vector<double> edges{a};
        for (double b : cuts)
            if (b > a && b < hi && b > edges.back())
                edges.push_back(b);
        edges.push_back(hi);
        for (std::size_t e = 0; e + 1 < edges.size(); ++e) {
            const double half = 0.5 * (edges[e + 1] - edges[e]);
            const double mid = 0.5 * (edges[e + 1] + edges[e]);
            if (!(half > 0.0))
                continue;
            for (std::size_t q = 0; q < rule.size(); ++q) {
                const double t = mid + half * rule.nodes[q];
                const double w = weight * half * rule.weights[q];
                point[static_cast<std::size_t>(k)] = t;
                if (k + 1 == dim) {
                    out.points.insert(out.points.end(), point.begin(), point.end());
                    out.weights.push_back(w);
                } else {
                    level(k + 1, t, w);
                }
            }
        }
    };
    level(0, lo, 1.0);
    return out;
}

struct GoldenResult {
    double x;
    double value;
    int evaluations;
};

/// Golden-section minimization of a unimodal function on [a, b].
template <class F>
GoldenResult golden_section(F&& f, double a, double b, double tol = 1e-4)
{
    const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
    double c = b - invphi * (b - a);
    double d = a + invphi * (b - a);
    double fc = f(c);
    double fd = f(d);
    int evals = 2;
    while (b - a > tol) {
        if (fc < fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - invphi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + invphi * (b - a);
            fd = f(d);
        }
        ++evals;
    }
    if (fc < fd)
        return {c, fc, evals};
    return {d, fd, evals};
}

} // namespace wigner

#endif // WIGNER_QUADRATURE_HPP
