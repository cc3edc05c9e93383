#ifndef WIGNER_TWO_BODY_HPP
#define WIGNER_TWO_BODY_HPP

// Relative motion of two particles (d = 1):
//
//   [-1/2 d^2/dx^2 + x^2/2 + g / (sqrt(2) |x|)] phi = E_rel phi
//
// Even ground states are |odd solution|. For a countable set of "magic" g the
// series phi = |x| exp(-x^2/2) sum_k a_k |x|^k terminates; otherwise the odd
// ground state is approximated by Rayleigh-Ritz in oscillator states.

#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "wigner/errors.hpp"
#include "wigner/hermite.hpp"
#include "wigner/linalg.hpp"
#include "wigner/quadrature.hpp"

namespace wigner {

/// Terminating series solution at a magic interaction strength.
struct OddSeries {
    int n = 1;
    double g_magic = 0.0;
    double e_rel = 0.0;
    std::vector<double> coeffs; // a_0 .. a_n, a_0 = 1
};

/// Coefficients a_0..a_{count-1} of the series for given (g, E_rel), a_0 = 1.
///
/// (-1 - 2E + 2k) a_{k-2} + sqrt(2) g a_{k-1} - k (k+1) a_k = 0
inline std::vector<double> series_coefficients(double g, double e_rel, int count)
{
    std::vector<double> a(static_cast<std::size_t>(std::max(count, 1)), 0.0);
    a[0] = 1.0;
    for (int k = 1; k < count; ++k) {
        const double akm2 = k >= 2 ? a[static_cast<std::size_t>(k - 2)] : 0.0;
        const double akm1 = a[static_cast<std::size_t>(k - 1)];
        a[static_cast<std::size_t>(k)] =
            ((-1.0 - 2.0 * e_rel + 2.0 * k) * akm2 + std::numbers::sqrt2 * g * akm1) / (k * (k + 1.0));
    }
    return a;
}

/// a_{n+1}(g) at E_rel = (3 + 2n)/2; its roots are the magic strengths.
inline double termination_residual(int n, double g)
{
    return series_coefficients(g, (3.0 + 2.0 * n) / 2.0, n + 2).back();
}

/// Magic g for termination index n.
///
/// Sign changes of a_{n+1}(g) are bracketed by a 0.25 scan over (0, 100] and
/// refined by bisection. Only a root whose a_0..a_n are all positive gives a
/// nodeless (ground-state) relative wavefunction; the others are rejected.
inline OddSeries magic_g(int n)
{
    if (n < 1)
        throw InvalidArgument("magic_g: n must be >= 1");
    const double e_rel = (3.0 + 2.0 * n) / 2.0;
    const double step = 0.25;

    auto accept = [&](double g) -> bool {
        const std::vector<double> a = series_coefficients(g, e_rel, n + 1);
        for (double ak : a)
            if (!(ak > 0.0))
                return false;
        return true;
    };

    double lo = step;
    double flo = termination_residual(n, lo);
    for (int i = 2; i <= 400; ++i) {
        const double hi = step * i;
        const double fhi = termination_residual(n, hi);
        if (flo == 0.0 || (flo < 0.0) != (fhi < 0.0)) {
            double a = lo, b = hi, fa = flo;
            if (flo != 0.0) {
                for (int it = 0; it < 200 && b - a > 0.0; ++it) {
                    const double m = 0.5 * (a + b);
                    if (m <= a || m >= b)
                        break;
                    const double fm = termination_residual(n, m);
                    if (fm == 0.0) {
                        a = b = m;
                        break;
                    }
                    if ((fa < 0.0) == (fm < 0.0)) {
                        a = m;
                        fa = fm;
                    } else {
                        b = m;
                    }
                }
            } else {
                b = a;
            }
            const double g = 0.5 * (a + b);
            if (accept(g))
                return {n, g, e_rel, series_coefficients(g, e_rel, n + 1)};
        }
        lo = hi;
        flo = fhi;
    }
    throw SearchFailure("magic_g: no all-positive root in (0, 100] for n = " + std::to_string(n));
}

/// Rayleigh-Ritz odd ground state in the lowest `basis_size` odd oscillator states.
struct RelativeSolution {
    double g = 0.0;
    int basis_size = 10;
    std::vector<double> coeffs; // on psi_1, psi_3, ..., coeffs[0] > 0
    double e_rel = 0.0;
};

/// <psi_{2m+1} | 1/|x| | psi_{2n+1}> for m, n < size.
inline Eigen::MatrixXd inverse_distance_matrix(int size)
{
    Eigen::MatrixXd v(size, size);
    const int top = 2 * size;
    for (int m = 0; m < size; ++m) {
        for (int n = m; n < size; ++n) {
            auto integrand = [&](double x) {
                std::vector<double> h(static_cast<std::size_t>(top));
                hermite_polynomials(x, h);
                return h[static_cast<std::size_t>(2 * m + 1)] * h[static_cast<std::size_t>(2 * n + 1)] *
                       std::exp(-x * x) / x;
            };
            // even integrand: twice the half line
            v(m, n) = v(n, m) = 2.0 * adaptive_legendre(integrand, 0.0, 20.0, 1e-10);
        }
    }
    return v;
}

inline RelativeSolution relative_ground_odd(double g, int basis_size = 10, double d = 1.0)
{
    if (d != 1.0)
        throw Unsupported("relative_ground_odd: only d = 1 is supported (|x|^-d matrix elements diverge otherwise)");
    if (!(g >= 0.0))
        throw InvalidArgument("relative_ground_odd: g must be >= 0");
    if (basis_size < 1)
        throw InvalidArgument("relative_ground_odd: basis_size must be >= 1");

    Eigen::MatrixXd h = (g / std::numbers::sqrt2) * inverse_distance_matrix(basis_size);
    for (int k = 0; k < basis_size; ++k)
        h(k, k) += 2.0 * k + 1.0 + 0.5;

    const SymmetricEigen eig = jacobi_eigen(h);
    Eigen::VectorXd c = eig.vectors.col(0);
    if (c[0] < 0.0)
        c = -c;
    RelativeSolution out;
    out.g = g;
    out.basis_size = basis_size;
    out.e_rel = eig.values[0];
    out.coeffs.assign(c.data(), c.data() + c.size());
    return out;
}

/// Pair correlation factor f(u) = exp(u^2/2) phi^+(u) of the Jastrow ansatz.
class CorrelationFactor {
public:
    enum class Kind { magic_series, rayleigh_ritz, tonks };

    static CorrelationFactor tonks() { return CorrelationFactor(Kind::tonks, {}); }

    static CorrelationFactor from_series(const OddSeries& s) { return CorrelationFactor(Kind::magic_series, s.coeffs); }

    static CorrelationFactor from_relative(const RelativeSolution& s)
    {
        return CorrelationFactor(Kind::rayleigh_ritz, s.coeffs);
    }

    Kind kind() const { return kind_; }
    const std::vector<double>& coefficients() const { return coeffs_; }

    double operator()(double u) const
    {
        double f = 0.0, df = 0.0;
        evaluate(u, f, df);
        return f;
    }

    double derivative(double u) const
    {
        double f = 0.0, df = 0.0;
        evaluate(u, f, df);
        return df;
    }

    /// f(u) and f'(u); f' is taken as 0 at the kink u = 0.
    void evaluate(double u, double& f, double& df) const
    {
        const double au = std::abs(u);
        const double sgn = u > 0.0 ? 1.0 : (u < 0.0 ? -1.0 : 0.0);
        switch (kind_) {
        case Kind::tonks:
            f = au;
            df = sgn;
            return;
        case Kind::magic_series: {
            // |u| sum a_k |u|^k, Horner on both value and derivative
            double p = 0.0, dp = 0.0;
            for (std::size_t k = coeffs_.size(); k-- > 0;) {
                p = p * au + coeffs_[k];
                dp = dp * au + (static_cast<double>(k) + 1.0) * coeffs_[k];
            }
            f = au * p;
            df = sgn * dp;
            return;
        }
        case Kind::rayleigh_ritz: {
            // P(u) = sum c_k h_{2k+1}(u); P'(u) = sum c_k sqrt(2(2k+1)) h_{2k}(u)
            double hm1 = 0.0;
            double h = 1.0 / std::pow(std::numbers::pi, 0.25);
            double p = 0.0, dp = 0.0;
            for (std::size_t l = 0; l < up_.size(); ++l) {
                const double hn = up_[l] * u * h - down_[l] * hm1;
                if (l % 2 == 0) {
                    p += coeffs_[l / 2] * hn;
                    dp += dcoeffs_[l / 2] * h;
                }
                hm1 = h;
                h = hn;
            }
            f = std::abs(p);
            df = p > 0.0 ? dp : (p < 0.0 ? -dp : 0.0);
            return;
        }
        }
    }

    const char* provenance() const
    {
        switch (kind_) {
        case Kind::magic_series:
            return "magic-series";
        case Kind::rayleigh_ritz:
            return "rayleigh-ritz";
        case Kind::tonks:
            return "tonks";
        }
        return "unknown";
    }

private:
    CorrelationFactor(Kind k, std::vector<double> c) : kind_(k), coeffs_(std::move(c))
    {
        if (kind_ != Kind::rayleigh_ritz)
            return;
        const std::size_t top = 2 * coeffs_.size();
        for (std::size_t l = 0; l < top; ++l) {
            const double lf = static_cast<double>(l);
            up_.push_back(std::sqrt(2.0 / (lf + 1.0)));
            down_.push_back(std::sqrt(lf / (lf + 1.0)));
        }
        for (std::size_t k = 0; k < coeffs_.size(); ++k)
            dcoeffs_.push_back(coeffs_[k] * std::sqrt(2.0 * (2.0 * static_cast<double>(k) + 1.0)));
    }

    Kind kind_;
    std::vector<double> coeffs_;
    // Hermite recurrence constants and derivative weights (Rayleigh-Ritz only)
    std::vector<double> up_, down_, dcoeffs_;
};

inline CorrelationFactor make_correlation_factor(const OddSeries& s)
{
    return CorrelationFactor::from_series(s);
}

inline CorrelationFactor make_correlation_factor(const RelativeSolution& s)
{
    return CorrelationFactor::from_relative(s);
}

} // namespace wigner

#endif // WIGNER_TWO_BODY_HPP
