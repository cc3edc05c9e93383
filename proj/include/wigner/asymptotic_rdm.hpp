#ifndef WIGNER_ASYMPTOTIC_RDM_HPP
#define WIGNER_ASYMPTOTIC_RDM_HPP

// Strong-coupling one-particle RDM.
//
// In the harmonic approximation the ground state is a Gaussian in the
// displacements z = x - x^c. Integrating out every particle but one gives, per
// lattice site, a two-variable Gaussian kernel
//
//   rho_i(x, y) = A exp(-a (x^2 + y^2) - b x y)
//
// in coordinates centred on the site. Mehler's formula diagonalizes it in
// closed form: Hermite-function orbitals of width w with a geometric ladder of
// occupancies lambda_l = lambda_0 y^l.

#include <algorithm>
#include <cmath>
#include <numbers>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "wigner/classical_crystal.hpp"
#include "wigner/errors.hpp"
#include "wigner/hermite.hpp"
#include "wigner/normal_modes.hpp"

namespace wigner {

struct GaussianKernel {
    int site = 1; // 1-based
    double A = 0.0;
    double a = 0.0;
    double b = 0.0;

    double operator()(double x, double y) const { return A * std::exp(-a * (x * x + y * y) - b * x * y); }
};

/// Mehler data for one site.
struct SchmidtSite {
    int site = 1;
    double A = 0.0;
    double w = 0.0;
    double y = 0.0;
    double lambda0 = 0.0;
    double site_trace = 0.0; // sum_l lambda_l = lambda0 / (1 - y)

    double occupancy(int level) const { return lambda0 * std::pow(y, level); }

    /// Smallest l_max with geometric tail sum_{l > l_max} lambda_l below `tail`.
    int truncation(double tail = 1e-12) const
    {
        if (y <= 0.0)
            return 2;
        const double l = std::ceil(std::log(tail * (1.0 - y) / lambda0) / std::log(y));
        return std::max(2, static_cast<int>(l));
    }
};

/// Marginal kernel of one site from the normal-mode Gaussian.
///
/// With M = U^T diag(omega) U split as [m u^T; u K] around `site`, the
/// integral over the remaining N-1 displacements is done exactly:
/// a = m/2 - s/4, b = -s/2 with s = u^T K^{-1} u, and
/// A = (1/N) sqrt(prod omega / pi^N) sqrt(pi^{N-1} / det K).
inline GaussianKernel site_kernel(const NormalModes& modes, int site, int n)
{
    if (modes.size() != n)
        throw InvalidArgument("site_kernel: mode count does not match N");
    if (site < 1 || site > n)
        throw InvalidArgument("site_kernel: site out of range");

    const Eigen::Index nn = n;
    Eigen::VectorXd omega(nn);
    double log_prod_omega = 0.0;
    for (Eigen::Index i = 0; i < nn; ++i) {
        omega[i] = std::sqrt(modes.omega_sq[static_cast<std::size_t>(i)]);
        log_prod_omega += std::log(omega[i]);
    }
    const Eigen::MatrixXd m = modes.U.transpose() * omega.asDiagonal() * modes.U;

    const Eigen::Index s = site - 1;
    std::vector<Eigen::Index> rest;
    for (Eigen::Index i = 0; i < nn; ++i)
        if (i != s)
            rest.push_back(i);

    const auto r = static_cast<Eigen::Index>(rest.size());
    Eigen::MatrixXd k(r, r);
    Eigen::VectorXd u(r);
    for (Eigen::Index i = 0; i < r; ++i) {
        u[i] = m(s, rest[static_cast<std::size_t>(i)]);
        for (Eigen::Index j = 0; j < r; ++j)
            k(i, j) = m(rest[static_cast<std::size_t>(i)], rest[static_cast<std::size_t>(j)]);
    }
    Eigen::LLT<Eigen::MatrixXd> llt(k);
    if (llt.info() != Eigen::Success)
        throw Error("site_kernel: marginal block is not positive definite");
    const double quad = u.dot(llt.solve(u));
    double log_det_k = 0.0;
    const Eigen::MatrixXd l = llt.matrixL();
    for (Eigen::Index i = 0; i < r; ++i)
        log_det_k += 2.0 * std::log(l(i, i));

    const double log_pi = std::log(std::numbers::pi);
    GaussianKernel out;
    out.site = site;
    out.a = 0.5 * m(s, s) - 0.25 * quad;
    out.b = -0.5 * quad;
    out.A = std::exp(0.5 * (log_prod_omega - n * log_pi) + 0.5 * ((n - 1) * log_pi - log_det_k)) / n;
    return out;
}

/// Closed-form Schmidt data of a Gaussian kernel via Mehler's formula.
inline SchmidtSite mehler_schmidt(const GaussianKernel& k)
{
    if (!(k.A > 0.0) || !(2.0 * k.a + k.b > 0.0) || !(2.0 * k.a - k.b > 0.0))
        throw InvalidKernel("mehler_schmidt: kernel is not positive definite (need A > 0, 2a > |b|)");
    const double p = std::sqrt(2.0 * k.a - k.b);
    const double q = std::sqrt(2.0 * k.a + k.b);
    SchmidtSite s;
    s.site = k.site;
    s.A = k.A;
    s.w = std::sqrt(4.0 * k.a * k.a - k.b * k.b);
    s.y = (p - q) / (p + q);
    s.lambda0 = k.A * std::sqrt(std::numbers::pi * (1.0 - s.y * s.y) / s.w);
    s.site_trace = s.lambda0 / (1.0 - s.y);
    return s;
}

/// Natural orbital v_l(x - center) of width parameter w.
struct HermiteOrbital {
    double w = 1.0;
    int level = 0;
    double center = 0.0;

    double operator()(double x) const
    {
        const double sw = std::sqrt(w);
        return std::pow(w, 0.25) * hermite_function(level, sw * (x - center));
    }
};

inline HermiteOrbital natural_orbital(const SchmidtSite& site, int level, double center = 0.0)
{
    if (level < 0)
        throw InvalidArgument("natural_orbital: level must be >= 0");
    return {site.w, level, center};
}

/// <v_l(x - c1) | v_l(x - c2)> for orbitals of width w, |c1 - c2| = separation.
inline double displaced_overlap(double w, int level, double separation)
{
    return hermite_shift_overlap(level, std::sqrt(w) * separation);
}

/// Sum and difference of the two mirror-image orbitals of a degenerate pair.
struct DegeneratePair {
    HermiteOrbital left;  // site i
    HermiteOrbital right; // site N - i + 1

    double eta(double x) const { return (left(x) + right(x)) / std::numbers::sqrt2; }
    double tau(double x) const { return (left(x) - right(x)) / std::numbers::sqrt2; }

    /// ||eta||^2 - 1 = -(||tau||^2 - 1) = overlap of the displaced copies.
    double overlap() const { return displaced_overlap(left.w, left.level, std::abs(right.center - left.center)); }
};

inline DegeneratePair degenerate_pair(const SchmidtSite& site, int n, int level, double center_i,
                                      double center_mirror)
{
    if (n % 2 == 1 && site.site == (n + 1) / 2)
        throw InvalidArgument("degenerate_pair: the middle site of odd N has no partner");
    if (level < 0)
        throw InvalidArgument("degenerate_pair: level must be >= 0");
    return {natural_orbital(site, level, center_i), natural_orbital(site, level, center_mirror)};
}

/// rho(x, y) = sum_i sum_{l <= l_max(i)} lambda_l^(i) v_l(x - x_i^c) v_l(y - x_i^c).
class AsymptoticRdm {
public:
    struct Ladder {
        SchmidtSite site;
        double center;
        int lmax;
    };

    explicit AsymptoticRdm(std::vector<Ladder> ladders) : ladders_(std::move(ladders)) {}

    double operator()(double x, double y) const
    {
        double total = 0.0;
        for (const Ladder& ld : ladders_)
            total += site_term(ld, x - ld.center, y - ld.center);
        return total;
    }

    const std::vector<Ladder>& ladders() const { return ladders_; }

private:
    static double site_term(const Ladder& ld, double xt, double yt)
    {
        const double sw = std::sqrt(ld.site.w);
        const double u = sw * xt;
        const double v = sw * yt;
        const double seed = 1.0 / std::sqrt(std::numbers::pi);
        // product recurrences for psi_l(u) and psi_l(v), Gaussian folded in
        double pu0 = 0.0, pv0 = 0.0;
        double pu = std::exp(-0.5 * u * u), pv = std::exp(-0.5 * v * v);
        double lam = ld.site.lambda0;
        double sum = 0.0;
        for (int l = 0; l <= ld.lmax; ++l) {
            sum += lam * pu * pv;
            const double lf = static_cast<double>(l);
            const double c1 = std::sqrt(2.0 / (lf + 1.0));
            const double c2 = std::sqrt(lf / (lf + 1.0));
            const double nu = c1 * u * pu - c2 * pu0;
            const double nv = c1 * v * pv - c2 * pv0;
            pu0 = pu;
            pv0 = pv;
            pu = nu;
            pv = nv;
            lam *= ld.site.y;
        }
        return sw * seed * sum;
    }

    std::vector<Ladder> ladders_;
};

inline AsymptoticRdm assemble_asymptotic_rdm(std::span<const SchmidtSite> sites, std::span<const double> centers,
                                             double tail = 1e-12)
{
    if (sites.size() != centers.size())
        throw InvalidArgument("assemble_asymptotic_rdm: one center per site required");
    std::vector<AsymptoticRdm::Ladder> ladders;
    for (std::size_t i = 0; i < sites.size(); ++i)
        ladders.push_back({sites[i], centers[i], sites[i].truncation(tail)});
    return AsymptoticRdm(std::move(ladders));
}

/// Full strong-coupling pipeline for one (N, d).
struct AsymptoticSolution {
    SystemSpec spec;
    EquilibriumConfig equilibrium;
    NormalModes modes;
    std::vector<GaussianKernel> kernels;
    std::vector<SchmidtSite> sites;

    /// RDM at finite g with the sites placed at the scaled classical positions.
    AsymptoticRdm rdm_at(double g) const
    {
        const std::vector<double> centers = scale_positions(equilibrium, spec.d, g);
        return assemble_asymptotic_rdm(sites, centers);
    }
};

/// Sites i and N-i+1 share one kernel; only the first half is marginalized and
/// the mirror copies are exact duplicates.
inline AsymptoticSolution solve_asymptotic(int n, double d)
{
    AsymptoticSolution sol;
    sol.spec = SystemSpec{n, d, std::nullopt};
    sol.spec.validate();
    sol.equilibrium = solve_equilibrium(sol.spec);
    sol.modes = normal_modes(sol.equilibrium, d);
    sol.kernels.resize(static_cast<std::size_t>(n));
    sol.sites.resize(static_cast<std::size_t>(n));
    for (int i = 1; i <= (n + 1) / 2; ++i) {
        GaussianKernel k = site_kernel(sol.modes, i, n);
        SchmidtSite s = mehler_schmidt(k);
        sol.kernels[static_cast<std::size_t>(i - 1)] = k;
        sol.sites[static_cast<std::size_t>(i - 1)] = s;
        k.site = s.site = n - i + 1;
        sol.kernels[static_cast<std::size_t>(n - i)] = k;
        sol.sites[static_cast<std::size_t>(n - i)] = s;
    }
    return sol;
}

} // namespace wigner

#endif // WIGNER_ASYMPTOTIC_RDM_HPP
