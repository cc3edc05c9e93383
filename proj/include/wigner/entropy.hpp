#ifndef WIGNER_ENTROPY_HPP
#define WIGNER_ENTROPY_HPP

#include <cmath>
#include <numbers>
#include <span>
#include <vector>

#include "wigner/asymptotic_rdm.hpp"
#include "wigner/errors.hpp"

namespace wigner {

struct EntropyReport {
    int n = 0;
    double d = 0.0;
    std::vector<double> per_site_s; // bits, one entry per site 1..N
    double s_total = 0.0;           // bits
    double linear_entropy = 0.0;    // 1 - Tr rho^2
    double lambda0_sum = 0.0;
};

namespace detail {

inline void check_ratio(double y)
{
    if (!(y >= 0.0 && y < 1.0))
        throw InvalidArgument("entropy: Mehler ratio y must lie in [0, 1)");
}

inline double xlogx(double x)
{
    return x > 0.0 ? x * std::log(x) : 0.0;
}

} // namespace detail

/// Closed-form von Neumann entropy (bits) of one geometric occupancy ladder.
inline double site_entropy_closed(const SchmidtSite& s)
{
    detail::check_ratio(s.y);
    const double y = s.y;
    const double prefactor = s.A * std::sqrt(std::numbers::pi * (y + 1.0) / s.w) /
                             (std::pow(1.0 - y, 1.5) * std::log(4.0));
    // ln( y^{2y} (pi A^2 (1 - y^2) / w)^{1-y} ), with y^{2y} -> 1 at y = 0
    const double log_arg = 2.0 * detail::xlogx(y) +
                           (1.0 - y) * std::log(std::numbers::pi * s.A * s.A * (1.0 - y * y) / s.w);
    return -prefactor * log_arg;
}

/// -sum_{l <= l_max} lambda_l log2 lambda_l with the same truncation rule as the RDM.
inline double site_entropy_direct(const SchmidtSite& s)
{
    detail::check_ratio(s.y);
    const int lmax = s.truncation();
    double sum = 0.0;
    double lam = s.lambda0;
    for (int l = 0; l <= lmax && lam > 0.0; ++l) {
        sum -= lam * std::log2(lam);
        lam *= s.y;
    }
    return sum;
}

/// sum_l lambda_l^q = pi^{q/2} (A sqrt((1 - y^2)/w))^q / (1 - y^q).
inline double renyi_sum(const SchmidtSite& s, double q)
{
    if (!(q >= 1.0))
        throw InvalidArgument("renyi_sum: q must be >= 1");
    detail::check_ratio(s.y);
    const double base = s.A * std::sqrt((1.0 - s.y * s.y) / s.w);
    return std::pow(std::numbers::pi, 0.5 * q) * std::pow(base, q) / (1.0 - std::pow(s.y, q));
}

/// Entropy of the whole strong-coupling RDM from its per-site ladders.
///
/// Uses the pairing S = 2 sum_{i <= N/2} S_i (+ S_middle for odd N).
inline EntropyReport total_entropy(std::span<const SchmidtSite> sites, int n, double d)
{
    if (static_cast<int>(sites.size()) != n)
        throw InvalidArgument("total_entropy: need one site per particle");
    double trace = 0.0;
    for (const SchmidtSite& s : sites)
        trace += s.site_trace;
    if (std::abs(trace - 1.0) > 1e-8)
        throw InconsistencyError("total_entropy: site traces sum to " + std::to_string(trace));

    EntropyReport r;
    r.n = n;
    r.d = d;
    r.per_site_s.reserve(sites.size());
    for (const SchmidtSite& s : sites)
        r.per_site_s.push_back(site_entropy_closed(s));

    const auto half = static_cast<std::size_t>(n / 2);
    for (std::size_t i = 0; i < half; ++i)
        r.s_total += 2.0 * r.per_site_s[i];
    if (n % 2 == 1)
        r.s_total += r.per_site_s[half];

    double purity = 0.0;
    for (const SchmidtSite& s : sites) {
        purity += renyi_sum(s, 2.0);
        r.lambda0_sum += s.lambda0;
    }
    r.linear_entropy = 1.0 - purity;
    return r;
}

inline EntropyReport total_entropy(const AsymptoticSolution& sol)
{
    return total_entropy(sol.sites, sol.spec.n, sol.spec.d);
}

} // namespace wigner

#endif // WIGNER_ENTROPY_HPP
